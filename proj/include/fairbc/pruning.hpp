#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "fairbc/bigraph.hpp"

namespace fairbc {

enum class CoreMode : std::uint8_t { SingleSide, BiSide };

struct PeelSummary {
  std::size_t removed_upper = 0;
  std::size_t removed_lower = 0;

  std::size_t removed() const noexcept { return removed_upper + removed_lower; }
};

/// Fair alpha-beta core peeling, in place.
///
/// Upper vertices need at least `beta` alive neighbors of every lower
/// attribute value. Lower vertices need `alpha` alive neighbors in total
/// (SingleSide) or `alpha` of every upper attribute value (BiSide).
///
/// `shuffle_seed` permutes the order in which initial violators are queued;
/// the result is the unique maximal core regardless.
inline PeelSummary fcore(AttributedBipartiteGraph& g, std::uint32_t alpha, std::uint32_t beta, CoreMode mode,
                         std::optional<std::uint64_t> shuffle_seed = std::nullopt) {
  const std::size_t nu = g.size(Side::Upper);
  const std::size_t nl = g.size(Side::Lower);
  // Number of count classes per side: upper counts per lower attribute;
  // lower counts per upper attribute (BiSide) or one total (SingleSide).
  const std::size_t upper_classes = g.domain_size(Side::Lower);
  const std::size_t lower_classes = mode == CoreMode::BiSide ? g.domain_size(Side::Upper) : 1;
  const std::uint32_t threshold[2] = {beta, alpha};
  const std::size_t classes[2] = {upper_classes, lower_classes};

  std::vector<std::uint32_t> counts[2];
  counts[0].assign(nu * upper_classes, 0);
  counts[1].assign(nl * lower_classes, 0);

  auto class_of = [&](Side counted_at, VertexId neighbor) -> std::size_t {
    if (counted_at == Side::Upper) return g.attr(Side::Lower, neighbor);
    return mode == CoreMode::BiSide ? g.attr(Side::Upper, neighbor) : 0;
  };
  auto violates = [&](Side s, VertexId v) {
    const std::size_t c = classes[index_of(s)];
    if (c == 0) return threshold[index_of(s)] > 0;
    const auto* row = &counts[index_of(s)][static_cast<std::size_t>(v) * c];
    return *std::min_element(row, row + c) < threshold[index_of(s)];
  };

  for (Side s : {Side::Upper, Side::Lower}) {
    const Side o = opposite(s);
    const std::size_t c = classes[index_of(s)];
    for (VertexId v = 0; v < g.size(s); ++v) {
      if (!g.is_alive(s, v)) continue;
      for (VertexId w : g.neighbors(s, v))
        if (g.is_alive(o, w)) ++counts[index_of(s)][static_cast<std::size_t>(v) * c + class_of(s, w)];
    }
  }

  std::vector<VertexRef> scan;
  scan.reserve(g.alive_total());
  for (Side s : {Side::Upper, Side::Lower})
    for (VertexId v = 0; v < g.size(s); ++v)
      if (g.is_alive(s, v)) scan.push_back({s, v});
  if (shuffle_seed) {
    std::mt19937_64 rng(*shuffle_seed);
    std::shuffle(scan.begin(), scan.end(), rng);
  }

  PeelSummary summary;
  std::deque<VertexRef> queue;
  auto drop = [&](VertexRef v) {
    g.remove(v.side, v.index);
    (v.side == Side::Upper ? summary.removed_upper : summary.removed_lower)++;
    queue.push_back(v);
  };
  for (const auto& v : scan)
    if (violates(v.side, v.index)) drop(v);

  while (!queue.empty()) {
    const VertexRef x = queue.front();
    queue.pop_front();
    const Side o = opposite(x.side);
    const std::size_t c = classes[index_of(o)];
    for (VertexId w : g.neighbors(x.side, x.index)) {
      if (!g.is_alive(o, w)) continue;
      --counts[index_of(o)][static_cast<std::size_t>(w) * c + class_of(o, x.index)];
      if (violates(o, w)) drop({o, w});
    }
  }
  return summary;
}

/// Unipartite attributed graph over the alive vertices of one side.
struct TwoHopGraph {
  Side side = Side::Lower;
  std::vector<std::vector<VertexId>> adjacency;
  std::vector<AttrId> attrs;
  std::size_t domain_size = 0;
  std::vector<VertexId> origin;  // local id -> bipartite vertex id on `side`
  std::optional<std::vector<std::uint32_t>> coloring;

  std::size_t vertex_count() const noexcept { return adjacency.size(); }
  std::size_t degree(VertexId v) const { return adjacency[v].size(); }

  /// Subgraph induced by the vertices with keep[v] != 0, renumbered densely.
  TwoHopGraph induced(const std::vector<char>& keep) const {
    TwoHopGraph out;
    out.side = side;
    out.domain_size = domain_size;
    std::vector<VertexId> remap(vertex_count(), std::numeric_limits<VertexId>::max());
    for (VertexId v = 0; v < vertex_count(); ++v) {
      if (!keep[v]) continue;
      remap[v] = static_cast<VertexId>(out.origin.size());
      out.origin.push_back(origin[v]);
      out.attrs.push_back(attrs[v]);
    }
    out.adjacency.resize(out.origin.size());
    for (VertexId v = 0; v < vertex_count(); ++v) {
      if (!keep[v]) continue;
      for (VertexId w : adjacency[v])
        if (keep[w]) out.adjacency[remap[v]].push_back(remap[w]);
    }
    if (coloring) {
      out.coloring.emplace();
      for (VertexId v = 0; v < vertex_count(); ++v)
        if (keep[v]) out.coloring->push_back((*coloring)[v]);
    }
    return out;
  }
};

/// Projects the alive vertices of `side` onto a 2-hop graph. Two vertices are
/// joined when they share at least `threshold` alive common neighbors
/// (SingleSide) or at least `threshold` common neighbors of every attribute
/// value of the opposite side (BiSide).
inline TwoHopGraph build_two_hop(const AttributedBipartiteGraph& g, std::uint32_t threshold, CoreMode mode,
                                 Side side) {
  TwoHopGraph h;
  h.side = side;
  h.domain_size = g.domain_size(side);
  const Side o = opposite(side);
  std::vector<VertexId> local(g.size(side), std::numeric_limits<VertexId>::max());
  for (VertexId v = 0; v < g.size(side); ++v) {
    if (!g.is_alive(side, v)) continue;
    local[v] = static_cast<VertexId>(h.origin.size());
    h.origin.push_back(v);
    h.attrs.push_back(g.attr(side, v));
  }
  const std::size_t n = h.origin.size();
  h.adjacency.resize(n);

  if (threshold == 0) {
    for (VertexId i = 0; i < n; ++i)
      for (VertexId j = 0; j < n; ++j)
        if (i != j) h.adjacency[i].push_back(j);
    return h;
  }

  const std::size_t classes = mode == CoreMode::BiSide ? g.domain_size(o) : 1;
  if (classes == 0) return h;
  std::vector<std::uint32_t> common(n * classes, 0);
  std::vector<VertexId> touched;
  for (VertexId i = 0; i < n; ++i) {
    const VertexId v = h.origin[i];
    touched.clear();
    for (VertexId mid : g.neighbors(side, v)) {
      if (!g.is_alive(o, mid)) continue;
      const std::size_t cls = mode == CoreMode::BiSide ? g.attr(o, mid) : 0;
      for (VertexId w : g.neighbors(o, mid)) {
        if (w == v || !g.is_alive(side, w)) continue;
        const VertexId j = local[w];
        if (j <= i) continue;
        auto* row = &common[static_cast<std::size_t>(j) * classes];
        if (std::all_of(row, row + classes, [](auto c) { return c == 0; })) touched.push_back(j);
        ++row[cls];
      }
    }
    for (VertexId j : touched) {
      auto* row = &common[static_cast<std::size_t>(j) * classes];
      if (*std::min_element(row, row + classes) >= threshold) {
        h.adjacency[i].push_back(j);
        h.adjacency[j].push_back(i);
      }
      std::fill(row, row + classes, 0);
    }
  }
  for (auto& list : h.adjacency) std::sort(list.begin(), list.end());
  return h;
}

/// Greedy coloring in non-increasing degree order (ties by ascending id);
/// each vertex takes the smallest color unused by its colored neighbors.
inline void greedy_color(TwoHopGraph& h) {
  const std::size_t n = h.vertex_count();
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return h.degree(a) > h.degree(b); });

  constexpr auto kUncolored = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> color(n, kUncolored);
  std::vector<VertexId> used_stamp;
  for (std::size_t step = 0; step < n; ++step) {
    const VertexId v = order[step];
    used_stamp.assign(h.degree(v) + 1, 0);
    for (VertexId w : h.adjacency[v])
      if (color[w] != kUncolored && color[w] <= h.degree(v)) used_stamp[color[w]] = 1;
    std::uint32_t c = 0;
    while (used_stamp[c]) ++c;
    color[v] = c;
  }
  h.coloring = std::move(color);
}

/// Per-vertex (attribute, color) multiplicities over the closed neighborhood
/// and the derived ego colorful degrees.
class EgoColorfulState {
 public:
  explicit EgoColorfulState(const TwoHopGraph& h) : h_(&h) {
    if (!h.coloring) throw PreconditionViolated("ego colorful state needs a colored 2-hop graph");
    const std::size_t n = h.vertex_count();
    keys_.resize(n);
    mult_.resize(n);
    ed_.assign(n * h.domain_size, 0);
    for (VertexId u = 0; u < n; ++u) {
      auto& keys = keys_[u];
      keys.reserve(h.degree(u) + 1);
      keys.push_back(key_of(u));
      for (VertexId w : h.adjacency[u]) keys.push_back(key_of(w));
      std::sort(keys.begin(), keys.end());
      std::vector<std::uint64_t> uniq;
      auto& mult = mult_[u];
      for (auto k : keys) {
        if (uniq.empty() || uniq.back() != k) {
          uniq.push_back(k);
          mult.push_back(0);
          ++ed_[static_cast<std::size_t>(u) * h.domain_size + (k >> 32)];
        }
        ++mult.back();
      }
      keys = std::move(uniq);
    }
  }

  std::uint32_t ed(VertexId u, AttrId a) const { return ed_[static_cast<std::size_t>(u) * h_->domain_size + a]; }

  std::uint32_t ed_min(VertexId u) const {
    if (h_->domain_size == 0) return 0;
    const auto* row = &ed_[static_cast<std::size_t>(u) * h_->domain_size];
    return *std::min_element(row, row + h_->domain_size);
  }

  /// Removes `gone`'s contribution from `u`'s table; true if ED changed.
  bool forget(VertexId u, VertexId gone) {
    const auto key = key_of(gone);
    auto& keys = keys_[u];
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    auto& m = mult_[u][static_cast<std::size_t>(it - keys.begin())];
    if (m == 0) return false;
    if (--m == 0) {
      --ed_[static_cast<std::size_t>(u) * h_->domain_size + h_->attrs[gone]];
      return true;
    }
    return false;
  }

 private:
  std::uint64_t key_of(VertexId v) const {
    return (static_cast<std::uint64_t>(h_->attrs[v]) << 32) | (*h_->coloring)[v];
  }

  const TwoHopGraph* h_;
  std::vector<std::vector<std::uint64_t>> keys_;
  std::vector<std::vector<std::uint32_t>> mult_;
  std::vector<std::uint32_t> ed_;
};

/// Ego colorful k-core: surviving local vertex ids, ascending.
inline std::vector<VertexId> ego_colorful_core(const TwoHopGraph& h, std::uint32_t k) {
  const std::size_t n = h.vertex_count();
  EgoColorfulState state(h);
  std::vector<char> removed(n, 0);
  std::deque<VertexId> queue;
  for (VertexId u = 0; u < n; ++u) {
    if (state.ed_min(u) < k) {
      removed[u] = 1;
      queue.push_back(u);
    }
  }
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop_front();
    for (VertexId v : h.adjacency[u]) {
      if (removed[v]) continue;
      if (state.forget(v, u) && state.ed_min(v) < k) {
        removed[v] = 1;
        queue.push_back(v);
      }
    }
  }
  std::vector<VertexId> out;
  for (VertexId u = 0; u < n; ++u)
    if (!removed[u]) out.push_back(u);
  return out;
}

struct PruneReport {
  std::size_t input_vertices = 0;
  std::size_t after_fcore = 0;  // survivors of the first fair-core pass
  std::size_t final_vertices = 0;
  std::size_t final_upper = 0;
  std::size_t final_lower = 0;
  double fcore_ms = 0;
  double total_ms = 0;
};

namespace detail {

/// One colorful pass over `side`: 2-hop projection, degree pre-filter,
/// coloring, ego colorful k-core, and removal of non-core vertices.
inline void colorful_pass(AttributedBipartiteGraph& g, Side side, std::uint32_t two_hop_threshold, std::uint32_t k,
                          CoreMode mode) {
  TwoHopGraph h = build_two_hop(g, two_hop_threshold, mode, side);
  const long long min_degree = static_cast<long long>(g.domain_size(side)) * k - 1;
  std::vector<char> keep(h.vertex_count(), 1);
  for (VertexId v = 0; v < h.vertex_count(); ++v)
    if (static_cast<long long>(h.degree(v)) < min_degree) keep[v] = 0;
  TwoHopGraph filtered = h.induced(keep);
  greedy_color(filtered);
  const auto core = ego_colorful_core(filtered, k);
  std::vector<char> in_core(g.size(side), 0);
  for (VertexId local : core) in_core[filtered.origin[local]] = 1;
  for (VertexId v = 0; v < g.size(side); ++v)
    if (g.is_alive(side, v) && !in_core[v]) g.remove(side, v);
}

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Colorful fair alpha-beta core pruning, in place.
///
/// SingleSide: fcore, one colorful pass on the lower side (2-hop threshold
/// alpha, ego colorful beta-core), fcore again. BiSide adds a colorful pass
/// on the upper side (per-class 2-hop threshold beta, ego colorful
/// alpha-core) and peels with the bi-fair core. With `iterate` the pipeline
/// repeats until nothing changes.
inline PruneReport cfcore(AttributedBipartiteGraph& g, std::uint32_t alpha, std::uint32_t beta, CoreMode mode,
                          bool iterate = false) {
  PruneReport report;
  report.input_vertices = g.alive_total();
  const auto t0 = std::chrono::steady_clock::now();
  fcore(g, alpha, beta, mode);
  report.fcore_ms = detail::ms_since(t0);
  report.after_fcore = g.alive_total();
  for (;;) {
    const std::size_t before = g.alive_total();
    detail::colorful_pass(g, Side::Lower, alpha, beta, mode);
    if (mode == CoreMode::BiSide) detail::colorful_pass(g, Side::Upper, beta, alpha, mode);
    fcore(g, alpha, beta, mode);
    if (!iterate || g.alive_total() == before) break;
  }
  report.total_ms = detail::ms_since(t0);
  report.final_vertices = g.alive_total();
  report.final_upper = g.alive_count(Side::Upper);
  report.final_lower = g.alive_count(Side::Lower);
  return report;
}

/// fcore alone, reported in the same shape as cfcore.
inline PruneReport fcore_report(AttributedBipartiteGraph& g, std::uint32_t alpha, std::uint32_t beta, CoreMode mode) {
  PruneReport report;
  report.input_vertices = g.alive_total();
  const auto t0 = std::chrono::steady_clock::now();
  fcore(g, alpha, beta, mode);
  report.fcore_ms = report.total_ms = detail::ms_since(t0);
  report.after_fcore = report.final_vertices = g.alive_total();
  report.final_upper = g.alive_count(Side::Upper);
  report.final_lower = g.alive_count(Side::Lower);
  return report;
}

}  // namespace fairbc
