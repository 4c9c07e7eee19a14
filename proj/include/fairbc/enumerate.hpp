#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fairbc/biclique.hpp"
#include "fairbc/bigraph.hpp"
#include "fairbc/fairset.hpp"
#include "fairbc/pruning.hpp"

namespace fairbc {

enum class Ordering : std::uint8_t { IDOrd, DegOrd };
enum class Algorithm : std::uint8_t { Baseline, BCEM, BCEMpp };
enum class PruneMode : std::uint8_t { FCoreOnly, CFCore };

inline std::string_view to_string(Ordering o) { return o == Ordering::IDOrd ? "id" : "deg"; }
inline std::string_view to_string(PruneMode p) { return p == PruneMode::FCoreOnly ? "fcore" : "cfcore"; }
inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Baseline: return "baseline";
    case Algorithm::BCEM: return "bcem";
    case Algorithm::BCEMpp: return "bcempp";
  }
  return "?";
}

struct EnumConfig {
  FairnessParams params;
  Ordering ordering = Ordering::DegOrd;
  Algorithm algorithm = Algorithm::BCEMpp;
  PruneMode prune = PruneMode::CFCore;
  bool prune_iterate = false;
  std::optional<std::chrono::duration<double>> time_limit;

  void validate() const {
    params.validate();
    if (is_proportion(params.model) && algorithm != Algorithm::BCEMpp)
      throw InvalidConfig("proportion models are only available with the bcempp algorithm");
  }
};

struct EnumStats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t emitted = 0;
  bool complete = true;
  PruneReport prune;
  double prune_ms = 0;
  double search_ms = 0;
};

struct EnumResult {
  std::vector<Biclique> bicliques;  // sorted, duplicate-free
  EnumStats stats;

  std::size_t count() const noexcept { return bicliques.size(); }
};

using BicliqueSink = std::function<void(const Biclique&)>;

namespace detail {

class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::optional<std::chrono::duration<double>> limit) {
    if (limit)
      end_ = std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(*limit);
  }

  bool expired() {
    if (!end_ || expired_) return expired_;
    if ((++ticks_ & 0xff) != 0) return false;
    expired_ = std::chrono::steady_clock::now() >= *end_;
    return expired_;
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
  std::uint64_t ticks_ = 0;
  bool expired_ = false;
};

/// Alive-restricted adjacency of a (pruned) graph, with scratch marks.
class SearchSpace {
 public:
  explicit SearchSpace(const AttributedBipartiteGraph& g) : g_(&g) {
    for (Side s : {Side::Upper, Side::Lower}) {
      const Side o = opposite(s);
      auto& adj = adj_[index_of(s)];
      adj.resize(g.size(s));
      for (VertexId v = 0; v < g.size(s); ++v) {
        if (!g.is_alive(s, v)) continue;
        for (VertexId w : g.neighbors(s, v))
          if (g.is_alive(o, w)) adj[v].push_back(w);
      }
    }
    mark_.assign(g.size(Side::Upper), 0);
  }

  const AttributedBipartiteGraph& graph() const noexcept { return *g_; }
  std::span<const VertexId> adj(Side s, VertexId v) const { return adj_[index_of(s)][v]; }
  AttrId attr(Side s, VertexId v) const { return g_->attr(s, v); }
  std::size_t domain(Side s) const { return g_->domain_size(s); }

  /// Marks `outer` with one stamp and `inner` (a subset of it) with another.
  void mark(std::span<const VertexId> outer, std::span<const VertexId> inner) {
    stamp_ += 2;
    for (VertexId u : outer) mark_[u] = stamp_ - 1;
    for (VertexId u : inner) mark_[u] = stamp_;
  }

  /// Neighbors of lower vertex `v` in the inner / outer-only marked sets.
  std::pair<std::size_t, std::size_t> count_marked(VertexId v) const {
    std::size_t inner = 0;
    std::size_t outer = 0;
    for (VertexId u : adj(Side::Lower, v)) {
      if (mark_[u] == stamp_)
        ++inner;
      else if (mark_[u] == stamp_ - 1)
        ++outer;
    }
    return {inner, outer};
  }

  /// Alive common neighbors (on the other side) of a nonempty set.
  std::vector<VertexId> common(Side s, std::span<const VertexId> set) const {
    std::vector<VertexId> acc(adj(s, set.front()).begin(), adj(s, set.front()).end());
    std::vector<VertexId> next;
    for (std::size_t i = 1; i < set.size() && !acc.empty(); ++i) {
      auto n = adj(s, set[i]);
      next.clear();
      std::set_intersection(acc.begin(), acc.end(), n.begin(), n.end(), std::back_inserter(next));
      acc.swap(next);
    }
    return acc;
  }

  /// Whether the alive common upper neighborhood of lower set `r` has
  /// exactly `target` vertices; it always contains at least that many here.
  bool closure_size_is(std::span<const VertexId> r, std::size_t target) const {
    std::vector<VertexId> acc(adj(Side::Lower, r.front()).begin(), adj(Side::Lower, r.front()).end());
    std::vector<VertexId> next;
    for (std::size_t i = 1; i < r.size() && acc.size() > target; ++i) {
      auto n = adj(Side::Lower, r[i]);
      next.clear();
      std::set_intersection(acc.begin(), acc.end(), n.begin(), n.end(), std::back_inserter(next));
      acc.swap(next);
    }
    return acc.size() == target;
  }

  std::vector<std::size_t> class_counts(Side s, std::span<const VertexId> set) const {
    std::vector<std::size_t> c(domain(s), 0);
    for (VertexId v : set) ++c[attr(s, v)];
    return c;
  }

 private:
  const AttributedBipartiteGraph* g_;
  std::vector<std::vector<VertexId>> adj_[2];
  std::vector<std::uint64_t> mark_;
  std::uint64_t stamp_ = 0;
};

inline std::vector<VertexId> intersect(std::span<const VertexId> a, std::span<const VertexId> b) {
  std::vector<VertexId> out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool all_at_least(std::span<const std::size_t> a, std::span<const std::size_t> b, std::size_t k) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] + b[i] < k) return false;
  return true;
}

using PairSink = std::function<void(std::span<const VertexId> upper, std::span<const VertexId> lower)>;

/// Branch-and-bound over lower-side subsets, producing single-side fair
/// bicliques (or plain maximal bicliques) of a pruned graph.
///
/// L: upper vertices adjacent to all of R; R: chosen lower vertices;
/// P: untried lower candidates; Q: lower vertices already branched on.
class SingleSideSearch {
 public:
  SingleSideSearch(SearchSpace& space, std::uint32_t alpha, std::uint32_t beta, std::uint32_t delta,
                   std::optional<Ratio> theta, Deadline& deadline, EnumStats& stats, PairSink emit)
      : space_(space),
        min_upper_(std::max<std::uint32_t>(alpha, 1)),
        beta_(beta),
        delta_(delta),
        theta_(theta),
        deadline_(deadline),
        stats_(stats),
        emit_(std::move(emit)),
        domain_(space.domain(Side::Lower)) {}

  bool timed_out() const noexcept { return timed_out_; }

  /// Pruned FairBCEM-style search.
  void run_bcem(const std::vector<VertexId>& upper, const std::vector<VertexId>& order) {
    std::vector<VertexId> r;
    std::vector<std::size_t> rc(domain_, 0);
    bcem(upper, r, rc, order, {});
  }

  /// Maximal-biclique search with combinational fair-subset extraction.
  void run_bcempp(const std::vector<VertexId>& upper, const std::vector<VertexId>& order) {
    maximal_only_ = false;
    bcempp(upper, {}, order, {});
  }

  /// Maximal bicliques with |L| >= alpha and every lower class >= beta.
  void run_maximal(const std::vector<VertexId>& upper, const std::vector<VertexId>& order) {
    maximal_only_ = true;
    bcempp(upper, {}, order, {});
  }

  /// Subset enumeration without search-time shortcuts.
  void run_nsf(const std::vector<VertexId>& upper, const std::vector<VertexId>& order) {
    std::vector<VertexId> r;
    std::vector<std::size_t> rc(domain_, 0);
    nsf(upper, r, rc, order, 0);
  }

 private:
  bool stop() {
    if (!timed_out_ && deadline_.expired()) timed_out_ = true;
    return timed_out_;
  }

  bool fair(std::span<const std::size_t> counts) const { return is_fair_counts(counts, beta_, delta_, theta_); }

  void bcem(const std::vector<VertexId>& l, const std::vector<VertexId>& r, const std::vector<std::size_t>& rc,
            const std::vector<VertexId>& p, std::vector<VertexId> q) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (stop()) return;
      ++stats_.nodes_expanded;
      const VertexId x = p[i];
      const auto lp = intersect(l, space_.adj(Side::Lower, x));
      if (lp.size() >= min_upper_) expand_bcem(lp, r, rc, p, i, q);
      q.push_back(x);
    }
  }

  void expand_bcem(const std::vector<VertexId>& lp, const std::vector<VertexId>& r,
                   const std::vector<std::size_t>& rc, const std::vector<VertexId>& p, std::size_t i,
                   const std::vector<VertexId>& q) {
    space_.mark(lp, lp);
    std::vector<VertexId> qp;
    std::vector<std::size_t> qfc(domain_, 0);
    for (VertexId u : q) {
      const auto c = space_.count_marked(u).first;
      if (c == lp.size()) ++qfc[space_.attr(Side::Lower, u)];
      if (c >= min_upper_) qp.push_back(u);
    }
    // Some fully connected, already-explored vertex exists for every class:
    // adding one of each keeps any fair R fair, so nothing here is maximal.
    if (std::all_of(qfc.begin(), qfc.end(), [](auto c) { return c > 0; })) return;

    std::vector<VertexId> pp;
    std::vector<VertexId> pfc;
    std::vector<std::size_t> pp_c(domain_, 0);
    std::vector<std::size_t> pfc_c(domain_, 0);
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const VertexId v = p[j];
      const auto c = space_.count_marked(v).first;
      if (c == lp.size()) {
        pfc.push_back(v);
        ++pfc_c[space_.attr(Side::Lower, v)];
      }
      if (c >= min_upper_) {
        pp.push_back(v);
        ++pp_c[space_.attr(Side::Lower, v)];
      }
    }

    std::vector<VertexId> rp = r;
    rp.push_back(p[i]);
    std::vector<std::size_t> rpc = rc;
    ++rpc[space_.attr(Side::Lower, p[i])];

    // Every remaining candidate is fully connected: absorb them at once if
    // the union stays fair.
    if (!pfc.empty() && pfc.size() == pp.size()) {
      std::vector<std::size_t> merged = rpc;
      for (std::size_t a = 0; a < domain_; ++a) merged[a] += pfc_c[a];
      if (is_fair_counts(merged, beta_, delta_)) {
        rp.insert(rp.end(), pfc.begin(), pfc.end());
        rpc = std::move(merged);
        pfc.clear();
        pp.clear();
        std::fill(pfc_c.begin(), pfc_c.end(), 0);
        std::fill(pp_c.begin(), pp_c.end(), 0);
      }
    }

    if (fair(rpc)) {
      std::vector<std::size_t> host = rpc;
      for (std::size_t a = 0; a < domain_; ++a) host[a] += pfc_c[a] + qfc[a];
      if (mfs_check_counts(host, rpc, beta_, delta_, theta_)) {
        ++stats_.emitted;
        emit_(lp, rp);
      }
    }
    if (!pp.empty() && all_at_least(rpc, pp_c, beta_)) bcem(lp, rp, rpc, pp, qp);
  }

  void bcempp(const std::vector<VertexId>& l, const std::vector<VertexId>& r, std::vector<VertexId> p,
              std::vector<VertexId> q) {
    std::vector<char> consumed;
    while (!p.empty()) {
      if (stop()) return;
      ++stats_.nodes_expanded;
      const VertexId x = p.front();
      std::vector<VertexId> c{x};
      const auto lp = intersect(l, space_.adj(Side::Lower, x));
      if (lp.size() >= min_upper_) expand_bcempp(l, lp, r, p, q, c);

      // P <- P - C; Q <- Q + C
      std::sort(c.begin(), c.end());
      std::erase_if(p, [&](VertexId v) { return std::binary_search(c.begin(), c.end(), v); });
      q.insert(q.end(), c.begin(), c.end());
    }
  }

  void expand_bcempp(const std::vector<VertexId>& l, const std::vector<VertexId>& lp, const std::vector<VertexId>& r,
                     const std::vector<VertexId>& p, const std::vector<VertexId>& q, std::vector<VertexId>& c) {
    space_.mark(l, lp);
    std::vector<VertexId> qp;
    for (VertexId u : q) {
      const auto n = space_.count_marked(u).first;
      if (n == lp.size()) return;  // (L', R') already covered by an earlier branch
      if (n > 0) qp.push_back(u);
    }

    std::vector<VertexId> rp = r;
    rp.push_back(p.front());
    std::vector<VertexId> pp;
    std::vector<std::size_t> pp_c(domain_, 0);
    for (std::size_t j = 1; j < p.size(); ++j) {
      const VertexId v = p[j];
      const auto [inside, outside_only] = space_.count_marked(v);
      if (inside == lp.size()) {
        rp.push_back(v);
        if (outside_only == 0) c.push_back(v);
      } else if (inside >= min_upper_) {
        pp.push_back(v);
        ++pp_c[space_.attr(Side::Lower, v)];
      }
    }
    const auto rpc = space_.class_counts(Side::Lower, rp);

    if (maximal_only_) {
      if (std::all_of(rpc.begin(), rpc.end(), [&](auto n) { return n >= beta_; })) {
        ++stats_.emitted;
        emit_(lp, rp);
      }
    } else if (fair(rpc)) {
      ++stats_.emitted;
      emit_(lp, rp);
    } else {
      const auto set = AttributedSet::partition(rp, space_.graph().attrs(Side::Lower), domain_);
      Combination gen(set, beta_, delta_, theta_);
      AttributedSet pick;
      std::vector<VertexId> members;
      while (gen.next(pick)) {
        if (stop()) return;
        members = pick.members();
        if (members.empty() || !fair(pick.counts())) continue;
        if (space_.closure_size_is(members, lp.size())) {
          ++stats_.emitted;
          emit_(lp, members);
        }
      }
    }
    if (!pp.empty() && all_at_least(rpc, pp_c, beta_)) bcempp(lp, rp, pp, qp);
  }

  void nsf(const std::vector<VertexId>& l, std::vector<VertexId>& r, std::vector<std::size_t>& rc,
           const std::vector<VertexId>& p, std::size_t from) {
    for (std::size_t i = from; i < p.size(); ++i) {
      if (stop()) return;
      ++stats_.nodes_expanded;
      const VertexId x = p[i];
      const auto lp = intersect(l, space_.adj(Side::Lower, x));
      if (lp.empty()) continue;
      r.push_back(x);
      ++rc[space_.attr(Side::Lower, x)];
      if (lp.size() >= min_upper_ && fair(rc)) {
        const auto pool = space_.common(Side::Upper, lp);
        const auto host = space_.class_counts(Side::Lower, pool);
        if (mfs_check_counts(host, rc, beta_, delta_, theta_)) {
          ++stats_.emitted;
          emit_(lp, r);
        }
      }
      nsf(lp, r, rc, p, i + 1);
      --rc[space_.attr(Side::Lower, x)];
      r.pop_back();
    }
  }

  SearchSpace& space_;
  std::uint32_t min_upper_;
  std::uint32_t beta_;
  std::uint32_t delta_;
  std::optional<Ratio> theta_;
  Deadline& deadline_;
  EnumStats& stats_;
  PairSink emit_;
  std::size_t domain_;
  bool maximal_only_ = false;
  bool timed_out_ = false;
};

/// Extends single-side fair bicliques (L', R') to bi-side ones: every
/// maximal fair subset l' of L' paired with R' when R' is a maximal fair
/// subset of N(l').
class BiSideExtender {
 public:
  BiSideExtender(SearchSpace& space, const FairnessParams& params, bool exhaustive, Deadline& deadline,
                 EnumStats& stats, PairSink emit)
      : space_(space),
        params_(params),
        theta_(params.effective_theta()),
        exhaustive_(exhaustive),
        deadline_(deadline),
        stats_(stats),
        emit_(std::move(emit)) {}

  bool timed_out() const noexcept { return timed_out_; }

  void operator()(std::span<const VertexId> upper, std::span<const VertexId> lower) {
    std::vector<VertexId> l(upper.begin(), upper.end());
    std::sort(l.begin(), l.end());
    r_.assign(lower.begin(), lower.end());
    std::sort(r_.begin(), r_.end());
    r_counts_ = space_.class_counts(Side::Lower, r_);
    if (exhaustive_) {
      l_counts_ = space_.class_counts(Side::Upper, l);
      std::vector<VertexId> pick;
      subsets(l, pick, 0);
    } else {
      const auto set = AttributedSet::partition(l, space_.graph().attrs(Side::Upper), space_.domain(Side::Upper));
      Combination gen(set, params_.alpha, params_.delta, theta_);
      AttributedSet cur;
      while (gen.next(cur)) {
        if (stop()) return;
        ++stats_.nodes_expanded;
        if (!is_fair_counts(cur.counts(), params_.alpha, params_.delta, theta_)) continue;
        consider(cur.members());
      }
    }
  }

 private:
  bool stop() {
    if (!timed_out_ && deadline_.expired()) timed_out_ = true;
    return timed_out_;
  }

  void consider(const std::vector<VertexId>& l) {
    if (l.empty()) return;
    const auto host = space_.class_counts(Side::Lower, space_.common(Side::Upper, l));
    if (mfs_check_counts(host, r_counts_, params_.beta, params_.delta, theta_)) {
      ++stats_.emitted;
      emit_(l, r_);
    }
  }

  // Baseline: every subset of L', tested against the definitions directly.
  void subsets(const std::vector<VertexId>& l, std::vector<VertexId>& pick, std::size_t from) {
    for (std::size_t i = from; i < l.size(); ++i) {
      if (stop()) return;
      ++stats_.nodes_expanded;
      pick.push_back(l[i]);
      const auto pc = space_.class_counts(Side::Upper, pick);
      if (is_fair_counts(pc, params_.alpha, params_.delta, theta_) &&
          mfs_check_counts(l_counts_, pc, params_.alpha, params_.delta, theta_))
        consider(pick);
      subsets(l, pick, i + 1);
      pick.pop_back();
    }
  }

  SearchSpace& space_;
  const FairnessParams& params_;
  std::optional<Ratio> theta_;
  bool exhaustive_;
  Deadline& deadline_;
  EnumStats& stats_;
  PairSink emit_;
  std::vector<VertexId> r_;
  std::vector<std::size_t> r_counts_;
  std::vector<std::size_t> l_counts_;
  bool timed_out_ = false;
};

inline std::vector<VertexId> candidate_order(const AttributedBipartiteGraph& g, Side s, Ordering ordering) {
  auto order = g.alive_vertices(s);
  if (ordering == Ordering::DegOrd) {
    std::vector<std::size_t> deg(g.size(s), 0);
    for (VertexId v : order) deg[v] = g.degree(s, v);
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return deg[a] > deg[b]; });
  }
  return order;
}

inline Biclique make_biclique(std::span<const VertexId> upper, std::span<const VertexId> lower) {
  Biclique b{{upper.begin(), upper.end()}, {lower.begin(), lower.end()}};
  std::sort(b.upper.begin(), b.upper.end());
  std::sort(b.lower.begin(), b.lower.end());
  return b;
}

}  // namespace detail

/// Prunes a private copy of `g` for the configured model, then streams
/// every fair biclique to `sink`. Stats carry pruning and search telemetry;
/// `stats.complete` is false when the time limit interrupted the search.
inline EnumStats enumerate(const AttributedBipartiteGraph& g, const EnumConfig& cfg, const BicliqueSink& sink) {
  cfg.validate();
  EnumStats stats;
  detail::Deadline deadline(cfg.time_limit);
  const auto& p = cfg.params;
  const CoreMode mode = is_bi_side(p.model) ? CoreMode::BiSide : CoreMode::SingleSide;

  AttributedBipartiteGraph work = g;
  auto t0 = std::chrono::steady_clock::now();
  stats.prune = cfg.prune == PruneMode::CFCore ? cfcore(work, p.alpha, p.beta, mode, cfg.prune_iterate)
                                               : fcore_report(work, p.alpha, p.beta, mode);
  stats.prune_ms = detail::ms_since(t0);

  t0 = std::chrono::steady_clock::now();
  detail::SearchSpace space(work);
  const auto upper = work.alive_vertices(Side::Upper);
  const auto order = detail::candidate_order(work, Side::Lower, cfg.ordering);

  detail::PairSink emit = [&](std::span<const VertexId> l, std::span<const VertexId> r) {
    sink(detail::make_biclique(l, r));
  };
  std::optional<detail::BiSideExtender> extender;
  detail::PairSink single_emit = emit;
  EnumStats single_stats;
  if (is_bi_side(p.model)) {
    extender.emplace(space, p, cfg.algorithm == Algorithm::Baseline, deadline, stats, emit);
    single_emit = [&](std::span<const VertexId> l, std::span<const VertexId> r) { (*extender)(l, r); };
  }

  EnumStats& search_stats = is_bi_side(p.model) ? single_stats : stats;
  detail::SingleSideSearch search(space, p.alpha, p.beta, p.delta, p.effective_theta(), deadline, search_stats,
                                  single_emit);
  if (!upper.empty() && !order.empty()) {
    switch (cfg.algorithm) {
      case Algorithm::Baseline: search.run_nsf(upper, order); break;
      case Algorithm::BCEM: search.run_bcem(upper, order); break;
      case Algorithm::BCEMpp: search.run_bcempp(upper, order); break;
    }
  }
  if (is_bi_side(p.model)) stats.nodes_expanded += single_stats.nodes_expanded;
  stats.complete = !search.timed_out() && !(extender && extender->timed_out());
  stats.search_ms = detail::ms_since(t0);
  return stats;
}

/// Collects the stream into a canonical, sorted result.
inline EnumResult enumerate_collect(const AttributedBipartiteGraph& g, const EnumConfig& cfg) {
  EnumResult result;
  result.stats = enumerate(g, cfg, [&](const Biclique& b) { result.bicliques.push_back(b); });
  std::sort(result.bicliques.begin(), result.bicliques.end());
  return result;
}

namespace detail {
inline EnumResult run_as(const AttributedBipartiteGraph& g, EnumConfig cfg, Algorithm algo,
                         std::initializer_list<Model> models) {
  if (std::find(models.begin(), models.end(), cfg.params.model) == models.end())
    throw InvalidConfig("model " + std::string(to_string(cfg.params.model)) + " is not handled by " +
                        std::string(to_string(algo)));
  cfg.algorithm = algo;
  return enumerate_collect(g, cfg);
}
}  // namespace detail

/// Single-side fair bicliques by pruned branch and bound.
inline EnumResult fair_bcem(const AttributedBipartiteGraph& g, const EnumConfig& cfg) {
  return detail::run_as(g, cfg, Algorithm::BCEM, {Model::SSFBC});
}

/// Single-side (proportion) fair bicliques via maximal bicliques plus
/// combinational fair-subset extraction.
inline EnumResult fair_bcem_pp(const AttributedBipartiteGraph& g, const EnumConfig& cfg) {
  return detail::run_as(g, cfg, Algorithm::BCEMpp, {Model::SSFBC, Model::PSSFBC});
}

inline EnumResult bfair_bcem(const AttributedBipartiteGraph& g, const EnumConfig& cfg) {
  return detail::run_as(g, cfg, Algorithm::BCEM, {Model::BSFBC});
}

inline EnumResult bfair_bcem_pp(const AttributedBipartiteGraph& g, const EnumConfig& cfg) {
  return detail::run_as(g, cfg, Algorithm::BCEMpp, {Model::BSFBC, Model::PBSFBC});
}

/// Baseline without search-time shortcuts (NSF for single-side, BNSF for
/// bi-side).
inline EnumResult nsf_baseline(const AttributedBipartiteGraph& g, const EnumConfig& cfg) {
  return detail::run_as(g, cfg, Algorithm::Baseline, {Model::SSFBC, Model::BSFBC});
}

/// Maximal bicliques of `g` as given (no pruning) with at least `min_upper`
/// upper vertices and `min_lower_per_attr` lower vertices of every lower
/// attribute value. Both sides are always nonempty.
inline EnumResult enumerate_maximal_bicliques(const AttributedBipartiteGraph& g, std::uint32_t min_upper,
                                              std::uint32_t min_lower_per_attr,
                                              std::optional<std::chrono::duration<double>> time_limit = {},
                                              Ordering ordering = Ordering::IDOrd) {
  EnumResult result;
  detail::Deadline deadline(time_limit);
  const auto t0 = std::chrono::steady_clock::now();
  detail::SearchSpace space(g);
  const auto upper = g.alive_vertices(Side::Upper);
  const auto order = detail::candidate_order(g, Side::Lower, ordering);
  detail::SingleSideSearch search(space, min_upper, min_lower_per_attr, 0, std::nullopt, deadline, result.stats,
                                  [&](std::span<const VertexId> l, std::span<const VertexId> r) {
                                    result.bicliques.push_back(detail::make_biclique(l, r));
                                  });
  if (!upper.empty() && !order.empty()) search.run_maximal(upper, order);
  result.stats.complete = !search.timed_out();
  result.stats.search_ms = detail::ms_since(t0);
  std::sort(result.bicliques.begin(), result.bicliques.end());
  return result;
}

}  // namespace fairbc
