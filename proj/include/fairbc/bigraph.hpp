#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairbc/error.hpp"

namespace fairbc {

using VertexId = std::uint32_t;
using AttrId = std::uint32_t;
using ExternalId = std::uint64_t;

enum class Side : std::uint8_t { Upper = 0, Lower = 1 };

constexpr Side opposite(Side s) noexcept { return s == Side::Upper ? Side::Lower : Side::Upper; }
constexpr std::size_t index_of(Side s) noexcept { return static_cast<std::size_t>(s); }

struct VertexRef {
  Side side = Side::Upper;
  VertexId index = 0;

  friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

/// Exact non-negative rational, used for the proportion threshold so that
/// boundary ratios such as 2/5 >= 0.4 compare without rounding.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Ratio of(std::uint64_t n, std::uint64_t d) {
    if (d == 0) throw InvalidConfig("ratio with zero denominator");
    const auto g = std::gcd(n, d);
    return g == 0 ? Ratio{0, 1} : Ratio{n / g, d / g};
  }

  /// Parses a decimal literal such as "0.4", "1/3" or "0".
  static Ratio parse(std::string_view text) {
    auto fail = [&] { return InvalidConfig("not a non-negative rational: '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      auto n = parse_uint(text.substr(0, slash));
      auto d = parse_uint(text.substr(slash + 1));
      if (!n || !d || *d == 0) throw fail();
      return of(*n, *d);
    }
    auto dot = text.find('.');
    auto whole = text.substr(0, dot);
    auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw fail();
    if (frac.size() > 18) throw fail();
    std::uint64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    auto w = whole.empty() ? std::optional<std::uint64_t>{0} : parse_uint(whole);
    auto f = frac.empty() ? std::optional<std::uint64_t>{0} : parse_uint(frac);
    if (!w || !f) throw fail();
    return of(*w * scale + *f, scale);
  }

  bool is_zero() const noexcept { return num == 0; }
  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    // Print as a terminating decimal when possible, otherwise as a fraction.
    std::uint64_t d = den;
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    if (d != 1) return std::to_string(num) + "/" + std::to_string(den);
    std::string out = std::to_string(num / den) + ".";
    std::uint64_t rem = num % den;
    while (rem != 0) {
      rem *= 10;
      out += static_cast<char>('0' + rem / den);
      rem %= den;
    }
    return out;
  }

  friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
  friend bool operator<(const Ratio& a, const Ratio& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }

 private:
  static std::optional<std::uint64_t> parse_uint(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::uint64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
  }
};

enum class Model : std::uint8_t { SSFBC, BSFBC, PSSFBC, PBSFBC };

constexpr bool is_bi_side(Model m) noexcept { return m == Model::BSFBC || m == Model::PBSFBC; }
constexpr bool is_proportion(Model m) noexcept { return m == Model::PSSFBC || m == Model::PBSFBC; }

inline std::string_view to_string(Model m) {
  switch (m) {
    case Model::SSFBC: return "ssfbc";
    case Model::BSFBC: return "bsfbc";
    case Model::PSSFBC: return "pssfbc";
    case Model::PBSFBC: return "pbsfbc";
  }
  return "?";
}

struct FairnessParams {
  std::uint32_t alpha = 1;
  std::uint32_t beta = 1;
  std::uint32_t delta = 2;
  Ratio theta = Ratio::of(2, 5);
  Model model = Model::SSFBC;

  /// Theta only applies to the proportion models.
  std::optional<Ratio> effective_theta() const {
    return is_proportion(model) ? std::optional<Ratio>(theta) : std::nullopt;
  }

  void validate() const {
    if (Ratio::of(1, 2) < theta) throw InvalidConfig("theta must lie in [0, 0.5]");
  }
};

/// Immutable adjacency and attribute data shared between graph copies.
struct BigraphTopology {
  std::vector<std::vector<VertexId>> adjacency[2];
  std::vector<AttrId> attrs[2];
  std::vector<std::string> domain[2];
  std::vector<ExternalId> external[2];
  std::size_t edge_count = 0;
};

/// Attributed bipartite graph with dense per-side ids and a liveness mask.
///
/// Adjacency is shared between copies; only the liveness state is per copy,
/// so peeling a copy never disturbs other holders of the same topology.
class AttributedBipartiteGraph {
 public:
  AttributedBipartiteGraph() : topo_(std::make_shared<BigraphTopology>()) {}

  explicit AttributedBipartiteGraph(std::shared_ptr<const BigraphTopology> topo) : topo_(std::move(topo)) {
    for (Side s : {Side::Upper, Side::Lower}) {
      alive_[index_of(s)].assign(topo_->adjacency[index_of(s)].size(), 1);
      alive_count_[index_of(s)] = topo_->adjacency[index_of(s)].size();
    }
  }

  /// Builds a graph directly from dense ids; external ids equal internal ids.
  static AttributedBipartiteGraph from_indices(std::size_t n_upper, std::size_t n_lower,
                                               std::span<const std::pair<VertexId, VertexId>> edges,
                                               std::vector<AttrId> upper_attrs, std::vector<AttrId> lower_attrs,
                                               std::size_t upper_domain, std::size_t lower_domain) {
    if (upper_attrs.size() != n_upper || lower_attrs.size() != n_lower)
      throw PreconditionViolated("attribute vector size does not match vertex count");
    auto topo = std::make_shared<BigraphTopology>();
    topo->adjacency[0].resize(n_upper);
    topo->adjacency[1].resize(n_lower);
    for (auto [u, v] : edges) {
      if (u >= n_upper || v >= n_lower) throw PreconditionViolated("edge endpoint out of range");
      topo->adjacency[0][u].push_back(v);
      topo->adjacency[1][v].push_back(u);
    }
    for (auto& side : topo->adjacency) {
      for (auto& list : side) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
      }
    }
    for (const auto& list : topo->adjacency[0]) topo->edge_count += list.size();
    for (AttrId a : upper_attrs)
      if (a >= upper_domain) throw PreconditionViolated("upper attribute out of domain");
    for (AttrId a : lower_attrs)
      if (a >= lower_domain) throw PreconditionViolated("lower attribute out of domain");
    topo->attrs[0] = std::move(upper_attrs);
    topo->attrs[1] = std::move(lower_attrs);
    for (std::size_t a = 0; a < upper_domain; ++a) topo->domain[0].push_back(std::to_string(a));
    for (std::size_t a = 0; a < lower_domain; ++a) topo->domain[1].push_back(std::to_string(a));
    topo->external[0].resize(n_upper);
    topo->external[1].resize(n_lower);
    std::iota(topo->external[0].begin(), topo->external[0].end(), ExternalId{0});
    std::iota(topo->external[1].begin(), topo->external[1].end(), ExternalId{0});
    return AttributedBipartiteGraph(std::move(topo));
  }

  std::size_t size(Side s) const noexcept { return topo_->adjacency[index_of(s)].size(); }
  std::size_t edge_count() const noexcept { return topo_->edge_count; }

  /// Raw neighbor list including dead vertices; sorted ascending.
  std::span<const VertexId> neighbors(Side s, VertexId v) const { return topo_->adjacency[index_of(s)][v]; }

  AttrId attr(Side s, VertexId v) const { return topo_->attrs[index_of(s)][v]; }
  std::span<const AttrId> attrs(Side s) const { return topo_->attrs[index_of(s)]; }
  const std::vector<std::string>& domain(Side s) const noexcept { return topo_->domain[index_of(s)]; }
  std::size_t domain_size(Side s) const noexcept { return topo_->domain[index_of(s)].size(); }
  ExternalId external_id(Side s, VertexId v) const { return topo_->external[index_of(s)][v]; }

  bool is_alive(Side s, VertexId v) const { return alive_[index_of(s)][v] != 0; }
  std::size_t alive_count(Side s) const noexcept { return alive_count_[index_of(s)]; }
  std::size_t alive_total() const noexcept { return alive_count_[0] + alive_count_[1]; }

  void remove(Side s, VertexId v) {
    auto& flag = alive_[index_of(s)][v];
    if (flag) {
      flag = 0;
      --alive_count_[index_of(s)];
    }
  }

  void restore_all() {
    for (Side s : {Side::Upper, Side::Lower}) {
      std::fill(alive_[index_of(s)].begin(), alive_[index_of(s)].end(), 1);
      alive_count_[index_of(s)] = size(s);
    }
  }

  std::vector<VertexId> alive_vertices(Side s) const {
    std::vector<VertexId> out;
    out.reserve(alive_count(s));
    for (VertexId v = 0; v < size(s); ++v)
      if (is_alive(s, v)) out.push_back(v);
    return out;
  }

  /// Number of alive neighbors of an alive vertex; 0 for a dead one.
  std::size_t degree(Side s, VertexId v) const {
    if (!is_alive(s, v)) return 0;
    const Side o = opposite(s);
    std::size_t d = 0;
    for (VertexId w : neighbors(s, v)) d += is_alive(o, w) ? 1 : 0;
    return d;
  }

  std::size_t alive_edge_count() const {
    std::size_t e = 0;
    for (VertexId u = 0; u < size(Side::Upper); ++u) e += degree(Side::Upper, u);
    return e;
  }

  bool has_edge(VertexId u, VertexId v) const {
    auto n = neighbors(Side::Upper, u);
    return std::binary_search(n.begin(), n.end(), v);
  }

  const std::shared_ptr<const BigraphTopology>& topology() const noexcept { return topo_; }

 private:
  std::shared_ptr<const BigraphTopology> topo_;
  std::vector<char> alive_[2];
  std::size_t alive_count_[2] = {0, 0};
};

/// Attribute labels for one side. An empty `domain` means the domain is the
/// lexicographically ordered set of labels present in `labels`.
struct SideAttributes {
  std::map<ExternalId, std::string> labels;
  std::vector<std::string> domain;
};

inline AttributedBipartiteGraph build_graph(std::span<const std::pair<ExternalId, ExternalId>> edges,
                                            const SideAttributes& upper, const SideAttributes& lower) {
  if (edges.empty()) throw EmptyGraph();
  auto topo = std::make_shared<BigraphTopology>();
  const SideAttributes* side_attrs[2] = {&upper, &lower};

  std::vector<ExternalId> ids[2];
  for (auto [u, v] : edges) {
    ids[0].push_back(u);
    ids[1].push_back(v);
  }
  for (std::size_t s = 0; s < 2; ++s) {
    std::sort(ids[s].begin(), ids[s].end());
    ids[s].erase(std::unique(ids[s].begin(), ids[s].end()), ids[s].end());

    auto& domain = topo->domain[s];
    if (side_attrs[s]->domain.empty()) {
      std::set<std::string> seen;
      for (const auto& [id, label] : side_attrs[s]->labels) seen.insert(label);
      domain.assign(seen.begin(), seen.end());
    } else {
      domain = side_attrs[s]->domain;
    }
    std::map<std::string, AttrId> lookup;
    for (AttrId a = 0; a < domain.size(); ++a) lookup.emplace(domain[a], a);

    topo->attrs[s].reserve(ids[s].size());
    for (ExternalId id : ids[s]) {
      auto it = side_attrs[s]->labels.find(id);
      if (it == side_attrs[s]->labels.end()) throw MissingAttribute(id, s == 0);
      auto a = lookup.find(it->second);
      if (a == lookup.end())
        throw PreconditionViolated("label '" + it->second + "' is not in the attribute domain");
      topo->attrs[s].push_back(a->second);
    }
    topo->external[s] = ids[s];
    topo->adjacency[s].resize(ids[s].size());
  }

  auto dense = [&](std::size_t s, ExternalId id) {
    return static_cast<VertexId>(std::lower_bound(ids[s].begin(), ids[s].end(), id) - ids[s].begin());
  };
  for (auto [u, v] : edges) {
    const VertexId du = dense(0, u);
    const VertexId dv = dense(1, v);
    topo->adjacency[0][du].push_back(dv);
    topo->adjacency[1][dv].push_back(du);
  }
  for (auto& side : topo->adjacency) {
    for (auto& list : side) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }
  for (const auto& list : topo->adjacency[0]) topo->edge_count += list.size();
  return AttributedBipartiteGraph(std::move(topo));
}

/// D_a(v): alive neighbors of `v` carrying attribute `a` of the opposite side.
inline std::size_t attribute_degree(const AttributedBipartiteGraph& g, VertexRef v, AttrId a) {
  if (!g.is_alive(v.side, v.index)) return 0;
  const Side o = opposite(v.side);
  std::size_t d = 0;
  for (VertexId w : g.neighbors(v.side, v.index))
    if (g.is_alive(o, w) && g.attr(o, w) == a) ++d;
  return d;
}

/// Alive vertices adjacent to every member of `s`, sorted by internal id.
inline std::vector<VertexId> common_neighbors(const AttributedBipartiteGraph& g, std::span<const VertexRef> s) {
  if (s.empty()) throw EmptySet();
  const Side side = s.front().side;
  for (const auto& v : s)
    if (v.side != side) throw PreconditionViolated("common_neighbors: mixed sides");
  const Side o = opposite(side);

  std::vector<VertexId> acc;
  for (VertexId w : g.neighbors(side, s.front().index))
    if (g.is_alive(o, w)) acc.push_back(w);
  std::vector<VertexId> next;
  for (std::size_t i = 1; i < s.size() && !acc.empty(); ++i) {
    auto n = g.neighbors(side, s[i].index);
    next.clear();
    std::set_intersection(acc.begin(), acc.end(), n.begin(), n.end(), std::back_inserter(next));
    acc.swap(next);
  }
  return acc;
}

}  // namespace fairbc
