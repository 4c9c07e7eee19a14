#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "fairbc/biclique.hpp"
#include "fairbc/bigraph.hpp"
#include "fairbc/error.hpp"
#include "fairbc/fairset.hpp"

// Brute-force references. Everything here is computed from the definitions
// over bitmasks; only the graph and result types are shared with the rest of
// the library.

namespace fairbc {

inline constexpr std::size_t kOracleGraphLimit = 20;
inline constexpr std::size_t kOracleSetLimit = 16;

struct OracleOptions {
  // Scan every (L, R) pair instead of only L = N(R) for single-side models.
  bool naive = false;
};

namespace oracle_detail {

using Mask = std::uint32_t;

struct Bits {
  std::size_t n[2] = {0, 0};
  std::vector<Mask> adj[2];  // adj[0][u]: lower neighbors of u; adj[1][v]: upper neighbors of v
  std::vector<AttrId> attr[2];
  std::size_t domain[2] = {0, 0};
};

inline Bits to_bits(const AttributedBipartiteGraph& g) {
  const std::size_t total = g.size(Side::Upper) + g.size(Side::Lower);
  if (total > kOracleGraphLimit) throw InstanceTooLarge(total, kOracleGraphLimit);
  Bits b;
  for (Side s : {Side::Upper, Side::Lower}) {
    const auto i = index_of(s);
    b.n[i] = g.size(s);
    b.domain[i] = g.domain_size(s);
    b.adj[i].assign(b.n[i], 0);
    b.attr[i].resize(b.n[i]);
    for (VertexId v = 0; v < b.n[i]; ++v) {
      b.attr[i][v] = g.attr(s, v);
      for (VertexId w : g.neighbors(s, v)) b.adj[i][v] |= Mask{1} << w;
    }
  }
  return b;
}

inline Mask full(std::size_t n) { return n == 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

// Vertices of side `s` adjacent to every member of `other` (a mask on the
// opposite side).
inline Mask common(const Bits& b, std::size_t other_side, Mask other) {
  Mask acc = full(b.n[1 - other_side]);
  for (Mask m = other; m; m &= m - 1) acc &= b.adj[other_side][std::countr_zero(m)];
  return acc;
}

inline bool complete(const Bits& b, Mask l, Mask r) {
  for (Mask m = l; m; m &= m - 1)
    if ((b.adj[0][std::countr_zero(m)] & r) != r) return false;
  return true;
}

// Fair per the definitions: every class of the domain has >= k members, the
// largest and smallest class differ by <= delta, and with theta each class
// holds at least a theta share of the set.
inline bool fair(const Bits& b, std::size_t side, Mask set, std::size_t k, std::size_t delta,
                 const std::optional<Ratio>& theta) {
  if (set == 0 || b.domain[side] == 0) return false;
  std::vector<std::size_t> cnt(b.domain[side], 0);
  for (Mask m = set; m; m &= m - 1) ++cnt[b.attr[side][std::countr_zero(m)]];
  const std::size_t total = static_cast<std::size_t>(std::popcount(set));
  std::size_t lo = cnt[0];
  std::size_t hi = cnt[0];
  for (auto c : cnt) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
    if (theta && c * theta->den < theta->num * total) return false;
  }
  return lo >= k && hi - lo <= delta;
}

struct Pair {
  Mask l;
  Mask r;
};

// Drops every pair with a strict joint superset among `kept`.
inline std::vector<Pair> maximal_only(std::vector<Pair> kept) {
  std::sort(kept.begin(), kept.end(), [](const Pair& a, const Pair& b) {
    return std::popcount(a.l) + std::popcount(a.r) > std::popcount(b.l) + std::popcount(b.r);
  });
  std::vector<Pair> out;
  for (const auto& p : kept) {
    const bool dominated = std::any_of(out.begin(), out.end(), [&](const Pair& q) {
      return (p.l & q.l) == p.l && (p.r & q.r) == p.r && (p.l != q.l || p.r != q.r);
    });
    if (!dominated) out.push_back(p);
  }
  return out;
}

inline std::vector<Biclique> to_bicliques(const std::vector<Pair>& pairs) {
  std::vector<Biclique> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    Biclique c;
    for (Mask m = p.l; m; m &= m - 1) c.upper.push_back(static_cast<VertexId>(std::countr_zero(m)));
    for (Mask m = p.r; m; m &= m - 1) c.lower.push_back(static_cast<VertexId>(std::countr_zero(m)));
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Calls f(sub) for every nonempty subset of `set`.
template <class F>
void for_each_subset(Mask set, F&& f) {
  for (Mask sub = set; sub; sub = (sub - 1) & set) f(sub);
}

}  // namespace oracle_detail

/// Every fair biclique of `g` under `params.model`, canonical and sorted.
inline std::vector<Biclique> oracle_fair_bicliques(const AttributedBipartiteGraph& g, const FairnessParams& params,
                                                   OracleOptions opts = {}) {
  using namespace oracle_detail;
  const Bits b = to_bits(g);
  const std::optional<Ratio> theta = is_proportion(params.model) ? std::optional<Ratio>(params.theta) : std::nullopt;
  const bool bi = is_bi_side(params.model);

  auto keep = [&](Mask l, Mask r) {
    if (l == 0 || r == 0) return false;
    if (!fair(b, 1, r, params.beta, params.delta, theta)) return false;
    if (bi) return fair(b, 0, l, params.alpha, params.delta, theta);
    return static_cast<std::size_t>(std::popcount(l)) >= params.alpha;
  };

  std::vector<Pair> kept;
  for_each_subset(full(b.n[1]), [&](Mask r) {
    if (opts.naive) {
      for_each_subset(full(b.n[0]), [&](Mask l) {
        if (complete(b, l, r) && keep(l, r)) kept.push_back({l, r});
      });
      return;
    }
    const Mask nr = common(b, 1, r);
    if (bi) {
      for_each_subset(nr, [&](Mask l) {
        if (keep(l, r)) kept.push_back({l, r});
      });
    } else if (keep(nr, r)) {
      kept.push_back({nr, r});
    }
  });
  return to_bicliques(maximal_only(std::move(kept)));
}

/// Every maximal biclique of `g` with both sides nonempty.
inline std::vector<Biclique> oracle_maximal_bicliques(const AttributedBipartiteGraph& g) {
  using namespace oracle_detail;
  const Bits b = to_bits(g);
  std::vector<Pair> kept;
  for_each_subset(full(b.n[1]), [&](Mask r) {
    for_each_subset(full(b.n[0]), [&](Mask l) {
      if (complete(b, l, r)) kept.push_back({l, r});
    });
  });
  return to_bicliques(maximal_only(std::move(kept)));
}

/// Inclusion-maximal fair subsets of `s`, sorted.
inline std::vector<AttributedSet> oracle_maximal_fair_subsets(const AttributedSet& s, std::size_t k, std::size_t delta,
                                                              const std::optional<Ratio>& theta = std::nullopt) {
  using oracle_detail::Mask;
  std::vector<VertexId> items;
  std::vector<std::size_t> cls;
  for (std::size_t a = 0; a < s.classes.size(); ++a)
    for (VertexId v : s.classes[a]) {
      items.push_back(v);
      cls.push_back(a);
    }
  if (items.size() > kOracleSetLimit) throw InstanceTooLarge(items.size(), kOracleSetLimit);

  const std::size_t d = s.classes.size();
  auto is_fair = [&](Mask m) {
    if (m == 0 || d == 0) return false;
    std::vector<std::size_t> cnt(d, 0);
    for (Mask x = m; x; x &= x - 1) ++cnt[cls[std::countr_zero(x)]];
    const std::size_t total = static_cast<std::size_t>(std::popcount(m));
    const auto [lo, hi] = std::minmax_element(cnt.begin(), cnt.end());
    if (*lo < k || *hi - *lo > delta) return false;
    if (theta)
      for (auto c : cnt)
        if (c * theta->den < theta->num * total) return false;
    return true;
  };

  std::vector<Mask> fair_sets;
  const Mask all = oracle_detail::full(items.size());
  for (Mask m = 1; m <= all && m != 0; ++m)
    if (is_fair(m)) fair_sets.push_back(m);

  std::stable_sort(fair_sets.begin(), fair_sets.end(),
                   [](Mask a, Mask b) { return std::popcount(a) > std::popcount(b); });
  std::vector<Mask> maximal;
  for (Mask m : fair_sets)
    if (std::none_of(maximal.begin(), maximal.end(), [&](Mask o) { return (m & o) == m; })) maximal.push_back(m);

  std::vector<AttributedSet> out;
  for (Mask m : maximal) {
    AttributedSet pick(d);
    for (Mask x = m; x; x &= x - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(x));
      pick.classes[cls[i]].push_back(items[i]);
    }
    for (auto& c : pick.classes) std::sort(c.begin(), c.end());
    out.push_back(std::move(pick));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fairbc
