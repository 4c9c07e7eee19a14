#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "fairbc/bigraph.hpp"

namespace fairbc {

/// A vertex set partitioned by attribute value. `classes[a]` holds the
/// members with attribute `a`, sorted ascending.
struct AttributedSet {
  std::vector<std::vector<VertexId>> classes;

  AttributedSet() = default;
  explicit AttributedSet(std::size_t domain_size) : classes(domain_size) {}
  explicit AttributedSet(std::vector<std::vector<VertexId>> c) : classes(std::move(c)) {
    for (auto& cls : classes) std::sort(cls.begin(), cls.end());
  }

  /// Partitions `members` by `attrs[member]`.
  static AttributedSet partition(std::span<const VertexId> members, std::span<const AttrId> attrs,
                                 std::size_t domain_size) {
    AttributedSet s(domain_size);
    for (VertexId v : members) s.classes[attrs[v]].push_back(v);
    for (auto& cls : s.classes) std::sort(cls.begin(), cls.end());
    return s;
  }

  std::size_t domain_size() const noexcept { return classes.size(); }

  std::size_t total() const noexcept {
    std::size_t t = 0;
    for (const auto& c : classes) t += c.size();
    return t;
  }

  std::vector<std::size_t> counts() const {
    std::vector<std::size_t> out;
    out.reserve(classes.size());
    for (const auto& c : classes) out.push_back(c.size());
    return out;
  }

  std::vector<VertexId> members() const {
    std::vector<VertexId> out;
    for (const auto& c : classes) out.insert(out.end(), c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const AttributedSet&, const AttributedSet&) = default;
  friend auto operator<=>(const AttributedSet&, const AttributedSet&) = default;
};

// Count-level predicates. Every fairness question in this library depends
// only on per-class sizes, so the hot paths work on count vectors.

inline bool is_fair_counts(std::span<const std::size_t> counts, std::size_t k, std::size_t delta) {
  if (counts.empty()) return false;
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  return *lo >= k && *hi - *lo <= delta;
}

inline bool meets_ratio(std::span<const std::size_t> counts, const Ratio& theta) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) return false;
  for (auto c : counts)
    if (static_cast<unsigned __int128>(c) * theta.den < static_cast<unsigned __int128>(theta.num) * total)
      return false;
  return true;
}

inline bool is_fair_counts(std::span<const std::size_t> counts, std::size_t k, std::size_t delta,
                           const std::optional<Ratio>& theta) {
  return is_fair_counts(counts, k, delta) && (!theta || meets_ratio(counts, *theta));
}

inline bool is_fair_set(const AttributedSet& s, std::size_t k, std::size_t delta) {
  return is_fair_counts(s.counts(), k, delta);
}

inline bool is_proportion_fair_set(const AttributedSet& s, std::size_t k, std::size_t delta, const Ratio& theta) {
  auto c = s.counts();
  return is_fair_counts(c, k, delta) && meets_ratio(c, theta);
}

/// Maximal-fair-subset test on class sizes: `hat` is a fair subset of a host
/// whose class sizes are `host`. With `theta` the proportion bound is part
/// of fairness.
inline bool mfs_check_counts(std::span<const std::size_t> host, std::span<const std::size_t> hat, std::size_t k,
                             std::size_t delta, const std::optional<Ratio>& theta = std::nullopt) {
  std::size_t size = 0;
  for (auto c : hat) {
    if (c < k) return false;
    size += c;
  }
  if (size == 0) return false;
  bool every_class_has_leftover = true;
  for (std::size_t a = 0; a < host.size(); ++a)
    if (host[a] == hat[a]) every_class_has_leftover = false;
  if (every_class_has_leftover) return false;

  std::vector<std::size_t> grown(hat.begin(), hat.end());
  for (std::size_t a = 0; a < host.size(); ++a) {
    if (host[a] == hat[a]) continue;
    ++grown[a];
    const bool fair = is_fair_counts(grown, k, delta, theta);
    --grown[a];
    if (fair) return false;
  }
  return true;
}

/// Decides whether `hat` is a maximal fair subset of `s` under (k, delta).
inline bool mfs_check(const AttributedSet& s, const AttributedSet& hat, std::size_t k, std::size_t delta,
                      const std::optional<Ratio>& theta = std::nullopt) {
  if (s.domain_size() != hat.domain_size()) throw PreconditionViolated("mfs_check: domain mismatch");
  for (std::size_t a = 0; a < s.domain_size(); ++a)
    if (!std::includes(s.classes[a].begin(), s.classes[a].end(), hat.classes[a].begin(), hat.classes[a].end()))
      throw PreconditionViolated("mfs_check: candidate is not a subset of the host set");
  return mfs_check_counts(s.counts(), hat.counts(), k, delta, theta);
}

/// Per-class subset sizes chosen by the combinational generator, or nullopt
/// when it emits nothing.
///
/// The size of class i is min(|S_i|, msize + delta), further capped by
/// floor(msize * (1 - theta) / theta) when a proportion bound is given,
/// where msize is the smallest class size.
inline std::optional<std::vector<std::size_t>> combination_sizes(std::span<const std::size_t> class_sizes,
                                                                 std::size_t k, std::size_t delta,
                                                                 const std::optional<Ratio>& theta) {
  if (class_sizes.empty()) return std::nullopt;
  for (auto c : class_sizes)
    if (c < k) return std::nullopt;
  const std::size_t msize = *std::min_element(class_sizes.begin(), class_sizes.end());
  std::size_t cap = std::numeric_limits<std::size_t>::max();
  if (theta && !theta->is_zero()) {
    if (theta->den < theta->num) return std::nullopt;
    cap = static_cast<std::size_t>(static_cast<unsigned __int128>(msize) * (theta->den - theta->num) / theta->num);
  }
  std::vector<std::size_t> sizes;
  sizes.reserve(class_sizes.size());
  std::size_t total = 0;
  for (auto c : class_sizes) {
    sizes.push_back(std::min({c, msize + delta, cap}));
    total += sizes.back();
  }
  // A fair set is never empty.
  if (total == 0) return std::nullopt;
  return sizes;
}

/// Lazy generator of the combinational maximal fair subsets of an attributed
/// set: the Cartesian product, over classes in domain order, of all subsets
/// of the chosen size, each class's subsets in lexicographic order.
///
///   Combination gen(s, k, delta, theta);
///   AttributedSet out;
///   while (gen.next(out)) { ... }
class Combination {
 public:
  Combination(const AttributedSet& s, std::size_t k, std::size_t delta, std::optional<Ratio> theta = std::nullopt)
      : source_(&s) {
    auto sizes = combination_sizes(s.counts(), k, delta, theta);
    if (!sizes) {
      done_ = true;
      return;
    }
    sizes_ = std::move(*sizes);
    picks_.resize(sizes_.size());
    for (std::size_t a = 0; a < sizes_.size(); ++a) {
      picks_[a].resize(sizes_[a]);
      for (std::size_t i = 0; i < sizes_[a]; ++i) picks_[a][i] = i;
    }
  }

  /// Writes the next subset into `out`; false once the stream is exhausted.
  bool next(AttributedSet& out) {
    if (done_) return false;
    if (started_ && !advance()) {
      done_ = true;
      return false;
    }
    started_ = true;
    out.classes.resize(sizes_.size());
    for (std::size_t a = 0; a < sizes_.size(); ++a) {
      auto& cls = out.classes[a];
      cls.clear();
      for (auto idx : picks_[a]) cls.push_back(source_->classes[a][idx]);
    }
    return true;
  }

  /// Number of subsets the stream yields in total.
  std::uint64_t expected_count() const {
    if (sizes_.empty()) return 0;
    std::uint64_t n = 1;
    for (std::size_t a = 0; a < sizes_.size(); ++a) n *= binomial(source_->classes[a].size(), sizes_[a]);
    return n;
  }

  const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }

  static std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    std::uint64_t out = 1;
    for (std::uint64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
  }

 private:
  // Odometer over classes; the last class varies fastest.
  bool advance() {
    for (std::size_t a = sizes_.size(); a-- > 0;) {
      if (next_subset(picks_[a], source_->classes[a].size())) return true;
      for (std::size_t i = 0; i < picks_[a].size(); ++i) picks_[a][i] = i;
    }
    return false;
  }

  static bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t r = idx.size();
    for (std::size_t i = r; i-- > 0;) {
      if (idx[i] < n - r + i) {
        ++idx[i];
        for (std::size_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

  const AttributedSet* source_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<std::size_t>> picks_;
  bool started_ = false;
  bool done_ = false;
};

/// Convenience: materializes the combinational stream.
inline std::vector<AttributedSet> combination(const AttributedSet& s, std::size_t k, std::size_t delta,
                                              std::optional<Ratio> theta = std::nullopt) {
  std::vector<AttributedSet> out;
  Combination gen(s, k, delta, theta);
  AttributedSet cur;
  while (gen.next(cur)) out.push_back(cur);
  return out;
}

}  // namespace fairbc
