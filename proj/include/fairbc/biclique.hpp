#pragma once

#include <algorithm>
#include <vector>

#include "fairbc/bigraph.hpp"

namespace fairbc {

/// A biclique in canonical form: both sides sorted, internal ids.
struct Biclique {
  std::vector<VertexId> upper;
  std::vector<VertexId> lower;

  friend bool operator==(const Biclique&, const Biclique&) = default;
  friend auto operator<=>(const Biclique&, const Biclique&) = default;

  /// True if this biclique is side-wise contained in `other`.
  bool contained_in(const Biclique& other) const {
    return std::includes(other.upper.begin(), other.upper.end(), upper.begin(), upper.end()) &&
           std::includes(other.lower.begin(), other.lower.end(), lower.begin(), lower.end());
  }
};

}  // namespace fairbc
