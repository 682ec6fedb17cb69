#ifndef SFFT_ROW_COUNT_HPP
#define SFFT_ROW_COUNT_HPP

#include <span>

#include "sfft/core.hpp"

namespace sfft {

/// M' = c M with c = min(max(1, floor((modulus / M) / d)), c_max), capped at
/// the modulus.
Index simple_row_count(Index sparsity, Index min_distance, Index modulus, int c_max);

struct RowChoice {
  Index rows = 0;
  std::optional<double> bound;  // Gershgorin bound at the chosen rows
  bool warning = false;         // no ladder rung met the threshold
};

/// Walks the ladder c = 1, 2, 5, ... and returns the first c M (capped at the
/// modulus) whose Gershgorin bound is at most kappa_threshold. When none
/// qualifies the last rung is returned with warning set.
RowChoice adaptive_row_count(std::span<const Index> nodes, Index sigma, Index modulus,
                             double kappa_threshold, std::span<const int> ladder);

}  // namespace sfft

#endif  // SFFT_ROW_COUNT_HPP
