#include "sfft/row_count.hpp"

#include <algorithm>

#include "sfft/vandermonde.hpp"

namespace sfft {

Index simple_row_count(Index sparsity, Index min_distance, Index modulus, int c_max) {
  if (sparsity < 1 || min_distance < 1 || min_distance > modulus || c_max < 1) {
    throw std::invalid_argument("invalid row count arguments");
  }
  // floor((modulus / M) / d) == floor(modulus / (M d)) for positive integers.
  const Index spread = modulus / (sparsity * min_distance);
  const Index c = std::min<Index>(std::max<Index>(1, spread), c_max);
  return std::min(c * sparsity, modulus);
}

RowChoice adaptive_row_count(std::span<const Index> nodes, Index sigma, Index modulus,
                             double kappa_threshold, std::span<const int> ladder) {
  if (ladder.empty() || ladder.front() != 1) throw std::invalid_argument("ladder must start at 1");
  const Index sparsity = static_cast<Index>(nodes.size());
  VandermondeSpec spec{exact_log2(modulus), sigma, IndexVector(nodes.begin(), nodes.end()), 0};

  RowChoice choice;
  for (int c : ladder) {
    spec.rows = std::min<Index>(c * sparsity, modulus);
    choice.rows = spec.rows;
    choice.bound = gershgorin_bound(spec);
    if (choice.bound && *choice.bound <= kappa_threshold) return choice;
    if (spec.rows == modulus) break;
  }
  choice.warning = true;
  return choice;
}

}  // namespace sfft
