#ifndef SFFT_SIGMA_SELECT_HPP
#define SFFT_SIGMA_SELECT_HPP

#include <optional>
#include <span>

#include "sfft/core.hpp"

namespace sfft {

struct SigmaScore {
  Index sigma = 1;
  double score = 0.0;                // D_sigma
  std::optional<double> tie_sum;     // |sum_k omega_m^{sigma n_k}|
};

/// Trial-division primality, exact for the 63-bit range used here.
bool is_prime(Index n) noexcept;

/// The `count` largest odd primes strictly below modulus / 2, descending.
/// Falls back to {1} when no odd prime exists there.
IndexVector candidate_primes(Index modulus, Index count);

/// Candidate budget K = max(1, floor(M / log2(max(M, 2)))).
Index candidate_budget(Index sparsity);

/// Two-term score around the smallest cyclic gap of the stretched nodes.
/// Needs at least two nodes; throws DegenerateSpecError on collisions.
SigmaScore score_sigma(std::span<const Index> nodes, Index sigma, Index modulus);

/// Picks the candidate prime with the smallest score. Near-equal scores
/// (relative 1e-12) fall through to the smaller exponential sum, then to the
/// larger sigma. A single node always gets sigma = 1.
Index select_sigma(std::span<const Index> nodes, Index modulus, Index count);

/// Alternative selection that maximizes the minimal periodic distance over
/// the same candidate set.
Index select_sigma_by_distance(std::span<const Index> nodes, Index modulus, Index count);

}  // namespace sfft

#endif  // SFFT_SIGMA_SELECT_HPP
