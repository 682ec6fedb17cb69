#ifndef SFFT_VANDERMONDE_HPP
#define SFFT_VANDERMONDE_HPP

#include <optional>
#include <span>

#include "sfft/core.hpp"
#include "sfft/householder_qr.hpp"

namespace sfft {

/// Checks the structural invariants of a spec: 1 <= sigma, strictly
/// increasing nodes in [0, 2^level), nodes.size() <= rows <= 2^level and
/// pairwise distinct stretched nodes. Throws std::invalid_argument or
/// DegenerateSpecError.
void validate_spec(const VandermondeSpec& spec);

/// V(p, r) = omega_{2^j}^{sigma p n_r} for p in [0, rows).
ComplexMatrix build_vandermonde(const VandermondeSpec& spec);

/// Smallest cyclic gap between the stretched nodes sigma * n_r mod modulus.
/// A single node is maximally spread and yields the modulus itself.
Index min_periodic_distance(std::span<const Index> nodes, Index sigma, Index modulus);

/// Condition bound from the minimal node separation:
/// sqrt((rows + modulus/d) / (rows - modulus/d)), present only when
/// rows > modulus/d.
std::optional<double> moitra_bound(Index rows, Index min_distance, Index modulus);

/// Off-diagonal absolute row sums of V^* V, written as Dirichlet kernel
/// ratios |sin(rows pi t / m) / sin(pi t / m)| with t = sigma (n_k - n_l).
std::vector<double> gershgorin_row_sums(const VandermondeSpec& spec);

/// sqrt((rows + S*) / (rows - S*)) with S* the largest Gershgorin row sum;
/// absent when S* >= rows.
std::optional<double> gershgorin_bound(const VandermondeSpec& spec);

/// Row-count-free upper estimate of the Gershgorin sums, sum 1/|sin(pi t / m)|.
std::vector<double> approx_row_sums(std::span<const Index> nodes, Index sigma, Index modulus);

struct ConditionReport {
  std::optional<double> moitra;
  std::optional<double> gershgorin;
  double max_row_sum = 0.0;
  Index min_distance = 0;
};

ConditionReport condition_report(const VandermondeSpec& spec);

struct RestrictedSolution {
  ComplexVector even_half;  // restricted x_0^(j+1)
  double residual = 0.0;
};

/// Solves A (2 x0 - previous) = rhs in the least-squares sense, with
/// A = V * diag(omega_{2^{j+1}}^{n_r}), and returns x0.
///
/// rhs holds the spectrum samples at the rows of V, so rhs.size() must equal
/// spec.rows. Throws IllConditionedError on numerical rank deficiency.
RestrictedSolution solve_restricted_system(const VandermondeSpec& spec,
                                           std::span<const Complex> previous,
                                           std::span<const Complex> rhs);

}  // namespace sfft

#endif  // SFFT_VANDERMONDE_HPP
