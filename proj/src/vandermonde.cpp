#include "sfft/vandermonde.hpp"

#include <algorithm>
#include <cmath>

namespace sfft {
namespace {

// sigma * delta reduced into (-m/2, m/2].
Index reduced_offset(Index sigma, Index delta, Index modulus) {
  Index t = mod(mod(sigma, modulus) * mod(delta, modulus), modulus);
  if (2 * t > modulus) t -= modulus;
  return t;
}

IndexVector stretched_sorted(std::span<const Index> nodes, Index sigma, Index modulus) {
  IndexVector stretched(nodes.size());
  const Index s = mod(sigma, modulus);
  std::transform(nodes.begin(), nodes.end(), stretched.begin(),
                 [&](Index n) { return mod(s * n, modulus); });
  std::sort(stretched.begin(), stretched.end());
  return stretched;
}

void require_distinct_pairs(std::span<const Index> nodes, Index sigma, Index modulus) {
  if (nodes.size() >= 2) min_periodic_distance(nodes, sigma, modulus);
}

}  // namespace

void validate_spec(const VandermondeSpec& spec) {
  const Index m = spec.modulus();
  if (spec.level < 0 || spec.level > 62) throw std::invalid_argument("level out of range");
  if (spec.nodes.empty()) throw std::invalid_argument("spec needs at least one node");
  if (spec.sigma < 1 || (m > 1 && spec.sigma >= m)) throw std::invalid_argument("sigma out of range");
  for (std::size_t r = 0; r < spec.nodes.size(); ++r) {
    if (spec.nodes[r] < 0 || spec.nodes[r] >= m) throw std::invalid_argument("node out of range");
    if (r > 0 && spec.nodes[r] <= spec.nodes[r - 1]) {
      throw std::invalid_argument("nodes must be strictly increasing");
    }
  }
  if (spec.rows < static_cast<Index>(spec.nodes.size()) || spec.rows > m) {
    throw std::invalid_argument("row count must lie in [M, 2^j]");
  }
  require_distinct_pairs(spec.nodes, spec.sigma, m);
}

ComplexMatrix build_vandermonde(const VandermondeSpec& spec) {
  validate_spec(spec);
  const Index m = spec.modulus();
  const Index cols = static_cast<Index>(spec.nodes.size());
  ComplexMatrix v(spec.rows, cols);
  for (Index r = 0; r < cols; ++r) {
    const Index stretched = mod(spec.sigma * spec.nodes[r], m);
    for (Index p = 0; p < spec.rows; ++p) v(p, r) = unit_root(stretched * p, m);
  }
  return v;
}

Index min_periodic_distance(std::span<const Index> nodes, Index sigma, Index modulus) {
  if (nodes.empty()) throw std::invalid_argument("no nodes");
  if (nodes.size() == 1) return modulus;
  const IndexVector stretched = stretched_sorted(nodes, sigma, modulus);
  Index best = stretched.front() + modulus - stretched.back();
  for (std::size_t i = 1; i < stretched.size(); ++i) {
    best = std::min(best, stretched[i] - stretched[i - 1]);
  }
  if (best == 0) throw DegenerateSpecError("stretched nodes collide");
  return best;
}

std::optional<double> moitra_bound(Index rows, Index min_distance, Index modulus) {
  if (min_distance < 1) throw std::invalid_argument("distance must be positive");
  const double ratio = static_cast<double>(modulus) / static_cast<double>(min_distance);
  const double r = static_cast<double>(rows);
  if (!(r > ratio)) return std::nullopt;
  return std::sqrt((r + ratio) / (r - ratio));
}

std::vector<double> gershgorin_row_sums(const VandermondeSpec& spec) {
  validate_spec(spec);
  const Index m = spec.modulus();
  const std::size_t count = spec.nodes.size();
  std::vector<double> sums(count, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t l = k + 1; l < count; ++l) {
      const Index t = reduced_offset(spec.sigma, spec.nodes[k] - spec.nodes[l], m);
      const double term = std::abs(sin_pi_ratio(spec.rows * t, m) / sin_pi_ratio(t, m));
      sums[k] += term;
      sums[l] += term;
    }
  }
  return sums;
}

std::optional<double> gershgorin_bound(const VandermondeSpec& spec) {
  const auto sums = gershgorin_row_sums(spec);
  const double worst = *std::max_element(sums.begin(), sums.end());
  const double rows = static_cast<double>(spec.rows);
  if (!(worst < rows)) return std::nullopt;
  return std::sqrt((rows + worst) / (rows - worst));
}

std::vector<double> approx_row_sums(std::span<const Index> nodes, Index sigma, Index modulus) {
  require_distinct_pairs(nodes, sigma, modulus);
  std::vector<double> sums(nodes.size(), 0.0);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (std::size_t l = k + 1; l < nodes.size(); ++l) {
      const Index t = reduced_offset(sigma, nodes[k] - nodes[l], modulus);
      const double term = 1.0 / std::abs(sin_pi_ratio(t, modulus));
      sums[k] += term;
      sums[l] += term;
    }
  }
  return sums;
}

ConditionReport condition_report(const VandermondeSpec& spec) {
  ConditionReport report;
  const auto sums = gershgorin_row_sums(spec);
  report.max_row_sum = *std::max_element(sums.begin(), sums.end());
  const double rows = static_cast<double>(spec.rows);
  if (report.max_row_sum < rows) {
    report.gershgorin = std::sqrt((rows + report.max_row_sum) / (rows - report.max_row_sum));
  }
  report.min_distance = min_periodic_distance(spec.nodes, spec.sigma, spec.modulus());
  report.moitra = moitra_bound(spec.rows, report.min_distance, spec.modulus());
  return report;
}

RestrictedSolution solve_restricted_system(const VandermondeSpec& spec,
                                           std::span<const Complex> previous,
                                           std::span<const Complex> rhs) {
  if (previous.size() != spec.nodes.size()) throw std::invalid_argument("previous values mismatch");
  if (static_cast<Index>(rhs.size()) != spec.rows) throw std::invalid_argument("rhs length mismatch");

  ComplexMatrix a = build_vandermonde(spec);
  const Index twice_modulus = 2 * spec.modulus();
  for (Index r = 0; r < a.cols(); ++r) {
    const Complex twiddle = unit_root(spec.nodes[r], twice_modulus);
    for (auto& entry : a.column(r)) entry *= twiddle;
  }

  const auto ls = solve_least_squares(std::move(a), rhs);
  RestrictedSolution out;
  out.residual = ls.residual;
  out.even_half.resize(previous.size());
  for (std::size_t r = 0; r < previous.size(); ++r) {
    out.even_half[r] = 0.5 * (ls.solution[r] + previous[r]);
  }
  return out;
}

}  // namespace sfft
