#include "sfft/sigma_select.hpp"

#include <algorithm>
#include <cmath>

#include "sfft/vandermonde.hpp"

namespace sfft {
namespace {

constexpr double kTieTolerance = 1e-12;

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

double exponential_sum(std::span<const Index> nodes, Index sigma, Index modulus) {
  Complex sum{0.0, 0.0};
  for (Index n : nodes) sum += unit_root(mod(sigma, modulus) * n, modulus);
  return std::abs(sum);
}

}  // namespace

bool is_prime(Index n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (Index d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

IndexVector candidate_primes(Index modulus, Index count) {
  if (count < 1) throw std::invalid_argument("candidate count must be positive");
  IndexVector primes;
  for (Index p = modulus / 2 - 1; p >= 3 && static_cast<Index>(primes.size()) < count; --p) {
    if (p % 2 == 1 && is_prime(p)) primes.push_back(p);
  }
  if (primes.empty()) primes.push_back(1);
  return primes;
}

Index candidate_budget(Index sparsity) {
  const double m = static_cast<double>(std::max<Index>(sparsity, 2));
  return std::max<Index>(1, static_cast<Index>(std::floor(static_cast<double>(sparsity) / std::log2(m))));
}

SigmaScore score_sigma(std::span<const Index> nodes, Index sigma, Index modulus) {
  if (nodes.size() < 2) throw std::invalid_argument("scoring needs at least two nodes");
  IndexVector stretched(nodes.size());
  std::transform(nodes.begin(), nodes.end(), stretched.begin(),
                 [&](Index n) { return mod(mod(sigma, modulus) * n, modulus); });
  std::sort(stretched.begin(), stretched.end());

  const std::size_t count = stretched.size();
  // gaps[k] = n~_k - n~_{k-1}, with n~_{-1} = n~_{last} - modulus.
  IndexVector gaps(count);
  gaps[0] = stretched[0] - (stretched[count - 1] - modulus);
  for (std::size_t k = 1; k < count; ++k) gaps[k] = stretched[k] - stretched[k - 1];

  const auto smallest = std::min_element(gaps.begin(), gaps.end());
  if (*smallest == 0) throw DegenerateSpecError("stretched nodes collide");
  const std::size_t k = static_cast<std::size_t>(smallest - gaps.begin());
  const std::size_t prev = (k + count - 1) % count;
  const std::size_t next = (k + 1) % count;

  auto inverse_sine = [&](Index gap) { return 1.0 / std::abs(sin_pi_ratio(gap, modulus)); };
  const double center = inverse_sine(gaps[k]);
  SigmaScore out;
  out.sigma = sigma;
  out.score = std::max(center + inverse_sine(gaps[prev]), center + inverse_sine(gaps[next]));
  return out;
}

Index select_sigma(std::span<const Index> nodes, Index modulus, Index count) {
  if (nodes.empty()) throw std::invalid_argument("no nodes");
  if (nodes.size() == 1) return 1;

  std::optional<SigmaScore> best;
  for (Index sigma : candidate_primes(modulus, count)) {
    SigmaScore candidate;
    try {
      candidate = score_sigma(nodes, sigma, modulus);
    } catch (const DegenerateSpecError&) {
      continue;
    }
    if (!best) {
      best = candidate;
      continue;
    }
    if (nearly_equal(candidate.score, best->score)) {
      if (!best->tie_sum) best->tie_sum = exponential_sum(nodes, best->sigma, modulus);
      candidate.tie_sum = exponential_sum(nodes, candidate.sigma, modulus);
      // Candidates arrive in descending order, so a full tie keeps the larger sigma.
      if (*candidate.tie_sum < *best->tie_sum && !nearly_equal(*candidate.tie_sum, *best->tie_sum)) {
        best = candidate;
      }
    } else if (candidate.score < best->score) {
      best = candidate;
    }
  }
  if (!best) throw std::logic_error("every sigma candidate collides");
  return best->sigma;
}

Index select_sigma_by_distance(std::span<const Index> nodes, Index modulus, Index count) {
  if (nodes.empty()) throw std::invalid_argument("no nodes");
  if (nodes.size() == 1) return 1;
  Index best_sigma = 0;
  Index best_distance = 0;
  for (Index sigma : candidate_primes(modulus, count)) {
    Index distance = 0;
    try {
      distance = min_periodic_distance(nodes, sigma, modulus);
    } catch (const DegenerateSpecError&) {
      continue;
    }
    if (distance > best_distance) {
      best_distance = distance;
      best_sigma = sigma;
    }
  }
  if (best_distance == 0) throw std::logic_error("every sigma candidate collides");
  return best_sigma;
}

}  // namespace sfft
