#include <algorithm>
#include <set>

#include "doctest.h"
#include "sfft/sigma_select.hpp"
#include "sfft/vandermonde.hpp"
#include "test_util.hpp"

using namespace sfft;

namespace {

bool trial_division_prime(Index n) {
  if (n < 2) return false;
  for (Index d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

IndexVector random_nodes(std::mt19937_64& rng, Index count, Index modulus) {
  std::set<Index> chosen;
  while (static_cast<Index>(chosen.size()) < count)
    chosen.insert(std::uniform_int_distribution<Index>(0, modulus - 1)(rng));
  return {chosen.begin(), chosen.end()};
}

}  // namespace

TEST_CASE("primality") {
  for (Index n = -3; n < 5000; ++n) CHECK(is_prime(n) == trial_division_prime(n));
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(2147483649));
}

TEST_CASE("candidate primes") {
  CHECK(candidate_primes(16, 2) == IndexVector{7, 5});
  CHECK(candidate_primes(8, 5) == IndexVector{3});
  CHECK(candidate_primes(4, 3) == IndexVector{1});
  CHECK(candidate_primes(2, 1) == IndexVector{1});

  IndexVector expected;
  for (Index p = 16383; expected.size() < 3; --p)
    if (trial_division_prime(p)) expected.push_back(p);
  CHECK(candidate_primes(Index{1} << 15, 3) == expected);
  CHECK_THROWS_AS(candidate_primes(16, 0), std::invalid_argument);
}

TEST_CASE("candidate budget") {
  CHECK(candidate_budget(1) == 1);
  CHECK(candidate_budget(2) == 2);
  CHECK(candidate_budget(8) == 2);
  CHECK(candidate_budget(20) == 4);   // 20 / 4.32
  CHECK(candidate_budget(100) == 15);  // 100 / 6.64
}

TEST_CASE("score_sigma closed forms") {
  for (int level = 3; level <= 10; ++level) {
    const Index m = Index{1} << level;
    for (Index sigma : {1, 3, 7}) {
      CHECK(score_sigma(IndexVector{0, m / 2}, sigma, m).score == doctest::Approx(2.0).epsilon(1e-14));
    }
  }
  const double expected = 1.0 / std::sin(std::numbers::pi / 8) + 1.0 / std::sin(std::numbers::pi / 4);
  const auto score = score_sigma(IndexVector{0, 1, 2, 3}, 3, 8);
  CHECK(score.score == doctest::Approx(expected).epsilon(1e-14));
  CHECK(score.score == doctest::Approx(4.0273).epsilon(1e-4));
  CHECK_THROWS_AS(score_sigma(IndexVector{0, 4}, 2, 8), DegenerateSpecError);
  CHECK_THROWS_AS(score_sigma(IndexVector{0}, 1, 8), std::invalid_argument);
}

TEST_CASE("score never exceeds the worst approximate row sum") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const int level = std::uniform_int_distribution<int>(4, 12)(rng);
    const Index m = Index{1} << level;
    const Index count = std::uniform_int_distribution<Index>(3, std::min<Index>(12, m / 2))(rng);
    const auto nodes = random_nodes(rng, count, m);
    const Index sigma = 2 * std::uniform_int_distribution<Index>(0, m / 2 - 1)(rng) + 1;
    const auto sums = approx_row_sums(nodes, sigma, m);
    CHECK(score_sigma(nodes, sigma, m).score <= *std::max_element(sums.begin(), sums.end()) * (1 + 1e-12));
  }
}

TEST_CASE("select_sigma") {
  CHECK(select_sigma(IndexVector{0}, 1024, 4) == 1);
  CHECK(select_sigma(IndexVector{17}, 8, 1) == 1);

  // Antipodal pair: every odd sigma scores 2 with exponential sum 0, so the
  // largest candidate wins.
  for (int level = 4; level <= 12; ++level) {
    const Index m = Index{1} << level;
    const auto primes = candidate_primes(m, 3);
    CHECK(select_sigma(IndexVector{0, m / 2}, m, 3) == primes.front());
  }

  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = Index{1} << 12;
    const auto nodes = random_nodes(rng, 8, m);
    const Index budget = candidate_budget(8);
    const Index chosen = select_sigma(nodes, m, budget);
    CHECK(chosen % 2 == 1);
    const double chosen_score = score_sigma(nodes, chosen, m).score;
    for (Index sigma : candidate_primes(m, budget)) {
      CHECK(chosen_score <= score_sigma(nodes, sigma, m).score * (1 + 1e-12));
    }
    CHECK(select_sigma(nodes, m, budget) == chosen);
  }
}

TEST_CASE("distance-only selection maximizes the minimal distance") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const Index m = Index{1} << 11;
    const auto nodes = random_nodes(rng, 10, m);
    const Index chosen = select_sigma_by_distance(nodes, m, 5);
    const Index best = min_periodic_distance(nodes, chosen, m);
    for (Index sigma : candidate_primes(m, 5)) CHECK(min_periodic_distance(nodes, sigma, m) <= best);
  }
}
