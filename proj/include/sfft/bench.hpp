#ifndef SFFT_BENCH_HPP
#define SFFT_BENCH_HPP

#include <chrono>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>

#include "sfft/core.hpp"

namespace sfft::bench {

/// splitmix64 finalizer, used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t value) noexcept;

/// Seed of trial `trial` at (J, M): successive splitmix64 rounds over the base
/// seed xor'ed with J, M and the trial index. Independent of c_max, so sweeps
/// over c_max see identical instances.
std::uint64_t trial_seed(std::uint64_t base, int log2_length, Index sparsity, Index trial) noexcept;

/// mt19937_64 with distributions built from raw 64-bit draws, so streams are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::mt19937_64 engine_;
};

struct Instance {
  int log2_length = 0;
  Index sparsity = 0;
  std::uint64_t seed = 0;
  IndexVector support;  // ascending
  ComplexVector values;

  Index length() const noexcept { return Index{1} << log2_length; }
  ComplexVector expand() const;
};

/// Support drawn uniformly without replacement (Floyd), values with modulus
/// in [1, 2] and phase in [0, pi/2]. Requires 1 <= M <= 2^J.
Instance gen_instance(int log2_length, Index sparsity, std::uint64_t seed);

struct TrialRecord {
  int log2_length = 0;
  Index sparsity = 0;
  int c_max = 0;
  std::uint64_t seed = 0;
  bool success = false;
  double mean_condition = 0.0;  // NaN when not measured or no sparse level ran
  std::uint64_t accesses = 0;
  std::chrono::duration<double> elapsed{};
};

/// Exact support equality and every value within `tolerance` relative error.
bool recovery_matches(const Instance& instance, const SparseResult& result, double tolerance = 1e-6);

/// sigma_max / sigma_min of the explicit Vandermonde matrix.
double true_condition_number(const VandermondeSpec& spec);
std::vector<double> singular_values(const VandermondeSpec& spec);

/// Mean true condition number over the sparse levels of a run; NaN if none.
double mean_true_condition(const SparseResult& result);

/// Generates one instance, reconstructs it from a sparse-evaluation oracle and
/// scores the result.
TrialRecord run_trial(int log2_length, Index sparsity, const Config& config, std::uint64_t seed,
                      bool measure_condition, SparseResult* result_out = nullptr);

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 picks the
/// hardware concurrency). Results must be written to per-index slots.
void parallel_for(Index count, unsigned threads, const std::function<void(Index)>& body);

struct BenchOptions {
  Config config;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct ErrorRateRow {
  Index sparsity = 0;
  Index failures = 0;
  Index trials = 0;
  double rate_percent = 0.0;
};

std::vector<ErrorRateRow> run_error_rate(int log2_length, std::span<const Index> sparsities, int c_max,
                                         Index trials, const BenchOptions& options);

struct ConditionRow {
  int log2_length = 0;
  Index sparsity = 0;
  double mean_kappa = 0.0;       // mean over trials of the per-run average true kappa
  double mean_gershgorin = 0.0;  // same protocol with the Gershgorin bound (inf if absent)
  Index runs = 0;                // trials that contributed a sparse level
};

std::vector<ConditionRow> run_condition_table(std::span<const int> log2_lengths,
                                              std::span<const Index> sparsities, int c_max,
                                              Index trials, const BenchOptions& options);

struct ScalingRow {
  int log2_length = 0;
  Index sparsity = 0;
  double mean_accesses = 0.0;
  double mean_elapsed_us = 0.0;
};

std::vector<ScalingRow> run_scaling(std::span<const int> log2_lengths, std::span<const Index> sparsities,
                                    int c_max, Index trials, const BenchOptions& options);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

void write_csv(std::ostream& out, std::span<const ErrorRateRow> rows);
void write_csv(std::ostream& out, std::span<const ConditionRow> rows);
void write_csv(std::ostream& out, std::span<const ScalingRow> rows);
/// index,re,im
void write_csv(std::ostream& out, const SparseResult& result);

/// Plain-text dense vector: first line N, then one "re im" pair per line.
ComplexVector read_dense_vector(std::istream& in);
void write_dense_vector(std::ostream& out, std::span<const Complex> values);
/// Sparse output: one "index re im" line per recovered entry.
void write_sparse_vector(std::ostream& out, const SparseResult& result);

}  // namespace sfft::bench

#endif  // SFFT_BENCH_HPP
