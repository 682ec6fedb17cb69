#ifndef SFFT_CORE_HPP
#define SFFT_CORE_HPP

#include <atomic>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfft {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using Index = std::int64_t;
using IndexVector = std::vector<Index>;

/// Raised when a numerical object would contain colliding nodes (two
/// stretched support indices land on the same residue).
class DegenerateSpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the restricted least-squares solver when R has a diagonal entry
/// below the relative rank tolerance.
class IllConditionedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_power_of_two(Index n) noexcept;

/// Exponent J with n == 2^J. Throws std::invalid_argument otherwise.
int exact_log2(Index n);

/// Canonical residue of a modulo m in [0, m).
Index mod(Index a, Index m) noexcept;

/// sin(pi * t / m) evaluated after reducing t modulo 2m, so arguments stay
/// small and multiples of m give an exact zero.
double sin_pi_ratio(Index t, Index m) noexcept;

/// omega_m^t = exp(-2 pi i t / m), with t reduced modulo m first.
Complex unit_root(Index t, Index m) noexcept;

/// Folds x (length 2^J) with period 2^level and sums the overlaps.
ComplexVector periodize(std::span<const Complex> x, int level);

/// True iff every entry with modulus above epsilon stays above epsilon in
/// each coarser periodization.
bool check_no_cancellation(std::span<const Complex> x, double epsilon);

/// Source of Fourier coefficients of a length-2^J vector. Every fetch is
/// counted, so the counter is the number of spectrum values an algorithm
/// actually looked at.
class SpectrumOracle {
 public:
  explicit SpectrumOracle(Index length);
  virtual ~SpectrumOracle() = default;

  SpectrumOracle(const SpectrumOracle&) = delete;
  SpectrumOracle& operator=(const SpectrumOracle&) = delete;

  Index length() const noexcept { return length_; }
  int log2_length() const noexcept { return log2_length_; }

  Complex fetch(Index k) const;

  std::uint64_t access_count() const noexcept {
    return accesses_.load(std::memory_order_relaxed);
  }

 protected:
  virtual Complex evaluate(Index k) const = 0;

 private:
  Index length_;
  int log2_length_;
  mutable std::atomic<std::uint64_t> accesses_{0};
};

/// Holds the full spectrum in memory.
class DenseSpectrumOracle final : public SpectrumOracle {
 public:
  explicit DenseSpectrumOracle(ComplexVector spectrum);

 protected:
  Complex evaluate(Index k) const override;

 private:
  ComplexVector spectrum_;
};

/// Evaluates the spectrum of a sparse vector on demand, O(M) per fetch. The
/// dense spectrum never exists in memory.
class SparseSignalOracle final : public SpectrumOracle {
 public:
  SparseSignalOracle(Index length, IndexVector support, ComplexVector values);

 protected:
  Complex evaluate(Index k) const override;

 private:
  IndexVector support_;
  ComplexVector values_;
};

/// x-hat^(level)_k, i.e. oracle.fetch(2^(J-level) * k).
Complex subsample_spectrum(const SpectrumOracle& oracle, int level, Index k);

enum class RowPolicy { simple_bound, gershgorin_adaptive };
enum class SigmaPolicy { prime_score, distance_only };

struct Config {
  double epsilon = 1e-8;
  int c_max = 2;
  RowPolicy row_policy = RowPolicy::simple_bound;
  double kappa_threshold = 10.0;
  std::vector<int> c_ladder{1, 2, 5};
  SigmaPolicy sigma_policy = SigmaPolicy::prime_score;
  std::optional<Index> known_sparsity;
  std::uint64_t rng_seed = 0;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

enum class LevelBranch { initial, direct, dense, sparse, sparse_fallback_dense };

/// The Vandermonde factor used at one sparse level.
struct VandermondeSpec {
  int level = 0;
  Index sigma = 1;
  IndexVector nodes;
  Index rows = 0;

  Index modulus() const noexcept { return Index{1} << level; }
};

struct LevelDiagnostic {
  int level = 0;
  Index sparsity = 0;
  LevelBranch branch = LevelBranch::dense;
  Index sigma = 0;
  Index rows = 0;
  bool shortcut = false;
  bool retried = false;
  bool row_warning = false;
  std::optional<double> condition_bound;
  double residual = 0.0;
  std::uint64_t fetches = 0;
  std::optional<VandermondeSpec> spec;
};

struct SparseResult {
  Index length = 0;
  IndexVector support;
  ComplexVector values;
  std::uint64_t accesses = 0;
  std::vector<LevelDiagnostic> levels;

  Index sparsity() const noexcept { return static_cast<Index>(support.size()); }

  /// Dense length-N vector with the recovered entries in place.
  ComplexVector expand() const;
};

}  // namespace sfft

#endif  // SFFT_CORE_HPP
