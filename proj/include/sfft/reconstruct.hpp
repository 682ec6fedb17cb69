#ifndef SFFT_RECONSTRUCT_HPP
#define SFFT_RECONSTRUCT_HPP

#include <optional>

#include "sfft/core.hpp"

namespace sfft {

/// Parameters of the last sparse level, reused while the sparsity is stable.
struct ParameterCache {
  int level = 0;
  Index sparsity = 0;
  Index sigma = 1;
  Index rows = 0;
};

/// Support and values of the periodization x^(level), restricted to its
/// significant entries.
struct LevelState {
  int level = 0;
  IndexVector support;
  ComplexVector values;
  std::optional<ParameterCache> cache;

  Index sparsity() const noexcept { return static_cast<Index>(support.size()); }
  Index modulus() const noexcept { return Index{1} << level; }

  /// Dense length-2^level vector.
  ComplexVector expand() const;
};

struct LevelStep {
  LevelState state;
  LevelDiagnostic diagnostic;
};

struct SparseParameters {
  Index sigma = 1;
  Index rows = 0;
  bool shortcut = false;
  bool row_warning = false;
};

/// Fetches x-hat_0. Returns nullopt when its modulus is below epsilon (the
/// reconstruction is the zero vector), otherwise the level-0 state.
std::optional<LevelState> init_state(const SpectrumOracle& oracle, double epsilon);

/// One level via a dense inverse FFT of the 2^j odd-index samples.
LevelStep dense_level_step(const LevelState& state, const SpectrumOracle& oracle, double epsilon);

/// Stretch parameter and row count for a sparse level. When the sparsity
/// did not change since the cached level, sigma is doubled and the row count
/// kept; otherwise both are selected afresh.
SparseParameters choose_parameters(const LevelState& state, const Config& config);

/// One level via the restricted Vandermonde system. A rank-deficient solve is
/// retried once with twice the rows, then replaced by dense_level_step.
LevelStep sparse_level_step(const LevelState& state, const SpectrumOracle& oracle,
                            const Config& config);

/// Full reconstruction for unknown sparsity. Delegates to run_known_sparsity
/// when config.known_sparsity is set.
SparseResult run_sparse_ifft(const SpectrumOracle& oracle, const Config& config);

/// Warm start at level floor(log2 M) + 1 from a dense inverse FFT, dense
/// levels while cancellation keeps the sparsity below M, then sparse levels.
/// Throws std::invalid_argument when M^2 >= N.
SparseResult run_known_sparsity(const SpectrumOracle& oracle, Index sparsity, const Config& config);

}  // namespace sfft

#endif  // SFFT_RECONSTRUCT_HPP
