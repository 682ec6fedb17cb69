#include "sfft/reconstruct.hpp"

#include <algorithm>
#include <cmath>

#include "sfft/dense_fft.hpp"
#include "sfft/row_count.hpp"
#include "sfft/sigma_select.hpp"
#include "sfft/vandermonde.hpp"

namespace sfft {
namespace {

// Spectrum index of the odd sample x-hat^(j+1)_{2h+1} in the length-N spectrum.
Index odd_sample_index(const SpectrumOracle& oracle, int level, Index h) {
  const int shift = oracle.log2_length() - level - 1;
  return (2 * h + 1) << shift;
}

// Combines the even half x0 and odd half x1 = previous - x0 on the candidate
// support I u (I + 2^j) and drops entries of modulus below epsilon.
LevelState split_and_prune(const LevelState& state, std::span<const Complex> even_half,
                           double epsilon) {
  LevelState next;
  next.level = state.level + 1;
  const Index half = state.modulus();
  const std::size_t count = state.support.size();
  next.support.reserve(2 * count);
  next.values.reserve(2 * count);
  for (std::size_t r = 0; r < count; ++r) {
    if (std::abs(even_half[r]) >= epsilon) {
      next.support.push_back(state.support[r]);
      next.values.push_back(even_half[r]);
    }
  }
  for (std::size_t r = 0; r < count; ++r) {
    const Complex odd = state.values[r] - even_half[r];
    if (std::abs(odd) >= epsilon) {
      next.support.push_back(state.support[r] + half);
      next.values.push_back(odd);
    }
  }
  return next;
}

void check_state(const LevelState& state, const SpectrumOracle& oracle) {
  if (state.level < 0 || state.level >= oracle.log2_length()) {
    throw std::invalid_argument("no finer level left to compute");
  }
  if (state.support.size() != state.values.size()) {
    throw std::invalid_argument("support and values differ in size");
  }
}

// x^(level) from a dense inverse FFT of the 2^level subsampled spectrum values.
LevelStep direct_level(const SpectrumOracle& oracle, int level, double epsilon) {
  const Index width = Index{1} << level;
  ComplexVector samples(static_cast<std::size_t>(width));
  for (Index k = 0; k < width; ++k) samples[k] = subsample_spectrum(oracle, level, k);
  const ComplexVector periodized = ifft(samples);

  LevelStep step;
  step.state.level = level;
  for (Index k = 0; k < width; ++k) {
    if (std::abs(periodized[k]) >= epsilon) {
      step.state.support.push_back(k);
      step.state.values.push_back(periodized[k]);
    }
  }
  step.diagnostic.level = level;
  step.diagnostic.sparsity = step.state.sparsity();
  step.diagnostic.branch = LevelBranch::direct;
  step.diagnostic.fetches = static_cast<std::uint64_t>(width);
  return step;
}

// The doubled sigma is even, so it keeps the nodes apart only if no two of
// them agree modulo half the modulus (an entry that split while another
// vanished keeps the count but breaks this).
bool distinct_residues(std::span<const Index> support, Index half) {
  std::vector<Index> residues;
  residues.reserve(support.size());
  for (Index n : support) residues.push_back(n % half);
  std::sort(residues.begin(), residues.end());
  return std::adjacent_find(residues.begin(), residues.end()) == residues.end();
}

SparseResult finish(const std::optional<LevelState>& state, const SpectrumOracle& oracle,
                    std::uint64_t start_count, std::vector<LevelDiagnostic> levels) {
  SparseResult result;
  result.length = oracle.length();
  if (state) {
    result.support = state->support;
    result.values = state->values;
  }
  result.accesses = oracle.access_count() - start_count;
  result.levels = std::move(levels);
  return result;
}

void run_levels(std::optional<LevelState>& state, const SpectrumOracle& oracle, const Config& config,
                bool always_sparse, std::vector<LevelDiagnostic>& levels) {
  const int total = oracle.log2_length();
  while (state && state->level < total && state->sparsity() > 0) {
    const Index m = state->sparsity();
    const bool dense = !always_sparse && m * m >= state->modulus();
    LevelStep step = dense ? dense_level_step(*state, oracle, config.epsilon)
                           : sparse_level_step(*state, oracle, config);
    levels.push_back(std::move(step.diagnostic));
    state = std::move(step.state);
  }
  if (state && state->sparsity() == 0) state.reset();
}

}  // namespace

ComplexVector LevelState::expand() const {
  ComplexVector dense(static_cast<std::size_t>(modulus()), Complex{0.0, 0.0});
  for (std::size_t r = 0; r < support.size(); ++r) dense[static_cast<std::size_t>(support[r])] = values[r];
  return dense;
}

std::optional<LevelState> init_state(const SpectrumOracle& oracle, double epsilon) {
  const Complex dc = oracle.fetch(0);
  if (std::abs(dc) < epsilon) return std::nullopt;
  LevelState state;
  state.level = 0;
  state.support = {0};
  state.values = {dc};
  return state;
}

LevelStep dense_level_step(const LevelState& state, const SpectrumOracle& oracle, double epsilon) {
  check_state(state, oracle);
  const Index half = state.modulus();
  ComplexVector samples(static_cast<std::size_t>(half));
  for (Index p = 0; p < half; ++p) samples[p] = oracle.fetch(odd_sample_index(oracle, state.level, p));

  const ComplexVector previous = state.expand();
  const ComplexVector inverse = ifft(samples);
  ComplexVector even_half(state.support.size());
  for (std::size_t r = 0; r < state.support.size(); ++r) {
    const Index k = state.support[r];
    const Complex twiddle = std::conj(unit_root(k, 2 * half));
    even_half[r] = 0.5 * (twiddle * inverse[k] + previous[k]);
  }

  LevelStep step;
  step.state = split_and_prune(state, even_half, epsilon);
  step.diagnostic.level = state.level;
  step.diagnostic.sparsity = state.sparsity();
  step.diagnostic.branch = LevelBranch::dense;
  step.diagnostic.fetches = static_cast<std::uint64_t>(half);
  return step;
}

SparseParameters choose_parameters(const LevelState& state, const Config& config) {
  const Index modulus = state.modulus();
  const Index sparsity = state.sparsity();
  SparseParameters params;
  if (state.cache && state.cache->level + 1 == state.level && state.cache->sparsity == sparsity &&
      distinct_residues(state.support, modulus / 2)) {
    params.sigma = mod(2 * state.cache->sigma, modulus);
    params.rows = state.cache->rows;
    params.shortcut = true;
    return params;
  }

  const Index budget = candidate_budget(sparsity);
  params.sigma = config.sigma_policy == SigmaPolicy::prime_score
                     ? select_sigma(state.support, modulus, budget)
                     : select_sigma_by_distance(state.support, modulus, budget);
  if (config.row_policy == RowPolicy::simple_bound) {
    const Index distance = min_periodic_distance(state.support, params.sigma, modulus);
    params.rows = simple_row_count(sparsity, distance, modulus, config.c_max);
  } else {
    const RowChoice choice = adaptive_row_count(state.support, params.sigma, modulus,
                                                config.kappa_threshold, config.c_ladder);
    params.rows = choice.rows;
    params.row_warning = choice.warning;
  }
  return params;
}

LevelStep sparse_level_step(const LevelState& state, const SpectrumOracle& oracle,
                            const Config& config) {
  check_state(state, oracle);
  if (state.sparsity() == 0 || state.sparsity() > state.modulus()) {
    throw std::invalid_argument("sparse step needs 1 <= M <= 2^j");
  }
  const Index modulus = state.modulus();
  const SparseParameters params = choose_parameters(state, config);

  VandermondeSpec spec{state.level, params.sigma, state.support, params.rows};
  ComplexVector samples;
  auto fetch_rows = [&](Index rows) {
    for (Index p = static_cast<Index>(samples.size()); p < rows; ++p) {
      samples.push_back(oracle.fetch(odd_sample_index(oracle, state.level, mod(params.sigma * p, modulus))));
    }
  };

  LevelDiagnostic diagnostic;
  diagnostic.level = state.level;
  diagnostic.sparsity = state.sparsity();
  diagnostic.branch = LevelBranch::sparse;
  diagnostic.sigma = params.sigma;
  diagnostic.shortcut = params.shortcut;
  diagnostic.row_warning = params.row_warning;

  std::optional<RestrictedSolution> solution;
  for (int attempt = 0; attempt < 2 && !solution; ++attempt) {
    fetch_rows(spec.rows);
    try {
      solution = solve_restricted_system(spec, state.values, samples);
    } catch (const IllConditionedError&) {
      if (attempt > 0 || spec.rows == modulus) break;
      spec.rows = std::min(2 * spec.rows, modulus);
      diagnostic.retried = true;
    }
  }

  if (!solution) {
    LevelStep fallback = dense_level_step(state, oracle, config.epsilon);
    fallback.diagnostic.branch = LevelBranch::sparse_fallback_dense;
    fallback.diagnostic.sigma = params.sigma;
    fallback.diagnostic.rows = spec.rows;
    fallback.diagnostic.retried = diagnostic.retried;
    fallback.diagnostic.fetches += samples.size();
    return fallback;
  }

  diagnostic.rows = spec.rows;
  diagnostic.residual = solution->residual;
  diagnostic.fetches = samples.size();
  diagnostic.condition_bound = gershgorin_bound(spec);

  LevelStep step;
  step.state = split_and_prune(state, solution->even_half, config.epsilon);
  step.state.cache = ParameterCache{state.level, state.sparsity(), params.sigma, spec.rows};
  diagnostic.spec = std::move(spec);
  step.diagnostic = std::move(diagnostic);
  return step;
}

SparseResult run_sparse_ifft(const SpectrumOracle& oracle, const Config& config) {
  config.validate();
  if (config.known_sparsity) return run_known_sparsity(oracle, *config.known_sparsity, config);

  const std::uint64_t start = oracle.access_count();
  std::vector<LevelDiagnostic> levels;
  std::optional<LevelState> state = init_state(oracle, config.epsilon);
  LevelDiagnostic init;
  init.level = 0;
  init.branch = LevelBranch::initial;
  init.fetches = 1;
  levels.push_back(init);

  run_levels(state, oracle, config, false, levels);
  return finish(state, oracle, start, std::move(levels));
}

SparseResult run_known_sparsity(const SpectrumOracle& oracle, Index sparsity, const Config& config) {
  config.validate();
  if (sparsity < 1) throw std::invalid_argument("sparsity must be positive");
  const Index n = oracle.length();
  if (sparsity * sparsity >= n) {
    throw std::invalid_argument("known-sparsity start needs M^2 < N; use a dense inverse FFT");
  }
  const std::uint64_t start = oracle.access_count();
  int level = 0;
  while ((Index{1} << level) <= sparsity) ++level;  // floor(log2 M) + 1

  std::vector<LevelDiagnostic> levels;
  std::optional<LevelState> state;
  // Fewer than M entries means some of them merged or cancelled in the fold.
  // Pruned indices cannot reappear in a restricted update, so the next
  // periodizations are computed directly until all M entries are visible.
  while (true) {
    LevelStep step = direct_level(oracle, level, config.epsilon);
    levels.push_back(std::move(step.diagnostic));
    state = std::move(step.state);
    if (state->sparsity() >= sparsity || level == oracle.log2_length()) break;
    ++level;
  }
  if (state->sparsity() == 0) state.reset();

  run_levels(state, oracle, config, true, levels);
  return finish(state, oracle, start, std::move(levels));
}

}  // namespace sfft
