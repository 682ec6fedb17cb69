#include "sfft/bench.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <set>
#include <thread>

#include <Eigen/SVD>

#include "sfft/reconstruct.hpp"
#include "sfft/vandermonde.hpp"

namespace sfft::bench {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void set_full_precision(std::ostream& out) {
  out.precision(std::numeric_limits<double>::max_digits10);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t value) noexcept {
  value += 0x9e3779b97f4a7c15ULL;
  value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ULL;
  value = (value ^ (value >> 27)) * 0x94d049bb133111ebULL;
  return value ^ (value >> 31);
}

std::uint64_t trial_seed(std::uint64_t base, int log2_length, Index sparsity, Index trial) noexcept {
  std::uint64_t s = mix_seed(base);
  s = mix_seed(s ^ static_cast<std::uint64_t>(log2_length));
  s = mix_seed(s ^ static_cast<std::uint64_t>(sparsity));
  return mix_seed(s ^ static_cast<std::uint64_t>(trial));
}

double Rng::uniform() noexcept {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) noexcept {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = 0;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % bound;
}

ComplexVector Instance::expand() const {
  ComplexVector dense(static_cast<std::size_t>(length()), Complex{0.0, 0.0});
  for (std::size_t r = 0; r < support.size(); ++r) dense[static_cast<std::size_t>(support[r])] = values[r];
  return dense;
}

Instance gen_instance(int log2_length, Index sparsity, std::uint64_t seed) {
  if (log2_length < 1 || log2_length > 40) throw std::invalid_argument("J out of range");
  const Index n = Index{1} << log2_length;
  if (sparsity < 1 || sparsity > n) throw std::invalid_argument("sparsity must lie in [1, N]");

  Instance instance;
  instance.log2_length = log2_length;
  instance.sparsity = sparsity;
  instance.seed = seed;

  Rng rng(seed);
  std::set<Index> chosen;
  for (Index top = n - sparsity; top < n; ++top) {
    const auto pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(top + 1)));
    if (!chosen.insert(pick).second) chosen.insert(top);
  }
  instance.support.assign(chosen.begin(), chosen.end());

  instance.values.reserve(instance.support.size());
  for (std::size_t r = 0; r < instance.support.size(); ++r) {
    const double modulus = rng.uniform(1.0, 2.0);
    const double phase = rng.uniform(0.0, std::numbers::pi / 2);
    instance.values.push_back(std::polar(modulus, phase));
  }
  return instance;
}

bool recovery_matches(const Instance& instance, const SparseResult& result, double tolerance) {
  if (result.support != instance.support) return false;
  for (std::size_t r = 0; r < instance.values.size(); ++r) {
    const double error = std::abs(result.values[r] - instance.values[r]);
    if (!(error <= tolerance * std::abs(instance.values[r]))) return false;
  }
  return true;
}

std::vector<double> singular_values(const VandermondeSpec& spec) {
  const ComplexMatrix v = build_vandermonde(spec);
  Eigen::MatrixXcd dense(v.rows(), v.cols());
  for (Index c = 0; c < v.cols(); ++c) {
    for (Index r = 0; r < v.rows(); ++r) dense(r, c) = v(r, c);
  }
  const Eigen::BDCSVD<Eigen::MatrixXcd> svd(dense);
  const auto& values = svd.singularValues();
  return {values.data(), values.data() + values.size()};
}

double true_condition_number(const VandermondeSpec& spec) {
  const auto values = singular_values(spec);
  const double smallest = values.back();
  if (!(smallest > 0.0)) return std::numeric_limits<double>::infinity();
  return values.front() / smallest;
}

double mean_true_condition(const SparseResult& result) {
  double sum = 0.0;
  Index count = 0;
  for (const auto& level : result.levels) {
    if (!level.spec) continue;
    sum += true_condition_number(*level.spec);
    ++count;
  }
  return count == 0 ? kNaN : sum / static_cast<double>(count);
}

TrialRecord run_trial(int log2_length, Index sparsity, const Config& config, std::uint64_t seed,
                      bool measure_condition, SparseResult* result_out) {
  const Instance instance = gen_instance(log2_length, sparsity, seed);
  const SparseSignalOracle oracle(instance.length(), instance.support, instance.values);

  const auto start = std::chrono::steady_clock::now();
  SparseResult result = run_sparse_ifft(oracle, config);
  const auto stop = std::chrono::steady_clock::now();

  TrialRecord record;
  record.log2_length = log2_length;
  record.sparsity = sparsity;
  record.c_max = config.c_max;
  record.seed = seed;
  record.success = recovery_matches(instance, result);
  record.mean_condition = measure_condition ? mean_true_condition(result) : kNaN;
  record.accesses = result.accesses;
  record.elapsed = stop - start;
  if (result_out) *result_out = std::move(result);
  return record;
}

void parallel_for(Index count, unsigned threads, const std::function<void(Index)>& body) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<Index>(threads, std::max<Index>(count, 1)));
  if (threads <= 1) {
    for (Index i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<Index> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (Index i = next++; i < count; i = next++) body(i);
    });
  }
}

std::vector<ErrorRateRow> run_error_rate(int log2_length, std::span<const Index> sparsities, int c_max,
                                         Index trials, const BenchOptions& options) {
  Config config = options.config;
  config.c_max = c_max;
  std::vector<ErrorRateRow> rows;
  for (Index sparsity : sparsities) {
    std::vector<char> success(static_cast<std::size_t>(trials), 0);
    parallel_for(trials, options.threads, [&](Index t) {
      const auto seed = trial_seed(options.seed, log2_length, sparsity, t);
      success[t] = run_trial(log2_length, sparsity, config, seed, false).success ? 1 : 0;
    });
    ErrorRateRow row;
    row.sparsity = sparsity;
    row.trials = trials;
    row.failures = trials - std::count(success.begin(), success.end(), 1);
    row.rate_percent = trials == 0 ? 0.0 : 100.0 * static_cast<double>(row.failures) / static_cast<double>(trials);
    rows.push_back(row);
  }
  return rows;
}

std::vector<ConditionRow> run_condition_table(std::span<const int> log2_lengths,
                                              std::span<const Index> sparsities, int c_max,
                                              Index trials, const BenchOptions& options) {
  Config config = options.config;
  config.c_max = c_max;
  std::vector<ConditionRow> rows;
  for (int log2_length : log2_lengths) {
    for (Index sparsity : sparsities) {
      std::vector<double> kappa(static_cast<std::size_t>(trials), kNaN);
      std::vector<double> bound(static_cast<std::size_t>(trials), kNaN);
      parallel_for(trials, options.threads, [&](Index t) {
        const auto seed = trial_seed(options.seed, log2_length, sparsity, t);
        SparseResult result;
        kappa[t] = run_trial(log2_length, sparsity, config, seed, true, &result).mean_condition;
        double sum = 0.0;
        Index count = 0;
        for (const auto& level : result.levels) {
          if (!level.spec) continue;
          // no Gershgorin bound means it is not finite
          sum += level.condition_bound.value_or(std::numeric_limits<double>::infinity());
          ++count;
        }
        if (count > 0) bound[t] = sum / static_cast<double>(count);
      });

      ConditionRow row;
      row.log2_length = log2_length;
      row.sparsity = sparsity;
      double kappa_sum = 0.0;
      double bound_sum = 0.0;
      for (std::size_t t = 0; t < kappa.size(); ++t) {
        if (std::isnan(kappa[t])) continue;
        kappa_sum += kappa[t];
        bound_sum += bound[t];
        ++row.runs;
      }
      row.mean_kappa = row.runs ? kappa_sum / static_cast<double>(row.runs) : kNaN;
      row.mean_gershgorin = row.runs ? bound_sum / static_cast<double>(row.runs) : kNaN;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<ScalingRow> run_scaling(std::span<const int> log2_lengths, std::span<const Index> sparsities,
                                    int c_max, Index trials, const BenchOptions& options) {
  Config config = options.config;
  config.c_max = c_max;
  std::vector<ScalingRow> rows;
  for (Index sparsity : sparsities) {
    for (int log2_length : log2_lengths) {
      std::vector<TrialRecord> records(static_cast<std::size_t>(trials));
      // Sequential on purpose: elapsed times are measured per trial.
      for (Index t = 0; t < trials; ++t) {
        records[t] = run_trial(log2_length, sparsity, config,
                               trial_seed(options.seed, log2_length, sparsity, t), false);
      }
      ScalingRow row;
      row.log2_length = log2_length;
      row.sparsity = sparsity;
      for (const auto& record : records) {
        row.mean_accesses += static_cast<double>(record.accesses);
        row.mean_elapsed_us += record.elapsed.count() * 1e6;
      }
      if (trials > 0) {
        row.mean_accesses /= static_cast<double>(trials);
        row.mean_elapsed_us /= static_cast<double>(trials);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_csv(std::ostream& out, std::span<const ErrorRateRow> rows) {
  set_full_precision(out);
  out << "M,failures,trials,rate_percent\n";
  for (const auto& row : rows) {
    out << row.sparsity << ',' << row.failures << ',' << row.trials << ',' << row.rate_percent << '\n';
  }
}

void write_csv(std::ostream& out, std::span<const ConditionRow> rows) {
  set_full_precision(out);
  out << "J,M,mean_kappa,mean_gershgorin_bound,runs\n";
  for (const auto& row : rows) {
    out << row.log2_length << ',' << row.sparsity << ',' << row.mean_kappa << ','
        << row.mean_gershgorin << ',' << row.runs << '\n';
  }
}

void write_csv(std::ostream& out, std::span<const ScalingRow> rows) {
  set_full_precision(out);
  out << "J,M,mean_accesses,mean_elapsed_us\n";
  for (const auto& row : rows) {
    out << row.log2_length << ',' << row.sparsity << ',' << row.mean_accesses << ','
        << row.mean_elapsed_us << '\n';
  }
}

void write_csv(std::ostream& out, const SparseResult& result) {
  set_full_precision(out);
  out << "index,re,im\n";
  for (std::size_t r = 0; r < result.support.size(); ++r) {
    out << result.support[r] << ',' << result.values[r].real() << ',' << result.values[r].imag() << '\n';
  }
}

ComplexVector read_dense_vector(std::istream& in) {
  Index n = 0;
  if (!(in >> n) || !is_power_of_two(n)) {
    throw std::runtime_error("vector file must start with a power-of-two length");
  }
  ComplexVector values(static_cast<std::size_t>(n));
  for (auto& value : values) {
    double re = 0.0;
    double im = 0.0;
    if (!(in >> re >> im)) throw std::runtime_error("vector file ended early");
    if (!std::isfinite(re) || !std::isfinite(im)) throw std::runtime_error("non-finite entry");
    value = {re, im};
  }
  return values;
}

void write_dense_vector(std::ostream& out, std::span<const Complex> values) {
  set_full_precision(out);
  out << values.size() << '\n';
  for (const auto& value : values) out << value.real() << ' ' << value.imag() << '\n';
}

void write_sparse_vector(std::ostream& out, const SparseResult& result) {
  set_full_precision(out);
  for (std::size_t r = 0; r < result.support.size(); ++r) {
    out << result.support[r] << ' ' << result.values[r].real() << ' ' << result.values[r].imag() << '\n';
  }
}

}  // namespace sfft::bench
