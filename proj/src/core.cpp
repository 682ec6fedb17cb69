#include "sfft/core.hpp"

#include <cmath>
#include <numbers>

namespace sfft {

bool is_power_of_two(Index n) noexcept { return n > 0 && (n & (n - 1)) == 0; }

int exact_log2(Index n) {
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("length " + std::to_string(n) + " is not a power of two");
  }
  int level = 0;
  while ((Index{1} << level) < n) ++level;
  return level;
}

Index mod(Index a, Index m) noexcept {
  const Index r = a % m;
  return r < 0 ? r + m : r;
}

double sin_pi_ratio(Index t, Index m) noexcept {
  Index r = mod(t, 2 * m);
  if (r == 0 || r == m) return 0.0;
  double sign = 1.0;
  if (r > m) {
    r -= m;
    sign = -1.0;
  }
  if (2 * r > m) r = m - r;
  return sign * std::sin(std::numbers::pi * static_cast<double>(r) / static_cast<double>(m));
}

Complex unit_root(Index t, Index m) noexcept {
  const Index r = mod(t, m);
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m);
  return {std::cos(angle), std::sin(angle)};
}

ComplexVector periodize(std::span<const Complex> x, int level) {
  const int total = exact_log2(static_cast<Index>(x.size()));
  if (level < 0 || level > total) {
    throw std::invalid_argument("periodization level out of range");
  }
  const std::size_t period = std::size_t{1} << level;
  ComplexVector folded(period, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < x.size(); ++i) folded[i & (period - 1)] += x[i];
  return folded;
}

bool check_no_cancellation(std::span<const Complex> x, double epsilon) {
  const int total = exact_log2(static_cast<Index>(x.size()));
  IndexVector significant;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (std::abs(x[k]) > epsilon) significant.push_back(static_cast<Index>(k));
  }
  ComplexVector current(x.begin(), x.end());
  for (int level = total - 1; level >= 0; --level) {
    const std::size_t half = std::size_t{1} << level;
    for (std::size_t k = 0; k < half; ++k) current[k] += current[k + half];
    current.resize(half);
    for (Index k : significant) {
      if (!(std::abs(current[static_cast<std::size_t>(k) & (half - 1)]) > epsilon)) return false;
    }
  }
  return true;
}

SpectrumOracle::SpectrumOracle(Index length) : length_(length), log2_length_(exact_log2(length)) {
  if (log2_length_ < 1) throw std::invalid_argument("oracle length must be at least 2");
}

Complex SpectrumOracle::fetch(Index k) const {
  if (k < 0 || k >= length_) {
    throw std::invalid_argument("spectrum index " + std::to_string(k) + " out of range");
  }
  accesses_.fetch_add(1, std::memory_order_relaxed);
  return evaluate(k);
}

DenseSpectrumOracle::DenseSpectrumOracle(ComplexVector spectrum)
    : SpectrumOracle(static_cast<Index>(spectrum.size())), spectrum_(std::move(spectrum)) {}

Complex DenseSpectrumOracle::evaluate(Index k) const {
  return spectrum_[static_cast<std::size_t>(k)];
}

SparseSignalOracle::SparseSignalOracle(Index length, IndexVector support, ComplexVector values)
    : SpectrumOracle(length), support_(std::move(support)), values_(std::move(values)) {
  if (support_.size() != values_.size()) {
    throw std::invalid_argument("support and values differ in size");
  }
  for (Index n : support_) {
    if (n < 0 || n >= length) throw std::invalid_argument("support index out of range");
  }
}

Complex SparseSignalOracle::evaluate(Index k) const {
  Complex sum{0.0, 0.0};
  const Index n_total = length();
  for (std::size_t r = 0; r < support_.size(); ++r) {
    // k * n fits: both below 2^31 at the sizes this is used for.
    sum += values_[r] * unit_root(mod(k * support_[r], n_total), n_total);
  }
  return sum;
}

Complex subsample_spectrum(const SpectrumOracle& oracle, int level, Index k) {
  if (level < 0 || level > oracle.log2_length()) {
    throw std::invalid_argument("subsample level out of range");
  }
  if (k < 0 || k >= (Index{1} << level)) {
    throw std::invalid_argument("subsample index out of range");
  }
  return oracle.fetch(k << (oracle.log2_length() - level));
}

void Config::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be positive");
  if (c_max < 1) throw std::invalid_argument("c_max must be at least 1");
  if (!(kappa_threshold > 1.0)) throw std::invalid_argument("kappa_threshold must exceed 1");
  if (c_ladder.empty() || c_ladder.front() != 1) {
    throw std::invalid_argument("row ladder must start at 1");
  }
  for (std::size_t i = 1; i < c_ladder.size(); ++i) {
    if (c_ladder[i] <= c_ladder[i - 1]) throw std::invalid_argument("row ladder must ascend");
  }
  if (known_sparsity && *known_sparsity < 1) {
    throw std::invalid_argument("known sparsity must be positive");
  }
}

ComplexVector SparseResult::expand() const {
  ComplexVector dense(static_cast<std::size_t>(length), Complex{0.0, 0.0});
  for (std::size_t r = 0; r < support.size(); ++r) {
    dense[static_cast<std::size_t>(support[r])] = values[r];
  }
  return dense;
}

}  // namespace sfft
