#include "sfft/forward.hpp"

#include "sfft/reconstruct.hpp"

namespace sfft {

FlipOracle::FlipOracle(ComplexVector signal)
    : SpectrumOracle(static_cast<Index>(signal.size())), signal_(std::move(signal)) {}

Complex FlipOracle::evaluate(Index k) const {
  const Index n = length();
  return static_cast<double>(n) * signal_[static_cast<std::size_t>(mod(-k, n))];
}

SparseResult run_sparse_fft(std::span<const Complex> signal, const Config& config) {
  const FlipOracle oracle(ComplexVector(signal.begin(), signal.end()));
  return run_sparse_ifft(oracle, config);
}

}  // namespace sfft
