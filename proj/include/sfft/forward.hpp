#ifndef SFFT_FORWARD_HPP
#define SFFT_FORWARD_HPP

#include <span>

#include "sfft/core.hpp"

namespace sfft {

/// Oracle over w = N * J'_N x, with (J'_N x)_k = x_{-k mod N}. Since
/// F_N^{-1} = (1/N) J'_N F_N, w is the spectrum of F_N x, so the inverse
/// reconstruction run on this oracle yields the forward transform.
class FlipOracle final : public SpectrumOracle {
 public:
  explicit FlipOracle(ComplexVector signal);

 protected:
  Complex evaluate(Index k) const override;

 private:
  ComplexVector signal_;
};

/// Sparse spectrum of a dense vector whose DFT is sparse.
SparseResult run_sparse_fft(std::span<const Complex> signal, const Config& config);

}  // namespace sfft

#endif  // SFFT_FORWARD_HPP
