#ifndef SFFT_DENSE_FFT_HPP
#define SFFT_DENSE_FFT_HPP

#include <span>

#include "sfft/core.hpp"

namespace sfft {

/// Radix-2 DFT, result[k] = sum_m v[m] * exp(-2 pi i k m / n).
/// Throws std::invalid_argument for lengths that are not a power of two.
ComplexVector fft(std::span<const Complex> v);

/// Inverse of fft, including the 1/n factor.
ComplexVector ifft(std::span<const Complex> v);

}  // namespace sfft

#endif  // SFFT_DENSE_FFT_HPP
