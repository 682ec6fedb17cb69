#include "sfft/dense_fft.hpp"

#include <utility>

namespace sfft {
namespace {

// In-place iterative decimation-in-time transform. sign = -1 is the forward
// kernel, +1 the unnormalized inverse.
void transform(ComplexVector& a, int sign) {
  const std::size_t n = a.size();
  const int bits = exact_log2(static_cast<Index>(n));
  if (n == 1) return;

  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rev = 0;
    for (int b = 0; b < bits; ++b) rev |= ((i >> b) & 1U) << (bits - 1 - b);
    if (i < rev) std::swap(a[i], a[rev]);
  }

  ComplexVector twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const Complex w = unit_root(static_cast<Index>(k), static_cast<Index>(n));
    twiddle[k] = sign < 0 ? w : std::conj(w);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex t = twiddle[k * stride] * a[start + k + half];
        a[start + k + half] = a[start + k] - t;
        a[start + k] += t;
      }
    }
  }
}

}  // namespace

ComplexVector fft(std::span<const Complex> v) {
  ComplexVector out(v.begin(), v.end());
  transform(out, -1);
  return out;
}

ComplexVector ifft(std::span<const Complex> v) {
  ComplexVector out(v.begin(), v.end());
  transform(out, +1);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& value : out) value *= scale;
  return out;
}

}  // namespace sfft
