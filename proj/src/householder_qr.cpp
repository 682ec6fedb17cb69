#include "sfft/householder_qr.hpp"

#include <algorithm>
#include <cmath>

namespace sfft {

ComplexVector ComplexMatrix::apply(std::span<const Complex> u) const {
  if (static_cast<Index>(u.size()) != cols_) throw std::invalid_argument("dimension mismatch");
  ComplexVector out(static_cast<std::size_t>(rows_), Complex{0.0, 0.0});
  for (Index c = 0; c < cols_; ++c) {
    const auto col = column(c);
    const Complex uc = u[static_cast<std::size_t>(c)];
    for (Index r = 0; r < rows_; ++r) out[static_cast<std::size_t>(r)] += col[static_cast<std::size_t>(r)] * uc;
  }
  return out;
}

LeastSquaresSolution solve_least_squares(ComplexMatrix a, std::span<const Complex> rhs,
                                         double rank_tolerance) {
  const Index m = a.rows();
  const Index n = a.cols();
  if (n == 0 || m < n) throw std::invalid_argument("least squares needs rows >= cols >= 1");
  if (static_cast<Index>(rhs.size()) != m) throw std::invalid_argument("rhs length mismatch");

  ComplexVector b(rhs.begin(), rhs.end());
  ComplexVector diag(static_cast<std::size_t>(n));
  ComplexVector v(static_cast<std::size_t>(m));

  for (Index k = 0; k < n; ++k) {
    auto col = a.column(k);
    double norm2 = 0.0;
    for (Index i = k; i < m; ++i) norm2 += std::norm(col[i]);
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) {
      diag[k] = 0.0;
      continue;
    }
    // alpha = -e^{i arg x_0} ||x|| keeps v_0 = x_0 - alpha free of cancellation.
    const Complex x0 = col[k];
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0, 0.0};
    const Complex alpha = -phase * norm;

    double vnorm2 = 0.0;
    for (Index i = k; i < m; ++i) {
      v[i] = col[i];
      if (i == k) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    diag[k] = alpha;
    if (vnorm2 == 0.0) continue;

    // H = I - 2 v v^H / (v^H v), applied to the trailing columns and to b.
    auto reflect = [&](std::span<Complex> target) {
      Complex dot{0.0, 0.0};
      for (Index i = k; i < m; ++i) dot += std::conj(v[i]) * target[i];
      const Complex factor = 2.0 * dot / vnorm2;
      for (Index i = k; i < m; ++i) target[i] -= factor * v[i];
    };
    for (Index c = k + 1; c < n; ++c) reflect(a.column(c));
    reflect(b);
  }

  double largest = 0.0;
  for (const auto& d : diag) largest = std::max(largest, std::abs(d));
  for (Index k = 0; k < n; ++k) {
    if (!(std::abs(diag[k]) > rank_tolerance * largest)) {
      throw IllConditionedError("restricted system is numerically rank deficient");
    }
  }

  LeastSquaresSolution out;
  out.solution.assign(static_cast<std::size_t>(n), Complex{0.0, 0.0});
  for (Index k = n - 1; k >= 0; --k) {
    Complex acc = b[k];
    for (Index c = k + 1; c < n; ++c) acc -= a(k, c) * out.solution[c];
    out.solution[k] = acc / diag[k];
  }
  double tail = 0.0;
  for (Index i = n; i < m; ++i) tail += std::norm(b[i]);
  out.residual = std::sqrt(tail);
  return out;
}

}  // namespace sfft
