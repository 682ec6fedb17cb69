#ifndef SFFT_HOUSEHOLDER_QR_HPP
#define SFFT_HOUSEHOLDER_QR_HPP

#include <span>

#include "sfft/core.hpp"

namespace sfft {

/// Dense column-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(Index rows, Index cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }

  Complex& operator()(Index r, Index c) { return data_[static_cast<std::size_t>(c * rows_ + r)]; }
  const Complex& operator()(Index r, Index c) const {
    return data_[static_cast<std::size_t>(c * rows_ + r)];
  }

  std::span<Complex> column(Index c) {
    return {data_.data() + c * rows_, static_cast<std::size_t>(rows_)};
  }
  std::span<const Complex> column(Index c) const {
    return {data_.data() + c * rows_, static_cast<std::size_t>(rows_)};
  }

  ComplexVector apply(std::span<const Complex> u) const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  ComplexVector data_;
};

struct LeastSquaresSolution {
  ComplexVector solution;
  double residual = 0.0;  // ||A y - b||_2
};

/// Householder QR least squares for a tall matrix (rows >= cols).
///
/// Throws IllConditionedError when some |R_ii| falls below
/// rank_tolerance * max_i |R_ii|; no regularization is attempted.
LeastSquaresSolution solve_least_squares(ComplexMatrix a, std::span<const Complex> rhs,
                                         double rank_tolerance = 1e-12);

}  // namespace sfft

#endif  // SFFT_HOUSEHOLDER_QR_HPP
