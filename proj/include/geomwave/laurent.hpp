#pragma once

#include <vector>

#include "geomwave/sequence.hpp"

namespace geomwave {

/// 2x2 matrix-valued Laurent polynomial sum_k C_k z^k with dense storage on
/// the exponent range [min_exponent, max_exponent].
class MatrixLaurent {
 public:
  MatrixLaurent() : MatrixLaurent(0, {BlockCoeff::zero()}) {}
  MatrixLaurent(int min_exponent, std::vector<BlockCoeff> coeffs);

  static MatrixLaurent constant(BlockCoeff c) { return {0, {c}}; }
  static MatrixLaurent monomial(int exponent, BlockCoeff c) { return {exponent, {c}}; }

  int min_exponent() const noexcept { return min_; }
  int max_exponent() const noexcept { return min_ + static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of z^k (zero outside the stored range).
  BlockCoeff coeff(int k) const noexcept;

  /// P(-z).
  MatrixLaurent negated_argument() const;
  /// Blockwise transpose P^T(z).
  MatrixLaurent transposed() const;
  /// P(z^{-1}).
  MatrixLaurent reflected() const;
  /// P^#(z) = P^T(z^{-1}).
  MatrixLaurent sharp() const { return transposed().reflected(); }

  double max_abs_coeff() const;

  friend MatrixLaurent operator+(const MatrixLaurent& a, const MatrixLaurent& b);
  friend MatrixLaurent operator-(const MatrixLaurent& a, const MatrixLaurent& b);
  friend MatrixLaurent operator*(const MatrixLaurent& a, const MatrixLaurent& b);

 private:
  int min_;
  std::vector<BlockCoeff> coeffs_;
};

/// A(z) = sum_k A_k z^k.
MatrixLaurent laurent_symbol(const Mask& mask);

}  // namespace geomwave
