#include "geomwave/laurent.hpp"

#include <algorithm>

#include "geomwave/errors.hpp"

namespace geomwave {

MatrixLaurent::MatrixLaurent(int min_exponent, std::vector<BlockCoeff> coeffs)
    : min_(min_exponent), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("Laurent polynomial needs one coefficient");
}

BlockCoeff MatrixLaurent::coeff(int k) const noexcept {
  if (k < min_ || k > max_exponent()) return BlockCoeff::zero();
  return coeffs_[static_cast<std::size_t>(k - min_)];
}

MatrixLaurent MatrixLaurent::negated_argument() const {
  auto out = *this;
  for (int k = min_; k <= max_exponent(); ++k)
    if (k % 2 != 0) out.coeffs_[static_cast<std::size_t>(k - min_)] = -1.0 * coeff(k);
  return out;
}

MatrixLaurent MatrixLaurent::transposed() const {
  auto out = *this;
  for (auto& c : out.coeffs_) c = c.transposed();
  return out;
}

MatrixLaurent MatrixLaurent::reflected() const {
  std::vector<BlockCoeff> rev(coeffs_.rbegin(), coeffs_.rend());
  return {-max_exponent(), std::move(rev)};
}

double MatrixLaurent::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, c.max_abs());
  return m;
}

MatrixLaurent operator+(const MatrixLaurent& a, const MatrixLaurent& b) {
  const int lo = std::min(a.min_exponent(), b.min_exponent());
  const int hi = std::max(a.max_exponent(), b.max_exponent());
  std::vector<BlockCoeff> c;
  c.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) c.push_back(a.coeff(k) + b.coeff(k));
  return {lo, std::move(c)};
}

MatrixLaurent operator-(const MatrixLaurent& a, const MatrixLaurent& b) {
  const int lo = std::min(a.min_exponent(), b.min_exponent());
  const int hi = std::max(a.max_exponent(), b.max_exponent());
  std::vector<BlockCoeff> c;
  c.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) c.push_back(a.coeff(k) - b.coeff(k));
  return {lo, std::move(c)};
}

MatrixLaurent operator*(const MatrixLaurent& a, const MatrixLaurent& b) {
  const int lo = a.min_exponent() + b.min_exponent();
  const int hi = a.max_exponent() + b.max_exponent();
  std::vector<BlockCoeff> c(static_cast<std::size_t>(hi - lo + 1));
  for (int i = a.min_exponent(); i <= a.max_exponent(); ++i)
    for (int j = b.min_exponent(); j <= b.max_exponent(); ++j) {
      auto& slot = c[static_cast<std::size_t>(i + j - lo)];
      slot = slot + a.coeff(i) * b.coeff(j);
    }
  return {lo, std::move(c)};
}

MatrixLaurent laurent_symbol(const Mask& mask) {
  return {mask.lo(), std::vector<BlockCoeff>(mask.coeffs().begin(), mask.coeffs().end())};
}

}  // namespace geomwave
