#include "geomwave/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geomwave/errors.hpp"
#include "index_math.hpp"

namespace geomwave {

double BlockCoeff::max_abs() const {
  return std::max({std::abs(a00), std::abs(a01), std::abs(a10), std::abs(a11)});
}

BlockCoeff operator*(const BlockCoeff& x, const BlockCoeff& y) {
  return {x.a00 * y.a00 + x.a01 * y.a10, x.a00 * y.a01 + x.a01 * y.a11,
          x.a10 * y.a00 + x.a11 * y.a10, x.a10 * y.a01 + x.a11 * y.a11};
}

BlockCoeff operator+(const BlockCoeff& x, const BlockCoeff& y) {
  return {x.a00 + y.a00, x.a01 + y.a01, x.a10 + y.a10, x.a11 + y.a11};
}

BlockCoeff operator-(const BlockCoeff& x, const BlockCoeff& y) {
  return {x.a00 - y.a00, x.a01 - y.a01, x.a10 - y.a10, x.a11 - y.a11};
}

BlockCoeff operator*(double s, const BlockCoeff& x) {
  return {s * x.a00, s * x.a01, s * x.a10, s * x.a11};
}

BlockCoeff diag_d_power(int k) { return {1.0, 0.0, 0.0, std::ldexp(1.0, -k)}; }

Mask::Mask(int lo, std::vector<BlockCoeff> coeffs) : lo_(lo), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("mask needs at least one coefficient block");
}

BlockCoeff Mask::operator[](int k) const noexcept {
  if (k < lo_ || k > hi()) return BlockCoeff::zero();
  return coeffs_[static_cast<std::size_t>(k - lo_)];
}

BlockCoeff& Mask::at(int k) {
  if (k < lo_ || k > hi())
    throw InvalidArgument("mask index " + std::to_string(k) + " outside support [" +
                          std::to_string(lo_) + ", " + std::to_string(hi()) + "]");
  return coeffs_[static_cast<std::size_t>(k - lo_)];
}

Mask Mask::transposed() const {
  std::vector<BlockCoeff> t;
  t.reserve(coeffs_.size());
  for (const auto& b : coeffs_) t.push_back(b.transposed());
  return Mask(lo_, std::move(t));
}

Mask delta_mask() { return single_block_mask(0, BlockCoeff::identity()); }

Mask single_block_mask(int k, BlockCoeff block) { return Mask(k, {block}); }

HermiteSequence HermiteSequence::periodic(std::size_t dim, std::size_t length, int level) {
  if (dim == 0) throw InvalidArgument("sequence dimension must be positive");
  HermiteSequence s;
  s.dim_ = dim;
  s.boundary_ = Boundary::periodic;
  s.size_ = length;
  s.level_ = level;
  s.data_.assign(2 * dim * length, 0.0);
  s.valid_.assign(length, 1);
  return s;
}

HermiteSequence HermiteSequence::interior(std::size_t dim, std::ptrdiff_t first,
                                          std::ptrdiff_t last, int level) {
  if (dim == 0) throw InvalidArgument("sequence dimension must be positive");
  if (last < first - 1) throw InvalidArgument("interior window has negative length");
  HermiteSequence s;
  s.dim_ = dim;
  s.boundary_ = Boundary::interior;
  s.first_ = first;
  s.size_ = static_cast<std::size_t>(last - first + 1);
  s.level_ = level;
  s.data_.assign(2 * dim * s.size_, 0.0);
  s.valid_.assign(s.size_, 1);
  return s;
}

bool HermiteSequence::contains(std::ptrdiff_t i) const noexcept {
  if (is_periodic()) return size_ > 0;
  return i >= first_ && i <= last();
}

bool HermiteSequence::valid(std::ptrdiff_t i) const noexcept {
  if (!contains(i)) return false;
  return valid_[slot(i)] != 0;
}

void HermiteSequence::set_valid(std::ptrdiff_t i, bool valid) {
  if (!contains(i)) throw InvalidArgument("index " + std::to_string(i) + " outside window");
  valid_[slot(i)] = valid ? 1 : 0;
}

std::size_t HermiteSequence::valid_count() const noexcept {
  return static_cast<std::size_t>(std::count(valid_.begin(), valid_.end(), 1));
}

std::size_t HermiteSequence::slot(std::ptrdiff_t i) const {
  if (is_periodic()) {
    if (size_ == 0) throw InvalidArgument("empty periodic sequence");
    return static_cast<std::size_t>(detail::mod(i, static_cast<std::ptrdiff_t>(size_)));
  }
  if (!contains(i)) throw InvalidArgument("index " + std::to_string(i) + " outside window");
  return static_cast<std::size_t>(i - first_);
}

std::span<double> HermiteSequence::value(std::ptrdiff_t i) {
  return {data_.data() + 2 * dim_ * slot(i), dim_};
}
std::span<const double> HermiteSequence::value(std::ptrdiff_t i) const {
  return {data_.data() + 2 * dim_ * slot(i), dim_};
}
std::span<double> HermiteSequence::deriv(std::ptrdiff_t i) {
  return {data_.data() + 2 * dim_ * slot(i) + dim_, dim_};
}
std::span<const double> HermiteSequence::deriv(std::ptrdiff_t i) const {
  return {data_.data() + 2 * dim_ * slot(i) + dim_, dim_};
}

bool HermiteSequence::same_layout(const HermiteSequence& other) const noexcept {
  return dim_ == other.dim_ && boundary_ == other.boundary_ && size_ == other.size_ &&
         (is_periodic() || first_ == other.first_);
}

namespace {

// out_j += B * s_k for a single entry.
void accumulate(const BlockCoeff& b, std::span<const double> p, std::span<const double> v,
                std::span<double> op, std::span<double> ov) {
  for (std::size_t c = 0; c < p.size(); ++c) {
    op[c] += b.a00 * p[c] + b.a01 * v[c];
    ov[c] += b.a10 * p[c] + b.a11 * v[c];
  }
}

}  // namespace

HermiteSequence apply_subdivision(const Mask& mask, const HermiteSequence& s) {
  const int lo = mask.lo();
  const int hi = mask.hi();
  if (s.is_periodic()) {
    const auto length = static_cast<std::ptrdiff_t>(s.size());
    if (length == 0) throw InvalidArgument("empty periodic sequence");
    auto out = HermiteSequence::periodic(s.dim(), 2 * s.size(), s.level() + 1);
    for (std::ptrdiff_t j = 0; j < 2 * length; ++j) {
      auto op = out.value(j);
      auto ov = out.deriv(j);
      for (std::ptrdiff_t k = detail::ceil_div(j - hi, 2); k <= detail::floor_div(j - lo, 2);
           ++k) {
        const BlockCoeff b = mask[static_cast<int>(j - 2 * k)];
        if (b.is_zero()) continue;
        accumulate(b, s.value(k), s.deriv(k), op, ov);
      }
    }
    return out;
  }

  auto out = HermiteSequence::interior(s.dim(), 2 * s.first(), 2 * s.last(), s.level() + 1);
  for (std::ptrdiff_t j = out.first(); j <= out.last(); ++j) {
    const std::ptrdiff_t k_lo = detail::ceil_div(j - hi, 2);
    const std::ptrdiff_t k_hi = detail::floor_div(j - lo, 2);
    bool ok = true;
    for (std::ptrdiff_t k = k_lo; k <= k_hi && ok; ++k) ok = s.valid(k);
    if (!ok) {
      out.set_valid(j, false);
      continue;
    }
    auto op = out.value(j);
    auto ov = out.deriv(j);
    for (std::ptrdiff_t k = k_lo; k <= k_hi; ++k) {
      const BlockCoeff b = mask[static_cast<int>(j - 2 * k)];
      if (b.is_zero()) continue;
      accumulate(b, s.value(k), s.deriv(k), op, ov);
    }
  }
  return out;
}

HermiteSequence apply_decomposition(const Mask& mask, const HermiteSequence& s) {
  const int lo = mask.lo();
  const int hi = mask.hi();
  if (s.is_periodic()) {
    const auto length = static_cast<std::ptrdiff_t>(s.size());
    if (length % 2 != 0)
      throw InvalidArgument("decomposition needs an even periodic length, got " +
                            std::to_string(length));
    if (length == 0) throw InvalidArgument("empty periodic sequence");
    auto out = HermiteSequence::periodic(s.dim(), s.size() / 2, s.level() - 1);
    for (std::ptrdiff_t j = 0; j < length / 2; ++j) {
      auto op = out.value(j);
      auto ov = out.deriv(j);
      for (std::ptrdiff_t i = 2 * j + lo; i <= 2 * j + hi; ++i) {
        const BlockCoeff b = mask[static_cast<int>(i - 2 * j)];
        if (b.is_zero()) continue;
        accumulate(b, s.value(i), s.deriv(i), op, ov);
      }
    }
    return out;
  }

  auto out = HermiteSequence::interior(s.dim(), detail::ceil_div(s.first(), 2),
                                       detail::floor_div(s.last(), 2), s.level() - 1);
  for (std::ptrdiff_t j = out.first(); j <= out.last(); ++j) {
    bool ok = true;
    for (std::ptrdiff_t i = 2 * j + lo; i <= 2 * j + hi && ok; ++i) ok = s.valid(i);
    if (!ok) {
      out.set_valid(j, false);
      continue;
    }
    auto op = out.value(j);
    auto ov = out.deriv(j);
    for (std::ptrdiff_t i = 2 * j + lo; i <= 2 * j + hi; ++i) {
      const BlockCoeff b = mask[static_cast<int>(i - 2 * j)];
      if (b.is_zero()) continue;
      accumulate(b, s.value(i), s.deriv(i), op, ov);
    }
  }
  return out;
}

HermiteSequence shift(const HermiteSequence& s, std::ptrdiff_t k) {
  HermiteSequence out = s.is_periodic()
                            ? HermiteSequence::periodic(s.dim(), s.size(), s.level())
                            : HermiteSequence::interior(s.dim(), s.first() - k, s.last() - k,
                                                        s.level());
  for (std::ptrdiff_t i = out.first(); i <= out.last(); ++i) {
    std::ranges::copy(s.value(i + k), out.value(i).begin());
    std::ranges::copy(s.deriv(i + k), out.deriv(i).begin());
    out.set_valid(i, s.valid(i + k));
  }
  return out;
}

double sup_norm(const HermiteSequence& s) {
  bool any = false;
  double norm = 0.0;
  for (std::ptrdiff_t i = s.first(); i <= s.last(); ++i) {
    if (!s.valid(i)) continue;
    any = true;
    for (double x : s.value(i)) norm = std::max(norm, std::abs(x));
    for (double x : s.deriv(i)) norm = std::max(norm, std::abs(x));
  }
  if (!any) throw InvalidArgument("sup norm of a sequence without valid entries");
  return norm;
}

double sup_distance(const HermiteSequence& a, const HermiteSequence& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch in sup_distance");
  if (a.is_periodic() != b.is_periodic() || (a.is_periodic() && a.size() != b.size()))
    throw InvalidArgument("boundary mismatch in sup_distance");
  const std::ptrdiff_t first = a.is_periodic() ? 0 : std::max(a.first(), b.first());
  const std::ptrdiff_t last = a.is_periodic() ? a.last() : std::min(a.last(), b.last());
  bool any = false;
  double norm = 0.0;
  for (std::ptrdiff_t i = first; i <= last; ++i) {
    if (!a.valid(i) || !b.valid(i)) continue;
    any = true;
    auto ap = a.value(i), bp = b.value(i), av = a.deriv(i), bv = b.deriv(i);
    for (std::size_t c = 0; c < a.dim(); ++c) {
      norm = std::max(norm, std::abs(ap[c] - bp[c]));
      norm = std::max(norm, std::abs(av[c] - bv[c]));
    }
  }
  if (!any) throw InvalidArgument("sup distance over an empty common window");
  return norm;
}

HermiteSequence apply_diag_d(const HermiteSequence& s, int k) {
  HermiteSequence out = s;
  const double scale = std::ldexp(1.0, -k);
  for (std::ptrdiff_t i = out.first(); i <= out.last(); ++i)
    for (double& x : out.deriv(i)) x *= scale;
  return out;
}

HermiteSequence axpy(double alpha, const HermiteSequence& x, const HermiteSequence& y) {
  if (!x.same_layout(y)) throw InvalidArgument("axpy on sequences with different layouts");
  HermiteSequence out = y;
  auto xr = x.raw();
  auto outr = out.raw();
  for (std::size_t c = 0; c < outr.size(); ++c) outr[c] += alpha * xr[c];
  for (std::ptrdiff_t i = out.first(); i <= out.last(); ++i)
    out.set_valid(i, x.valid(i) && y.valid(i));
  return out;
}

HermiteSequence delta_sequence(std::size_t dim, std::size_t length, int column) {
  auto s = HermiteSequence::periodic(dim, length);
  auto target = column == 0 ? s.value(0) : s.deriv(0);
  std::ranges::fill(target, 1.0);
  return s;
}

}  // namespace geomwave
