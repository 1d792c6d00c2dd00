#pragma once

// Hermite sequences, 2x2 block masks and the subdivision / decomposition /
// shift operators acting on them.
//
// A bi-infinite sequence over Z is realised either as a periodic sequence
// (index arithmetic modulo the length) or as an interior window [first, last]
// with a validity flag per entry. Operators on interior windows mark every
// output whose stencil leaves the window (or touches an invalid input) as
// invalid.

#include <cstddef>
#include <span>
#include <vector>

namespace geomwave {

/// 2x2 block acting on a Hermite pair (p, v) in R^m x R^m as
/// (a00 p + a01 v, a10 p + a11 v). Each entry stands for a scalar multiple of
/// the identity on R^m.
struct BlockCoeff {
  double a00 = 0.0;
  double a01 = 0.0;
  double a10 = 0.0;
  double a11 = 0.0;

  static constexpr BlockCoeff identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr BlockCoeff zero() { return {}; }

  constexpr BlockCoeff transposed() const { return {a00, a10, a01, a11}; }
  constexpr bool is_zero() const {
    return a00 == 0.0 && a01 == 0.0 && a10 == 0.0 && a11 == 0.0;
  }
  double max_abs() const;

  friend constexpr bool operator==(const BlockCoeff&, const BlockCoeff&) = default;
};

BlockCoeff operator*(const BlockCoeff& x, const BlockCoeff& y);
BlockCoeff operator+(const BlockCoeff& x, const BlockCoeff& y);
BlockCoeff operator-(const BlockCoeff& x, const BlockCoeff& y);
BlockCoeff operator*(double s, const BlockCoeff& x);

/// D^k with D = diag(1, 1/2). Exact for |k| <= 1000 since the entries are
/// powers of two.
BlockCoeff diag_d_power(int k);

/// Finitely supported sequence of BlockCoeff on [lo, hi]; zero outside.
class Mask {
 public:
  Mask() : Mask(0, {BlockCoeff::zero()}) {}
  Mask(int lo, std::vector<BlockCoeff> coeffs);

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  int width() const noexcept { return static_cast<int>(coeffs_.size()); }

  /// Block at index k, zero outside the support.
  BlockCoeff operator[](int k) const noexcept;
  /// Mutable block at k; k must lie in [lo, hi].
  BlockCoeff& at(int k);

  std::span<const BlockCoeff> coeffs() const noexcept { return coeffs_; }

  /// Blockwise transpose (k -> A_k^T).
  Mask transposed() const;

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  int lo_;
  std::vector<BlockCoeff> coeffs_;
};

/// delta_0 = I, zero elsewhere.
Mask delta_mask();
/// Single block `block` at index k.
Mask single_block_mask(int k, BlockCoeff block);

enum class Boundary { periodic, interior };

/// Finite realisation of a sequence of Hermite pairs (p_i, v_i) in R^m x R^m.
class HermiteSequence {
 public:
  HermiteSequence() = default;

  /// Zero periodic sequence of the given length.
  static HermiteSequence periodic(std::size_t dim, std::size_t length, int level = 0);
  /// Zero interior sequence on [first, last], all entries valid.
  static HermiteSequence interior(std::size_t dim, std::ptrdiff_t first,
                                  std::ptrdiff_t last, int level = 0);

  std::size_t dim() const noexcept { return dim_; }
  Boundary boundary() const noexcept { return boundary_; }
  bool is_periodic() const noexcept { return boundary_ == Boundary::periodic; }
  std::size_t size() const noexcept { return size_; }
  std::ptrdiff_t first() const noexcept { return first_; }
  std::ptrdiff_t last() const noexcept {
    return first_ + static_cast<std::ptrdiff_t>(size_) - 1;
  }
  int level() const noexcept { return level_; }
  void set_level(int level) noexcept { level_ = level; }

  /// Periodic: always true. Interior: i lies in [first, last].
  bool contains(std::ptrdiff_t i) const noexcept;
  /// contains(i) and the entry is flagged valid.
  bool valid(std::ptrdiff_t i) const noexcept;
  void set_valid(std::ptrdiff_t i, bool valid);
  std::size_t valid_count() const noexcept;

  /// Storage slot of index i (wraps modulo the length in periodic mode).
  std::size_t slot(std::ptrdiff_t i) const;

  std::span<double> value(std::ptrdiff_t i);
  std::span<const double> value(std::ptrdiff_t i) const;
  std::span<double> deriv(std::ptrdiff_t i);
  std::span<const double> deriv(std::ptrdiff_t i) const;

  /// Raw storage, entry-major: [p_0 (m), v_0 (m), p_1, v_1, ...].
  std::span<const double> raw() const noexcept { return data_; }
  std::span<double> raw() noexcept { return data_; }

  /// Same layout (boundary, window, dimension).
  bool same_layout(const HermiteSequence& other) const noexcept;

 private:
  std::size_t dim_ = 0;
  Boundary boundary_ = Boundary::periodic;
  std::ptrdiff_t first_ = 0;
  std::size_t size_ = 0;
  int level_ = 0;
  std::vector<double> data_;
  std::vector<unsigned char> valid_;
};

/// (S_A s)_j = sum_k A_{j-2k} s_k.
HermiteSequence apply_subdivision(const Mask& mask, const HermiteSequence& s);
/// (D_A s)_j = sum_i A_{i-2j} s_i.
HermiteSequence apply_decomposition(const Mask& mask, const HermiteSequence& s);
/// (L^k s)_i = s_{i+k}.
HermiteSequence shift(const HermiteSequence& s, std::ptrdiff_t k);

/// Max over valid entries of the max-abs component. Throws on an empty
/// valid set.
double sup_norm(const HermiteSequence& s);
/// sup_norm(a - b) over the entries valid in both.
double sup_distance(const HermiteSequence& a, const HermiteSequence& b);

/// Entrywise D^k: derivative components scaled by 2^{-k}.
HermiteSequence apply_diag_d(const HermiteSequence& s, int k);

/// alpha * x + y (same layout required). Validity is the intersection.
HermiteSequence axpy(double alpha, const HermiteSequence& x, const HermiteSequence& y);

/// Periodic sequence with (1, 0) at index 0 (column 0) or (0, 1) (column 1),
/// where 1 is the all-ones vector of R^m.
HermiteSequence delta_sequence(std::size_t dim, std::size_t length, int column = 0);

}  // namespace geomwave
