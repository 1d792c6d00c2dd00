#pragma once

// Interpolatory Hermite subdivision schemes used as predictors.
//
// All masks act on normalized data c^{[n]} = D^n p^{[n]}, i.e. entry i at
// level n holds (f(i 2^-n), 2^-n f'(i 2^-n)). With this convention one
// refinement step is plain operator application c^{[n+1]} = S_{A^{[n]}} c^{[n]}.

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "geomwave/sequence.hpp"

namespace geomwave {

/// Two-point cubic Hermite midpoint scheme. Support [-1, 1], A_0 = D.
Mask cubic_hermite_mask();

/// Level-n mask reproducing span{1, x, e^{lambda x}, e^{-lambda x}}.
/// Falls back to the cubic mask when |lambda| 2^-n < 1e-6; throws
/// InvalidArgument for lambda == 0 or |lambda| 2^-n > 50.
Mask exponential_hermite_mask(double lambda, int level);

/// True iff every even block equals D delta (bitwise comparison).
bool interpolatory_check(const Mask& mask);

/// A scalar function with its exact derivative.
struct ScalarFunction {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> df;
};

class ReproductionSpace {
 public:
  enum class Kind { poly_linear, poly_cubic, exponential };

  static ReproductionSpace poly_linear() { return {Kind::poly_linear, 0.0}; }
  static ReproductionSpace poly_cubic() { return {Kind::poly_cubic, 0.0}; }
  static ReproductionSpace exponential(double lambda) { return {Kind::exponential, lambda}; }

  Kind kind() const noexcept { return kind_; }
  double lambda() const noexcept { return lambda_; }
  /// Basis functions; constants always come first.
  std::vector<ScalarFunction> basis() const;

 private:
  ReproductionSpace(Kind kind, double lambda) : kind_(kind), lambda_(lambda) {}
  Kind kind_;
  double lambda_;
};

enum class PredictorKind { cubic, exponential, custom };

/// Level-indexed source of predictor masks.
class MaskProvider {
 public:
  static MaskProvider cubic();
  static MaskProvider exponential(double lambda);
  /// Stationary provider around an arbitrary mask; no reproduction space.
  static MaskProvider stationary(Mask mask);

  PredictorKind kind() const noexcept { return kind_; }
  double lambda() const noexcept { return lambda_; }
  /// "cubic", "exp" or "custom".
  std::string name() const;

  Mask mask_at(int level) const;
  ReproductionSpace reproduction_space() const;

 private:
  MaskProvider(PredictorKind kind, double lambda, Mask mask)
      : kind_(kind), lambda_(lambda), custom_(std::move(mask)) {}
  PredictorKind kind_;
  double lambda_;
  Mask custom_;
};

/// Normalized samples (f(i h), h f'(i h)), h = 2^-level, on the interior
/// window [first, last]; one-dimensional.
HermiteSequence sample_scalar(const ScalarFunction& f, int level, std::ptrdiff_t first,
                              std::ptrdiff_t last);

/// sup-norm of S_{A^{[n]}} c^{[n]} - c^{[n+1]} for samples of f, with c^{[n]}
/// taken on [first, last] at level n.
double spectral_condition_residual(const MaskProvider& provider, const ScalarFunction& f,
                                   int level, std::ptrdiff_t first, std::ptrdiff_t last);

/// c^{[n+1]} = S_{A^{[n]}} c^{[n]}, starting from the level tag of c0.
HermiteSequence run_scheme(const MaskProvider& provider, const HermiteSequence& c0, int steps);

/// Grid samples of the basic limit function matrix
///   F = [[Phi0, Phi1], [Phi0', Phi1']]
/// obtained by running the scheme (masks from level `start_level` on) on the
/// delta sequence.
struct BasicLimitTable {
  int start_level = 0;
  int iterations = 0;
  /// Grid spacing relative to the starting grid, 2^-iterations.
  double spacing = 1.0;
  /// Grid index of the first row; row r sits at x = (first_index + r) * spacing.
  std::ptrdiff_t first_index = 0;
  /// Per grid point: Phi0, Phi1, Phi0', Phi1'.
  std::vector<std::array<double, 4>> values;
  double sup_norm = 0.0;

  /// Row at grid point x = index * spacing.
  const std::array<double, 4>& at(std::ptrdiff_t index) const;
};

BasicLimitTable basic_limit_table(const MaskProvider& provider, int start_level, int iterations);

}  // namespace geomwave
