#include "geomwave/predictors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "geomwave/errors.hpp"

namespace geomwave {

Mask cubic_hermite_mask() {
  return Mask(-1, {
                      {0.5, -0.125, 0.75, -0.125},
                      diag_d_power(1),
                      {0.5, 0.125, -0.75, -0.125},
                  });
}

namespace {

constexpr double kCubicSwitch = 1e-6;
constexpr double kOverflowGuard = 50.0;

// (cosh x - 1) / x^2
double cosh_m1_over_sq(double x) {
  if (std::abs(x) < 1e-8) return 0.5;
  const double s = std::sinh(0.5 * x);
  return 2.0 * s * s / (x * x);
}

// (sinh x - x) / x^3
double sinh_mx_over_cube(double x) {
  if (std::abs(x) < 0.5) {
    const double x2 = x * x;
    return 1.0 / 6.0 +
           x2 * (1.0 / 120.0 +
                 x2 * (1.0 / 5040.0 +
                       x2 * (1.0 / 362880.0 + x2 * (1.0 / 39916800.0 + x2 / 6227020800.0))));
  }
  return (std::sinh(x) - x) / (x * x * x);
}

// sinh x / x
double sinhc(double x) { return std::abs(x) < 1e-8 ? 1.0 : std::sinh(x) / x; }

// Basis {1, t, (cosh(mu t) - 1)/mu^2, (sinh(mu t) - mu t)/mu^3} of
// span{1, t, e^{mu t}, e^{-mu t}}, scaled so that it tends to
// {1, t, t^2/2, t^3/6} as mu -> 0.
Eigen::Vector4d basis_values(double mu, double t) {
  const double x = mu * t;
  return {1.0, t, t * t * cosh_m1_over_sq(x), t * t * t * sinh_mx_over_cube(x)};
}

Eigen::Vector4d basis_derivs(double mu, double t) {
  const double x = mu * t;
  return {0.0, 1.0, t * sinhc(x), t * t * cosh_m1_over_sq(x)};
}

}  // namespace

Mask exponential_hermite_mask(double lambda, int level) {
  if (lambda == 0.0 || !std::isfinite(lambda))
    throw InvalidArgument("exponential mask needs a finite nonzero lambda");
  const double mu = std::ldexp(lambda, -level);
  if (std::abs(mu) > kOverflowGuard)
    throw InvalidArgument("exponential mask overflow guard: |lambda| 2^-n = " +
                          std::to_string(std::abs(mu)) + " > 50");
  if (std::abs(mu) < kCubicSwitch) return cubic_hermite_mask();

  // Rows: value at 0, derivative at 0, value at 1, derivative at 1, in the
  // unit-interval variable t = (x - x_i) / h, where d/dt is the normalized
  // derivative h f'.
  Eigen::Matrix4d interp;
  interp.row(0) = basis_values(mu, 0.0).transpose();
  interp.row(1) = basis_derivs(mu, 0.0).transpose();
  interp.row(2) = basis_values(mu, 1.0).transpose();
  interp.row(3) = basis_derivs(mu, 1.0).transpose();

  const Eigen::FullPivLU<Eigen::Matrix4d> lu(interp.transpose());
  if (!lu.isInvertible()) throw InvalidArgument("singular exponential interpolation system");
  const Eigen::Vector4d w_value = lu.solve(basis_values(mu, 0.5));
  // Derivative at the midpoint, renormalized to the finer grid (factor 1/2).
  const Eigen::Vector4d w_deriv = 0.5 * lu.solve(basis_derivs(mu, 0.5));

  return Mask(-1, {
                      {w_value[2], w_value[3], w_deriv[2], w_deriv[3]},
                      diag_d_power(1),
                      {w_value[0], w_value[1], w_deriv[0], w_deriv[1]},
                  });
}

bool interpolatory_check(const Mask& mask) {
  const BlockCoeff d = diag_d_power(1);
  const int first_even = mask.lo() % 2 == 0 ? mask.lo() : mask.lo() + 1;
  for (int k = first_even; k <= mask.hi(); k += 2) {
    if (mask[k] != (k == 0 ? d : BlockCoeff::zero())) return false;
  }
  return mask[0] == d;
}

std::vector<ScalarFunction> ReproductionSpace::basis() const {
  std::vector<ScalarFunction> out;
  out.push_back({"1", [](double) { return 1.0; }, [](double) { return 0.0; }});
  out.push_back({"x", [](double x) { return x; }, [](double) { return 1.0; }});
  switch (kind_) {
    case Kind::poly_linear:
      break;
    case Kind::poly_cubic:
      out.push_back({"x^2", [](double x) { return x * x; }, [](double x) { return 2.0 * x; }});
      out.push_back(
          {"x^3", [](double x) { return x * x * x; }, [](double x) { return 3.0 * x * x; }});
      break;
    case Kind::exponential: {
      const double l = lambda_;
      out.push_back({"exp(+lambda x)", [l](double x) { return std::exp(l * x); },
                     [l](double x) { return l * std::exp(l * x); }});
      out.push_back({"exp(-lambda x)", [l](double x) { return std::exp(-l * x); },
                     [l](double x) { return -l * std::exp(-l * x); }});
      break;
    }
  }
  return out;
}

MaskProvider MaskProvider::cubic() { return {PredictorKind::cubic, 0.0, cubic_hermite_mask()}; }

MaskProvider MaskProvider::exponential(double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda))
    throw InvalidArgument("exponential predictor needs a finite nonzero lambda");
  return {PredictorKind::exponential, lambda, cubic_hermite_mask()};
}

MaskProvider MaskProvider::stationary(Mask mask) {
  return {PredictorKind::custom, 0.0, std::move(mask)};
}

std::string MaskProvider::name() const {
  switch (kind_) {
    case PredictorKind::cubic:
      return "cubic";
    case PredictorKind::exponential:
      return "exp";
    case PredictorKind::custom:
      return "custom";
  }
  return "custom";
}

Mask MaskProvider::mask_at(int level) const {
  switch (kind_) {
    case PredictorKind::exponential:
      return exponential_hermite_mask(lambda_, level);
    case PredictorKind::cubic:
    case PredictorKind::custom:
      return custom_;
  }
  return custom_;
}

ReproductionSpace MaskProvider::reproduction_space() const {
  switch (kind_) {
    case PredictorKind::cubic:
      return ReproductionSpace::poly_cubic();
    case PredictorKind::exponential:
      return ReproductionSpace::exponential(lambda_);
    case PredictorKind::custom:
      break;
  }
  throw InvalidArgument("custom predictor has no known reproduction space");
}

HermiteSequence sample_scalar(const ScalarFunction& f, int level, std::ptrdiff_t first,
                              std::ptrdiff_t last) {
  auto s = HermiteSequence::interior(1, first, last, level);
  const double h = std::ldexp(1.0, -level);
  for (std::ptrdiff_t i = first; i <= last; ++i) {
    const double x = std::ldexp(static_cast<double>(i), -level);
    s.value(i)[0] = f.f(x);
    s.deriv(i)[0] = h * f.df(x);
  }
  return s;
}

double spectral_condition_residual(const MaskProvider& provider, const ScalarFunction& f,
                                   int level, std::ptrdiff_t first, std::ptrdiff_t last) {
  if (last - first < 1)
    throw InvalidArgument("spectral condition window needs at least two coarse samples");
  const auto coarse = sample_scalar(f, level, first, last);
  const auto fine = sample_scalar(f, level + 1, 2 * first, 2 * last);
  const auto predicted = apply_subdivision(provider.mask_at(level), coarse);
  return sup_distance(predicted, fine);
}

HermiteSequence run_scheme(const MaskProvider& provider, const HermiteSequence& c0, int steps) {
  if (steps < 0) throw InvalidArgument("negative number of subdivision steps");
  HermiteSequence c = c0;
  for (int s = 0; s < steps; ++s) c = apply_subdivision(provider.mask_at(c.level()), c);
  return c;
}

const std::array<double, 4>& BasicLimitTable::at(std::ptrdiff_t index) const {
  const std::ptrdiff_t row = index - first_index;
  if (row < 0 || row >= static_cast<std::ptrdiff_t>(values.size()))
    throw InvalidArgument("basic limit table index out of range");
  return values[static_cast<std::size_t>(row)];
}

BasicLimitTable basic_limit_table(const MaskProvider& provider, int start_level,
                                  int iterations) {
  if (iterations < 0 || iterations > 20)
    throw InvalidArgument("basic limit table supports 0..20 iterations");
  const Mask m0 = provider.mask_at(start_level);
  const int reach = std::max({1, std::abs(m0.lo()), std::abs(m0.hi())});
  const std::size_t period = 4 * static_cast<std::size_t>(reach);

  std::array<HermiteSequence, 2> columns;
  for (int col = 0; col < 2; ++col) {
    auto c = delta_sequence(1, period, col);
    c.set_level(start_level);
    columns[static_cast<std::size_t>(col)] = run_scheme(provider, c, iterations);
  }

  BasicLimitTable table;
  table.start_level = start_level;
  table.iterations = iterations;
  table.spacing = std::ldexp(1.0, -iterations);
  const auto fine_len = static_cast<std::ptrdiff_t>(columns[0].size());
  table.first_index = -fine_len / 2;
  const double deriv_scale = std::ldexp(1.0, iterations);
  table.values.reserve(static_cast<std::size_t>(fine_len));
  for (std::ptrdiff_t i = table.first_index; i < table.first_index + fine_len; ++i) {
    const std::array<double, 4> row{columns[0].value(i)[0], columns[1].value(i)[0],
                                    deriv_scale * columns[0].deriv(i)[0],
                                    deriv_scale * columns[1].deriv(i)[0]};
    for (double x : row) {
      if (!std::isfinite(x)) throw Error("basic limit iteration diverged (non-finite values)");
      table.sup_norm = std::max(table.sup_norm, std::abs(x));
    }
    table.values.push_back(row);
  }
  return table;
}

}  // namespace geomwave
