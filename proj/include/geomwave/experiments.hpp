#pragma once

// Coefficient decay experiments.

#include <optional>
#include <string>
#include <vector>

#include "geomwave/manifold_transform.hpp"
#include "geomwave/predictors.hpp"
#include "geomwave/signals.hpp"

namespace geomwave {

struct DecayReport {
  std::string preset;
  std::string manifold;
  std::string predictor;
  double lambda = 0.0;
  BasePointRule rule = BasePointRule::midpoint;
  int nmin = 0;
  int nmax = 0;
  /// Detail levels nmin .. nmax - 1 and their sup norms.
  std::vector<int> levels;
  std::vector<double> sup_norms;
  /// log2(sup_norms[k + 1] / sup_norms[k]); one fewer entry than levels.
  std::vector<double> log2_ratios;
  /// Least-squares fit of log2 ||d^{[n]}|| = slope n + intercept over
  /// [fit_first, fit_last]. Empty when every norm is below kAnnihilationTol.
  std::optional<double> slope;
  std::optional<double> intercept;
  int fit_first = 0;
  int fit_last = 0;
  bool exact_annihilation = false;
  /// max_n ||d^{[n]}|| 4^n, the measured constant of the 2^{-2n} bound.
  double constant_c = 0.0;
};

inline constexpr double kAnnihilationTol = 1e-12;

/// Samples `spec` at level nmax and decomposes down to nmin, recording the
/// detail norm of every level. Periodic data runs through the manifold
/// pipeline; interior Euclidean data through the linear one. The fit covers
/// the top `fit_levels` detail levels (all if fewer). A density failure is
/// rethrown for the coarsest level at which it occurs.
DecayReport decay_experiment(const SignalSpec& spec, const MaskProvider& provider,
                             BasePointRule rule, int nmin, int nmax, int fit_levels = 5);

/// Ordinary least squares y = slope x + intercept. Needs two distinct x.
std::pair<double, double> least_squares_line(const std::vector<double>& x,
                                             const std::vector<double>& y);

}  // namespace geomwave
