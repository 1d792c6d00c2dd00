#pragma once

// Closed-form test signals with exact derivatives, and their Hermite sampling.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "geomwave/manifold.hpp"
#include "geomwave/manifold_transform.hpp"
#include "geomwave/sequence.hpp"

namespace geomwave {

struct SignalSpec {
  std::string preset;
  std::shared_ptr<const Manifold> manifold;
  /// Numeric parameters (frequencies, amplitudes, lambda) for reporting.
  std::map<std::string, double> params;
  Boundary domain = Boundary::periodic;
  /// Interior domain [a, b]; [0, 1) for periodic signals.
  double a = 0.0;
  double b = 1.0;
  std::function<Vec(double)> f;
  std::function<Vec(double)> df;
};

/// Preset names accepted by make_preset for a manifold tag.
std::vector<std::string> preset_names(const std::string& manifold_tag);

/// Euclidean ("euclidean:<m>"): "linear", "quadratic", "cubic", "quartic",
/// "exp" (uses lambda), "trig". Sphere ("sphere2"): "great-circle", "wobble".
/// SO(3) ("so3-quat"): "rotation". Throws InvalidArgument otherwise.
SignalSpec make_preset(const std::string& name, const std::string& manifold_tag,
                       double lambda = 1.0);

/// Max deviation of df from central differences of f (step 1e-6) over
/// `points` evenly spaced parameters, relative to 1 + |df|.
double derivative_check(const SignalSpec& spec, int points = 64);

/// Periodic: entries i = 0 .. 2^n - 1 at t = i 2^-n. Interior: the grid
/// indices inside [a, b]. Entry i holds (f(t), 2^-n f'(t)). Periodic signals
/// must close up: f(0) = f(1) and f'(0) = f'(1) to 1e-12.
ManifoldHermiteSeq sample_signal(const SignalSpec& spec, int level);

/// Same samples as a linear sequence in ambient coordinates.
HermiteSequence sample_signal_linear(const SignalSpec& spec, int level);

}  // namespace geomwave
