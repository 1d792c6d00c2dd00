#include "geomwave/signals.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "geomwave/errors.hpp"

namespace geomwave {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t euclidean_dim(const std::string& tag) {
  const auto m = make_manifold(tag);
  if (!m->is_euclidean()) return 0;
  return m->ambient_dim();
}

// Component c of the degree-d polynomial preset: sum_k x^k / (k + 1 + c).
SignalSpec polynomial(const std::string& name, std::size_t dim, int degree) {
  SignalSpec s;
  s.preset = name;
  s.manifold = std::make_shared<EuclideanSpace>(dim);
  s.params["degree"] = degree;
  s.domain = Boundary::interior;
  s.f = [dim, degree](double x) {
    Vec out(static_cast<Eigen::Index>(dim));
    for (std::size_t c = 0; c < dim; ++c) {
      double acc = 0.0;
      for (int k = degree; k >= 0; --k) acc = acc * x + 1.0 / (k + 1.0 + c);
      out[static_cast<Eigen::Index>(c)] = acc;
    }
    return out;
  };
  s.df = [dim, degree](double x) {
    Vec out(static_cast<Eigen::Index>(dim));
    for (std::size_t c = 0; c < dim; ++c) {
      double acc = 0.0;
      for (int k = degree; k >= 1; --k) acc = acc * x + k / (k + 1.0 + c);
      out[static_cast<Eigen::Index>(c)] = acc;
    }
    return out;
  };
  return s;
}

// (c + 1) e^{lambda x} + e^{-lambda x} + 1, inside span{1, e^{lambda x}, e^{-lambda x}}.
SignalSpec exponential(std::size_t dim, double lambda) {
  SignalSpec s;
  s.preset = "exp";
  s.manifold = std::make_shared<EuclideanSpace>(dim);
  s.params["lambda"] = lambda;
  s.domain = Boundary::interior;
  s.f = [dim, lambda](double x) {
    Vec out(static_cast<Eigen::Index>(dim));
    for (std::size_t c = 0; c < dim; ++c)
      out[static_cast<Eigen::Index>(c)] =
          (c + 1.0) * std::exp(lambda * x) + std::exp(-lambda * x) + 1.0;
    return out;
  };
  s.df = [dim, lambda](double x) {
    Vec out(static_cast<Eigen::Index>(dim));
    for (std::size_t c = 0; c < dim; ++c)
      out[static_cast<Eigen::Index>(c)] =
          lambda * ((c + 1.0) * std::exp(lambda * x) - std::exp(-lambda * x));
    return out;
  };
  return s;
}

// sin(2 pi (x + c / 7)) + 0.5 cos(6 pi x) + 0.25 sin(10 pi x), periodic on [0, 1).
SignalSpec trig(std::size_t dim) {
  SignalSpec s;
  s.preset = "trig";
  s.manifold = std::make_shared<EuclideanSpace>(dim);
  s.params = {{"f1", 1}, {"f2", 3}, {"f3", 5}, {"a2", 0.5}, {"a3", 0.25}};
  s.f = [dim](double x) {
    Vec out(static_cast<Eigen::Index>(dim));
    for (std::size_t c = 0; c < dim; ++c)
      out[static_cast<Eigen::Index>(c)] = std::sin(kTwoPi * (x + c / 7.0)) +
                                          0.5 * std::cos(3 * kTwoPi * x) +
                                          0.25 * std::sin(5 * kTwoPi * x);
    return out;
  };
  s.df = [dim](double x) {
    Vec out(static_cast<Eigen::Index>(dim));
    for (std::size_t c = 0; c < dim; ++c)
      out[static_cast<Eigen::Index>(c)] = kTwoPi * (std::cos(kTwoPi * (x + c / 7.0)) -
                                                    1.5 * std::sin(3 * kTwoPi * x) +
                                                    1.25 * std::cos(5 * kTwoPi * x));
    return out;
  };
  return s;
}

SignalSpec great_circle() {
  SignalSpec s;
  s.preset = "great-circle";
  s.manifold = std::make_shared<Sphere>(3);
  s.params["tilt"] = 0.4;
  // Equator rotated by `tilt` about the x axis.
  const double ct = std::cos(0.4), st = std::sin(0.4);
  s.f = [ct, st](double t) {
    const double c = std::cos(kTwoPi * t), sn = std::sin(kTwoPi * t);
    return Vec{{c, ct * sn, st * sn}};
  };
  s.df = [ct, st](double t) {
    const double c = std::cos(kTwoPi * t), sn = std::sin(kTwoPi * t);
    return Vec{{-kTwoPi * sn, kTwoPi * ct * c, kTwoPi * st * c}};
  };
  return s;
}

// g(t) = (cos 2 pi t, sin 2 pi t, a1 sin 6 pi t + a2 cos 10 pi t), f = g / |g|.
SignalSpec wobble() {
  constexpr double a1 = 0.3, a2 = 0.15;
  SignalSpec s;
  s.preset = "wobble";
  s.manifold = std::make_shared<Sphere>(3);
  s.params = {{"a1", a1}, {"a2", a2}, {"f1", 3}, {"f2", 5}};
  auto g = [](double t) {
    return Vec{{std::cos(kTwoPi * t), std::sin(kTwoPi * t),
                a1 * std::sin(3 * kTwoPi * t) + a2 * std::cos(5 * kTwoPi * t)}};
  };
  auto dg = [](double t) {
    return Vec{{-kTwoPi * std::sin(kTwoPi * t), kTwoPi * std::cos(kTwoPi * t),
                kTwoPi * (3 * a1 * std::cos(3 * kTwoPi * t) -
                          5 * a2 * std::sin(5 * kTwoPi * t))}};
  };
  s.f = [g](double t) { return Vec(g(t).normalized()); };
  s.df = [g, dg](double t) {
    const Vec gt = g(t);
    const double n = gt.norm();
    const Vec u = gt / n;
    const Vec d = dg(t);
    return Vec((d - u.dot(d) * u) / n);
  };
  return s;
}

// Unit quaternion (cos(|w|/2), sin(|w|/2) w / |w|) of the rotation vector
// w(t) = (1 + 0.3 sin 2 pi t, 0.5 cos 2 pi t, 0.4 sin 4 pi t); |w| >= 0.7.
SignalSpec rotation() {
  SignalSpec s;
  s.preset = "rotation";
  s.manifold = std::make_shared<UnitQuaternions>();
  s.params = {{"w0", 1.0}, {"a0", 0.3}, {"a1", 0.5}, {"a2", 0.4}};
  auto w = [](double t) {
    return Eigen::Vector3d(1.0 + 0.3 * std::sin(kTwoPi * t), 0.5 * std::cos(kTwoPi * t),
                           0.4 * std::sin(2 * kTwoPi * t));
  };
  auto dw = [](double t) {
    return Eigen::Vector3d(0.3 * kTwoPi * std::cos(kTwoPi * t),
                           -0.5 * kTwoPi * std::sin(kTwoPi * t),
                           0.8 * kTwoPi * std::cos(2 * kTwoPi * t));
  };
  s.f = [w](double t) {
    const Eigen::Vector3d wt = w(t);
    const double th = wt.norm();
    Vec q(4);
    q[0] = std::cos(th / 2);
    q.tail<3>() = (std::sin(th / 2) / th) * wt;
    return q;
  };
  s.df = [w, dw](double t) {
    const Eigen::Vector3d wt = w(t), dwt = dw(t);
    const double th = wt.norm();
    const double dth = wt.dot(dwt) / th;
    const double sc = std::sin(th / 2) / th;
    const double dsc = (0.5 * std::cos(th / 2) * th - std::sin(th / 2)) / (th * th);
    Vec dq(4);
    dq[0] = -0.5 * std::sin(th / 2) * dth;
    dq.tail<3>() = dsc * dth * wt + sc * dwt;
    return dq;
  };
  return s;
}

}  // namespace

std::vector<std::string> preset_names(const std::string& manifold_tag) {
  if (manifold_tag == "sphere2") return {"great-circle", "wobble"};
  if (manifold_tag == "so3-quat") return {"rotation"};
  if (euclidean_dim(manifold_tag) > 0)
    return {"linear", "quadratic", "cubic", "quartic", "exp", "trig"};
  return {};
}

SignalSpec make_preset(const std::string& name, const std::string& manifold_tag,
                       double lambda) {
  if (manifold_tag == "sphere2") {
    if (name == "great-circle") return great_circle();
    if (name == "wobble") return wobble();
  } else if (manifold_tag == "so3-quat") {
    if (name == "rotation") return rotation();
  } else if (const std::size_t dim = euclidean_dim(manifold_tag); dim > 0) {
    if (name == "linear") return polynomial(name, dim, 1);
    if (name == "quadratic") return polynomial(name, dim, 2);
    if (name == "cubic") return polynomial(name, dim, 3);
    if (name == "quartic") return polynomial(name, dim, 4);
    if (name == "exp") return exponential(dim, lambda);
    if (name == "trig") return trig(dim);
  }
  throw InvalidArgument("unknown preset '" + name + "' for manifold '" + manifold_tag + "'");
}

double derivative_check(const SignalSpec& spec, int points) {
  constexpr double h = 1e-6;
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    const double t = spec.a + (spec.b - spec.a) * (k + 0.5) / points;
    const Vec fd = (spec.f(t + h) - spec.f(t - h)) / (2 * h);
    const Vec d = spec.df(t);
    worst = std::max(worst, (fd - d).lpNorm<Eigen::Infinity>() /
                                (1.0 + d.lpNorm<Eigen::Infinity>()));
  }
  return worst;
}

namespace {

std::vector<PointVector> sample_entries(const SignalSpec& spec, int level,
                                        std::ptrdiff_t& first) {
  if (level < 0 || level > 24) throw InvalidArgument("sampling level must lie in [0, 24]");
  const double h = std::ldexp(1.0, -level);
  std::ptrdiff_t lo = 0, hi = (std::ptrdiff_t{1} << level) - 1;
  if (spec.domain == Boundary::periodic) {
    const Vec d0 = spec.f(0.0) - spec.f(1.0);
    const Vec d1 = spec.df(0.0) - spec.df(1.0);
    if (d0.lpNorm<Eigen::Infinity>() > 1e-12 || d1.lpNorm<Eigen::Infinity>() > 1e-12)
      throw InvalidArgument("preset '" + spec.preset + "' does not close up on [0, 1)");
  } else {
    lo = static_cast<std::ptrdiff_t>(std::ceil(std::ldexp(spec.a, level)));
    hi = static_cast<std::ptrdiff_t>(std::floor(std::ldexp(spec.b, level)));
  }
  first = lo;
  std::vector<PointVector> entries;
  entries.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::ptrdiff_t i = lo; i <= hi; ++i) {
    const double t = static_cast<double>(i) * h;
    entries.push_back({spec.f(t), h * spec.df(t)});
  }
  return entries;
}

}  // namespace

ManifoldHermiteSeq sample_signal(const SignalSpec& spec, int level) {
  std::ptrdiff_t first = 0;
  auto entries = sample_entries(spec, level, first);
  if (spec.domain == Boundary::periodic)
    return ManifoldHermiteSeq::periodic(spec.manifold, std::move(entries), level);
  return ManifoldHermiteSeq::interior(spec.manifold, first, std::move(entries), level);
}

HermiteSequence sample_signal_linear(const SignalSpec& spec, int level) {
  return to_ambient(sample_signal(spec, level));
}

}  // namespace geomwave
