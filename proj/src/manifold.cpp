#include "geomwave/manifold.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "geomwave/errors.hpp"

namespace geomwave {

EuclideanSpace::EuclideanSpace(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidArgument("Euclidean space needs a positive dimension");
}

std::string EuclideanSpace::tag() const { return "euclidean:" + std::to_string(dim_); }

double EuclideanSpace::injectivity_radius() const {
  return std::numeric_limits<double>::infinity();
}

Sphere::Sphere(std::size_t ambient_dim) : dim_(ambient_dim) {
  if (ambient_dim < 2) throw InvalidArgument("sphere needs ambient dimension >= 2");
}

std::string Sphere::tag() const {
  return dim_ == 3 ? "sphere2" : "sphere" + std::to_string(dim_ - 1);
}

double Sphere::injectivity_radius() const { return std::numbers::pi - kCutLocusMargin; }

Vec Sphere::project_point(const Vec& x) const {
  const double n = x.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("cannot project onto the sphere");
  return x / n;
}

Vec Sphere::project_tangent(const Vec& p, const Vec& v) const { return v - p.dot(v) * p; }

namespace {

// Angle between unit vectors; stable near 0 and pi.
double sphere_angle(const Vec& p, const Vec& q) {
  const double c = p.dot(q);
  return std::atan2((q - c * p).norm(), c);
}

void check_cut_locus(double angle, const char* op) {
  if (angle >= std::numbers::pi - kCutLocusMargin)
    throw DensityError(std::string(op) + ": geodesic angle " + std::to_string(angle) +
                       " reaches the cut locus");
}

}  // namespace

Vec Sphere::exp(const Vec& p, const Vec& v) const {
  const double theta = v.norm();
  if (theta == 0.0) return p;
  check_cut_locus(theta, "exp");
  Vec q = std::cos(theta) * p + (std::sin(theta) / theta) * v;
  return q / q.norm();
}

Vec Sphere::log(const Vec& p, const Vec& q) const {
  if (p == q) return Vec::Zero(p.size());
  const double c = p.dot(q);
  Vec w = q - c * p;
  const double s = w.norm();
  const double theta = std::atan2(s, c);
  check_cut_locus(theta, "log");
  if (s == 0.0) return Vec::Zero(p.size());
  w *= theta / s;
  return w - p.dot(w) * p;
}

Vec Sphere::transport(const Vec& p, const Vec& v, const Vec& q) const {
  if (p == q) return v;
  check_cut_locus(sphere_angle(p, q), "transport");
  const double c = p.dot(q);
  Vec out = v - (q.dot(v) / (1.0 + c)) * (p + q);
  return out - q.dot(out) * q;
}

Vec Sphere::midpoint(const Vec& p, const Vec& q) const {
  if (p == q) return p;
  check_cut_locus(sphere_angle(p, q), "midpoint");
  const Vec s = p + q;
  return s / s.norm();
}

double Sphere::dist(const Vec& p, const Vec& q) const { return sphere_angle(p, q); }

std::shared_ptr<const Manifold> make_manifold(std::string_view tag) {
  if (tag == "sphere2") return std::make_shared<Sphere>(3);
  if (tag == "so3-quat") return std::make_shared<UnitQuaternions>();
  constexpr std::string_view prefix = "euclidean:";
  if (tag.starts_with(prefix)) {
    const auto digits = tag.substr(prefix.size());
    std::size_t dim = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), dim);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && dim > 0)
      return std::make_shared<EuclideanSpace>(dim);
  }
  throw InvalidArgument("unknown manifold tag '" + std::string(tag) + "'");
}

double rotation_angle(const Vec& a, const Vec& b) {
  const double d = std::abs(a.dot(b));
  const Vec aligned = a.dot(b) < 0.0 ? Vec(-b) : b;
  return 2.0 * std::atan2((aligned - d * a).norm(), d);
}

std::vector<Vec> quaternion_sign_align(std::vector<Vec> quats, bool closed) {
  constexpr double kMaxStep = std::numbers::pi / 2;
  for (std::size_t i = 1; i < quats.size(); ++i) {
    if (quats[i].dot(quats[i - 1]) < 0.0) quats[i] = -quats[i];
    if (rotation_angle(quats[i - 1], quats[i]) >= kMaxStep)
      throw DensityError("consecutive rotations differ by at least pi/2", std::nullopt,
                         static_cast<std::ptrdiff_t>(i));
  }
  if (closed && quats.size() > 1) {
    const Vec& last = quats.back();
    if (last.dot(quats.front()) < 0.0)
      throw DensityError("closed rotation curve lifts to an open quaternion path",
                         std::nullopt, static_cast<std::ptrdiff_t>(quats.size() - 1));
    if (rotation_angle(last, quats.front()) >= kMaxStep)
      throw DensityError("consecutive rotations differ by at least pi/2", std::nullopt,
                         static_cast<std::ptrdiff_t>(quats.size() - 1));
  }
  return quats;
}

}  // namespace geomwave
