#pragma once

// Closed-form Riemannian geometry on embedded manifolds. Points and tangent
// vectors live in the ambient coordinates (R^m, R^3 for S^2, R^4 for unit
// quaternions). All transports run along the connecting minimal geodesic.

#include <Eigen/Core>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace geomwave {

using Vec = Eigen::VectorXd;

/// Sphere cut-locus margin: angles at or beyond pi - kCutLocusMargin are
/// rejected as "not dense enough".
inline constexpr double kCutLocusMargin = 1e-6;

class Manifold {
 public:
  virtual ~Manifold() = default;

  /// File-format tag: "euclidean:<m>", "sphere2" or "so3-quat".
  virtual std::string tag() const = 0;
  virtual std::size_t ambient_dim() const = 0;
  /// Largest admissible geodesic distance between points passed to log,
  /// transport and midpoint (infinity for Euclidean space).
  virtual double injectivity_radius() const = 0;

  /// Nearest point on the manifold (renormalisation for spheres).
  virtual Vec project_point(const Vec& x) const = 0;
  /// Orthogonal projection of v onto T_p M.
  virtual Vec project_tangent(const Vec& p, const Vec& v) const = 0;

  virtual Vec exp(const Vec& p, const Vec& v) const = 0;
  virtual Vec log(const Vec& p, const Vec& q) const = 0;
  /// [v]_q: parallel transport of v in T_p M to T_q M.
  virtual Vec transport(const Vec& p, const Vec& v, const Vec& q) const = 0;
  virtual Vec midpoint(const Vec& p, const Vec& q) const = 0;
  virtual double dist(const Vec& p, const Vec& q) const = 0;

  /// Whether transport is an isometry (true for every shipped manifold).
  virtual bool metric() const { return true; }
  bool is_euclidean() const { return tag().rfind("euclidean:", 0) == 0; }
};

class EuclideanSpace final : public Manifold {
 public:
  explicit EuclideanSpace(std::size_t dim);

  std::string tag() const override;
  std::size_t ambient_dim() const override { return dim_; }
  double injectivity_radius() const override;
  Vec project_point(const Vec& x) const override { return x; }
  Vec project_tangent(const Vec&, const Vec& v) const override { return v; }
  Vec exp(const Vec& p, const Vec& v) const override { return p + v; }
  Vec log(const Vec& p, const Vec& q) const override { return q - p; }
  Vec transport(const Vec&, const Vec& v, const Vec&) const override { return v; }
  Vec midpoint(const Vec& p, const Vec& q) const override { return 0.5 * (p + q); }
  double dist(const Vec& p, const Vec& q) const override { return (q - p).norm(); }

 private:
  std::size_t dim_;
};

/// Unit sphere S^{n-1} in R^n with the round metric.
class Sphere : public Manifold {
 public:
  explicit Sphere(std::size_t ambient_dim);

  std::string tag() const override;
  std::size_t ambient_dim() const override { return dim_; }
  double injectivity_radius() const override;
  Vec project_point(const Vec& x) const override;
  Vec project_tangent(const Vec& p, const Vec& v) const override;
  Vec exp(const Vec& p, const Vec& v) const override;
  Vec log(const Vec& p, const Vec& q) const override;
  Vec transport(const Vec& p, const Vec& v, const Vec& q) const override;
  Vec midpoint(const Vec& p, const Vec& q) const override;
  double dist(const Vec& p, const Vec& q) const override;

 private:
  std::size_t dim_;
};

/// SO(3) as unit quaternions with the bi-invariant geometry of S^3. Points are
/// treated as a fixed lift; see quaternion_sign_align.
class UnitQuaternions final : public Sphere {
 public:
  UnitQuaternions() : Sphere(4) {}
  std::string tag() const override { return "so3-quat"; }
};

/// Parses a manifold tag. Throws InvalidArgument on unknown tags.
std::shared_ptr<const Manifold> make_manifold(std::string_view tag);

/// Flips quaternion signs so consecutive entries have nonnegative inner
/// product. Throws DensityError (with the index) if two consecutive rotations
/// differ by an angle of pi/2 or more. With `closed`, the wrap-around pair is
/// checked too and must not need a flip.
std::vector<Vec> quaternion_sign_align(std::vector<Vec> quats, bool closed = false);

/// Relative rotation angle between unit quaternions a and b.
double rotation_angle(const Vec& a, const Vec& b);

}  // namespace geomwave
