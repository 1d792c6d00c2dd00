#pragma once

// Manifold-valued Hermite subdivision T_A, the fiber operations oplus/ominus
// and the manifold prediction-correction pyramid.

#include <memory>
#include <vector>

#include "geomwave/manifold.hpp"
#include "geomwave/predictors.hpp"
#include "geomwave/sequence.hpp"

namespace geomwave {

/// Point-vector Hermite datum (p, v) with v in T_p M.
struct PointVector {
  Vec p;
  Vec v;
};

/// Two tangent vectors in the same fiber T_q M (+) T_q M.
struct TangentPair {
  Vec base;
  Vec u0;
  Vec u1;
};

enum class BasePointRule {
  midpoint,    // m_{2i} = p_i, m_{2i+1} = geodesic midpoint of p_i, p_{i+1}
  left_point,  // m_{2i} = m_{2i+1} = p_i
};

const char* to_string(BasePointRule rule);
BasePointRule parse_base_point_rule(std::string_view name);

class ManifoldHermiteSeq {
 public:
  ManifoldHermiteSeq() = default;

  /// Periodic sequence; points are projected onto M and vectors onto T_p M.
  static ManifoldHermiteSeq periodic(std::shared_ptr<const Manifold> manifold,
                                     std::vector<PointVector> entries, int level);
  /// Interior window starting at `first`; entries are projected.
  static ManifoldHermiteSeq interior(std::shared_ptr<const Manifold> manifold,
                                     std::ptrdiff_t first, std::vector<PointVector> entries,
                                     int level);
  /// No projection; the caller guarantees the invariants.
  static ManifoldHermiteSeq unchecked(std::shared_ptr<const Manifold> manifold,
                                      Boundary boundary, std::ptrdiff_t first,
                                      std::vector<PointVector> entries, int level);

  const Manifold& manifold() const { return *manifold_; }
  const std::shared_ptr<const Manifold>& manifold_ptr() const noexcept { return manifold_; }
  Boundary boundary() const noexcept { return boundary_; }
  bool is_periodic() const noexcept { return boundary_ == Boundary::periodic; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::ptrdiff_t first() const noexcept { return first_; }
  std::ptrdiff_t last() const noexcept {
    return first_ + static_cast<std::ptrdiff_t>(entries_.size()) - 1;
  }
  int level() const noexcept { return level_; }
  void set_level(int level) noexcept { level_ = level; }

  bool valid(std::ptrdiff_t i) const noexcept;
  void set_valid(std::ptrdiff_t i, bool valid);

  /// Entry i (wrapped modulo the length in periodic mode).
  const PointVector& operator[](std::ptrdiff_t i) const;
  PointVector& operator[](std::ptrdiff_t i);
  const std::vector<PointVector>& entries() const noexcept { return entries_; }

 private:
  std::size_t slot(std::ptrdiff_t i) const;

  std::shared_ptr<const Manifold> manifold_;
  Boundary boundary_ = Boundary::periodic;
  std::ptrdiff_t first_ = 0;
  int level_ = 0;
  std::vector<PointVector> entries_;
  std::vector<unsigned char> valid_;
};

/// Ambient coordinates as a linear Hermite sequence of dimension ambient_dim.
HermiteSequence to_ambient(const ManifoldHermiteSeq& c);
/// Reads a linear sequence as Euclidean manifold data.
ManifoldHermiteSeq from_linear(const HermiteSequence& s);

/// One step of T_A. DensityError carries the output index on failure.
ManifoldHermiteSeq manifold_subdivide_once(const Mask& mask, const ManifoldHermiteSeq& c,
                                           BasePointRule rule = BasePointRule::midpoint);

/// a (+) b: q = exp_p([u0]_p), result (q, [v]_q + [[u1]_p]_q). The pair b is
/// first carried into the fiber over p, so (a (+) b) (-) a = [b]_p.
PointVector oplus(const Manifold& m, const PointVector& a, const TangentPair& b);
/// (q, u) (-) (p, v) = (log_p q, [u]_p - v), based at p.
TangentPair ominus(const Manifold& m, const PointVector& a, const PointVector& b);
/// [b]_p: both components transported to T_p M.
TangentPair transport_pair(const Manifold& m, const TangentPair& b, const Vec& p);

struct ManifoldPyramid {
  ManifoldHermiteSeq coarse;
  /// details[k][i] is d^{[coarse_level + k]}_i, based at the predicted point
  /// (T_{A} c^{[n]})_{2i+1}.
  std::vector<std::vector<TangentPair>> details;
  int coarse_level = 0;
  PredictorKind predictor = PredictorKind::cubic;
  double lambda = 0.0;
  BasePointRule rule = BasePointRule::midpoint;

  int levels() const noexcept { return static_cast<int>(details.size()); }
};

ManifoldPyramid decompose_manifold(const ManifoldHermiteSeq& fine, const MaskProvider& provider,
                                   BasePointRule rule, int levels);

/// Throws MismatchError when the pyramid metadata disagrees with
/// provider/rule or a stored detail base differs from the recomputed
/// prediction by more than kBaseTolerance (ambient max-norm).
ManifoldHermiteSeq reconstruct_manifold(const ManifoldPyramid& pyramid,
                                        const MaskProvider& provider, BasePointRule rule);
inline constexpr double kBaseTolerance = 1e-9;

/// Sup norm of the level-k details (max-abs ambient component of u0, u1).
double detail_sup_norm(const std::vector<TangentPair>& details);

struct ProximityTerms {
  double numerator = 0.0;    // ||(S_A - T_A) c||_inf in ambient coordinates
  double denominator = 0.0;  // ||(Delta p, v)||_inf^2
  double ratio = 0.0;
};

ProximityTerms proximity_terms(const Mask& mask, const ManifoldHermiteSeq& c,
                               BasePointRule rule = BasePointRule::midpoint);
/// Throws UndefinedRatioError for a vanishing denominator.
double proximity_ratio(const Mask& mask, const ManifoldHermiteSeq& c,
                       BasePointRule rule = BasePointRule::midpoint);

/// ||a (-) b||_inf / ||a - b||_inf with the flat difference taken in ambient
/// coordinates. Throws UndefinedRatioError for coincident inputs.
double ominus_lipschitz_ratio(const Manifold& m, const PointVector& a, const PointVector& b);

}  // namespace geomwave
