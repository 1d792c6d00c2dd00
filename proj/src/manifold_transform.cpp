#include "geomwave/manifold_transform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geomwave/errors.hpp"
#include "index_math.hpp"

namespace geomwave {

const char* to_string(BasePointRule rule) {
  return rule == BasePointRule::midpoint ? "midpoint" : "leftpoint";
}

BasePointRule parse_base_point_rule(std::string_view name) {
  if (name == "midpoint") return BasePointRule::midpoint;
  if (name == "leftpoint" || name == "left_point") return BasePointRule::left_point;
  throw InvalidArgument("unknown base point rule '" + std::string(name) + "'");
}

ManifoldHermiteSeq ManifoldHermiteSeq::unchecked(std::shared_ptr<const Manifold> manifold,
                                                 Boundary boundary, std::ptrdiff_t first,
                                                 std::vector<PointVector> entries, int level) {
  if (!manifold) throw InvalidArgument("manifold sequence needs a manifold");
  ManifoldHermiteSeq s;
  s.manifold_ = std::move(manifold);
  s.boundary_ = boundary;
  s.first_ = boundary == Boundary::periodic ? 0 : first;
  s.level_ = level;
  s.entries_ = std::move(entries);
  s.valid_.assign(s.entries_.size(), 1);
  const auto dim = static_cast<Eigen::Index>(s.manifold_->ambient_dim());
  for (const auto& e : s.entries_)
    if (e.p.size() != dim || e.v.size() != dim)
      throw InvalidArgument("entry dimension does not match manifold " + s.manifold_->tag());
  return s;
}

ManifoldHermiteSeq ManifoldHermiteSeq::periodic(std::shared_ptr<const Manifold> manifold,
                                                std::vector<PointVector> entries, int level) {
  auto s = unchecked(std::move(manifold), Boundary::periodic, 0, std::move(entries), level);
  for (auto& e : s.entries_) {
    e.p = s.manifold_->project_point(e.p);
    e.v = s.manifold_->project_tangent(e.p, e.v);
  }
  return s;
}

ManifoldHermiteSeq ManifoldHermiteSeq::interior(std::shared_ptr<const Manifold> manifold,
                                                std::ptrdiff_t first,
                                                std::vector<PointVector> entries, int level) {
  auto s = unchecked(std::move(manifold), Boundary::interior, first, std::move(entries), level);
  for (auto& e : s.entries_) {
    e.p = s.manifold_->project_point(e.p);
    e.v = s.manifold_->project_tangent(e.p, e.v);
  }
  return s;
}

std::size_t ManifoldHermiteSeq::slot(std::ptrdiff_t i) const {
  if (is_periodic()) {
    if (entries_.empty()) throw InvalidArgument("empty periodic manifold sequence");
    return static_cast<std::size_t>(
        detail::mod(i, static_cast<std::ptrdiff_t>(entries_.size())));
  }
  if (i < first_ || i > last())
    throw InvalidArgument("index " + std::to_string(i) + " outside window");
  return static_cast<std::size_t>(i - first_);
}

bool ManifoldHermiteSeq::valid(std::ptrdiff_t i) const noexcept {
  if (entries_.empty()) return false;
  if (!is_periodic() && (i < first_ || i > last())) return false;
  return valid_[slot(i)] != 0;
}

void ManifoldHermiteSeq::set_valid(std::ptrdiff_t i, bool valid) { valid_[slot(i)] = valid; }

const PointVector& ManifoldHermiteSeq::operator[](std::ptrdiff_t i) const {
  return entries_[slot(i)];
}
PointVector& ManifoldHermiteSeq::operator[](std::ptrdiff_t i) { return entries_[slot(i)]; }

HermiteSequence to_ambient(const ManifoldHermiteSeq& c) {
  const std::size_t dim = c.manifold().ambient_dim();
  auto s = c.is_periodic() ? HermiteSequence::periodic(dim, c.size(), c.level())
                           : HermiteSequence::interior(dim, c.first(), c.last(), c.level());
  for (std::ptrdiff_t i = c.first(); i <= c.last(); ++i) {
    const auto& e = c[i];
    std::copy(e.p.data(), e.p.data() + e.p.size(), s.value(i).begin());
    std::copy(e.v.data(), e.v.data() + e.v.size(), s.deriv(i).begin());
    s.set_valid(i, c.valid(i));
  }
  return s;
}

ManifoldHermiteSeq from_linear(const HermiteSequence& s) {
  std::vector<PointVector> entries;
  entries.reserve(s.size());
  const auto dim = static_cast<Eigen::Index>(s.dim());
  for (std::ptrdiff_t i = s.first(); i <= s.last(); ++i)
    entries.push_back({Eigen::Map<const Vec>(s.value(i).data(), dim),
                       Eigen::Map<const Vec>(s.deriv(i).data(), dim)});
  auto out = ManifoldHermiteSeq::unchecked(std::make_shared<EuclideanSpace>(s.dim()),
                                           s.boundary(), s.first(), std::move(entries),
                                           s.level());
  for (std::ptrdiff_t i = s.first(); i <= s.last(); ++i) out.set_valid(i, s.valid(i));
  return out;
}

ManifoldHermiteSeq manifold_subdivide_once(const Mask& mask, const ManifoldHermiteSeq& c,
                                           BasePointRule rule) {
  const Manifold& m = c.manifold();
  const int lo = mask.lo();
  const int hi = mask.hi();
  const auto dim = static_cast<Eigen::Index>(m.ambient_dim());

  std::ptrdiff_t out_first = 2 * c.first();
  std::ptrdiff_t out_last = 2 * c.last();
  if (c.is_periodic()) {
    const auto length = static_cast<std::ptrdiff_t>(c.size());
    if (length < std::max<std::ptrdiff_t>((mask.width() + 1) / 2, 2))
      throw InvalidArgument("periodic length " + std::to_string(length) +
                            " too small for manifold subdivision");
    out_first = 0;
    out_last = 2 * length - 1;
  }

  std::vector<PointVector> out(static_cast<std::size_t>(out_last - out_first + 1));
  std::vector<bool> ok(out.size(), true);
  for (std::ptrdiff_t j = out_first; j <= out_last; ++j) {
    const auto slot = static_cast<std::size_t>(j - out_first);
    const std::ptrdiff_t k_lo = detail::ceil_div(j - hi, 2);
    const std::ptrdiff_t k_hi = detail::floor_div(j - lo, 2);
    const std::ptrdiff_t i = detail::floor_div(j, 2);
    const bool odd = j - 2 * i == 1;
    const bool needs_next = odd && rule == BasePointRule::midpoint;

    bool usable = c.valid(i) && (!needs_next || c.valid(i + 1));
    for (std::ptrdiff_t k = k_lo; k <= k_hi && usable; ++k) usable = c.valid(k);
    if (!usable) {
      ok[slot] = false;
      out[slot] = {Vec::Zero(dim), Vec::Zero(dim)};
      continue;
    }

    try {
      const Vec base = needs_next ? m.midpoint(c[i].p, c[i + 1].p) : c[i].p;
      Vec point_acc = Vec::Zero(dim);
      Vec deriv_acc = Vec::Zero(dim);
      for (std::ptrdiff_t k = k_lo; k <= k_hi; ++k) {
        const BlockCoeff b = mask[static_cast<int>(j - 2 * k)];
        if (b.is_zero()) continue;
        const Vec l = m.log(base, c[k].p);
        const Vec t = m.transport(c[k].p, c[k].v, base);
        point_acc += b.a00 * l + b.a01 * t;
        deriv_acc += b.a10 * l + b.a11 * t;
      }
      Vec p = m.exp(base, point_acc);
      Vec v = m.transport(base, deriv_acc, p);
      out[slot] = {std::move(p), std::move(v)};
    } catch (const DensityError& e) {
      throw e.at_index(j);
    }
  }

  auto result = ManifoldHermiteSeq::unchecked(c.manifold_ptr(), c.boundary(), out_first,
                                              std::move(out), c.level() + 1);
  for (std::ptrdiff_t j = out_first; j <= out_last; ++j)
    if (!ok[static_cast<std::size_t>(j - out_first)]) result.set_valid(j, false);
  return result;
}

TangentPair transport_pair(const Manifold& m, const TangentPair& b, const Vec& p) {
  return {p, m.transport(b.base, b.u0, p), m.transport(b.base, b.u1, p)};
}

PointVector oplus(const Manifold& m, const PointVector& a, const TangentPair& b) {
  const TangentPair at_p = transport_pair(m, b, a.p);
  Vec q = m.exp(a.p, at_p.u0);
  Vec v = m.transport(a.p, a.v + at_p.u1, q);
  return {std::move(q), std::move(v)};
}

TangentPair ominus(const Manifold& m, const PointVector& a, const PointVector& b) {
  return {b.p, m.log(b.p, a.p), m.transport(a.p, a.v, b.p) - b.v};
}

namespace {

void check_metadata(const ManifoldPyramid& pyr, const MaskProvider& provider,
                    BasePointRule rule) {
  if (pyr.predictor != provider.kind() ||
      (provider.kind() == PredictorKind::exponential && pyr.lambda != provider.lambda()))
    throw MismatchError("pyramid predictor metadata does not match the requested predictor '" +
                        provider.name() + "'");
  if (pyr.rule != rule)
    throw MismatchError(std::string("pyramid base point rule '") + to_string(pyr.rule) +
                        "' does not match requested rule '" + to_string(rule) + "'");
}

}  // namespace

ManifoldPyramid decompose_manifold(const ManifoldHermiteSeq& fine, const MaskProvider& provider,
                                   BasePointRule rule, int levels) {
  if (!fine.is_periodic()) throw InvalidArgument("manifold decomposition needs periodic data");
  if (levels < 0) throw InvalidArgument("negative number of decomposition levels");
  const int top = fine.level();
  if (top - levels < 0)
    throw InvalidArgument("cannot decompose level-" + std::to_string(top) + " data by " +
                          std::to_string(levels) + " levels");
  if (fine.size() % (std::size_t{1} << levels) != 0)
    throw InvalidArgument("periodic length " + std::to_string(fine.size()) +
                          " not divisible by 2^" + std::to_string(levels));
  const Manifold& m = fine.manifold();

  ManifoldPyramid pyr;
  pyr.coarse_level = top - levels;
  pyr.predictor = provider.kind();
  pyr.lambda = provider.lambda();
  pyr.rule = rule;
  pyr.details.resize(static_cast<std::size_t>(levels));

  ManifoldHermiteSeq current = fine;
  for (int n = top - 1; n >= pyr.coarse_level; --n) {
    const auto half = static_cast<std::ptrdiff_t>(current.size() / 2);
    std::vector<PointVector> coarse_entries;
    coarse_entries.reserve(static_cast<std::size_t>(half));
    for (std::ptrdiff_t i = 0; i < half; ++i)
      coarse_entries.push_back({current[2 * i].p, 2.0 * current[2 * i].v});
    auto coarse = ManifoldHermiteSeq::unchecked(fine.manifold_ptr(), Boundary::periodic, 0,
                                                std::move(coarse_entries), n);

    auto& details = pyr.details[static_cast<std::size_t>(n - pyr.coarse_level)];
    details.reserve(static_cast<std::size_t>(half));
    try {
      const auto predicted = manifold_subdivide_once(provider.mask_at(n), coarse, rule);
      for (std::ptrdiff_t i = 0; i < half; ++i) {
        try {
          details.push_back(ominus(m, current[2 * i + 1], predicted[2 * i + 1]));
        } catch (const DensityError& e) {
          throw e.at_index(2 * i + 1);
        }
      }
    } catch (const DensityError& e) {
      throw e.at_level(n);
    }
    current = std::move(coarse);
  }
  pyr.coarse = std::move(current);
  return pyr;
}

ManifoldHermiteSeq reconstruct_manifold(const ManifoldPyramid& pyr, const MaskProvider& provider,
                                        BasePointRule rule) {
  check_metadata(pyr, provider, rule);
  if (!pyr.coarse.is_periodic())
    throw InvalidArgument("manifold reconstruction needs a periodic coarse sequence");
  const Manifold& m = pyr.coarse.manifold();

  ManifoldHermiteSeq c = pyr.coarse;
  c.set_level(pyr.coarse_level);
  for (int k = 0; k < pyr.levels(); ++k) {
    const int n = pyr.coarse_level + k;
    const auto& details = pyr.details[static_cast<std::size_t>(k)];
    const auto length = static_cast<std::ptrdiff_t>(c.size());
    if (static_cast<std::ptrdiff_t>(details.size()) != length)
      throw InvalidArgument("detail level " + std::to_string(n) + " has " +
                            std::to_string(details.size()) + " entries, expected " +
                            std::to_string(length));

    std::vector<PointVector> next(static_cast<std::size_t>(2 * length));
    try {
      const auto predicted = manifold_subdivide_once(provider.mask_at(n), c, rule);
      for (std::ptrdiff_t i = 0; i < length; ++i) {
        const TangentPair& d = details[static_cast<std::size_t>(i)];
        const PointVector& pred = predicted[2 * i + 1];
        const double gap = (d.base - pred.p).lpNorm<Eigen::Infinity>();
        if (!(gap <= kBaseTolerance))
          throw MismatchError("detail base mismatch at level " + std::to_string(n) +
                              ", index " + std::to_string(i) + ": stored base differs from " +
                              "the recomputed prediction by " + std::to_string(gap));
        next[static_cast<std::size_t>(2 * i)] = {c[i].p, 0.5 * c[i].v};
        try {
          next[static_cast<std::size_t>(2 * i + 1)] = oplus(m, pred, d);
        } catch (const DensityError& e) {
          throw e.at_index(2 * i + 1);
        }
      }
    } catch (const DensityError& e) {
      throw e.at_level(n);
    }
    c = ManifoldHermiteSeq::unchecked(c.manifold_ptr(), Boundary::periodic, 0, std::move(next),
                                      n + 1);
  }
  return c;
}

double detail_sup_norm(const std::vector<TangentPair>& details) {
  double norm = 0.0;
  for (const auto& d : details)
    norm = std::max({norm, d.u0.lpNorm<Eigen::Infinity>(), d.u1.lpNorm<Eigen::Infinity>()});
  return norm;
}

ProximityTerms proximity_terms(const Mask& mask, const ManifoldHermiteSeq& c,
                               BasePointRule rule) {
  const auto linear = apply_subdivision(mask, to_ambient(c));
  const auto nonlinear = to_ambient(manifold_subdivide_once(mask, c, rule));

  ProximityTerms t;
  t.numerator = sup_distance(linear, nonlinear);
  double base = 0.0;
  const std::ptrdiff_t stop = c.is_periodic() ? c.last() : c.last() - 1;
  for (std::ptrdiff_t i = c.first(); i <= stop; ++i) {
    if (!c.valid(i) || !c.valid(i + 1)) continue;
    base = std::max({base, (c[i + 1].p - c[i].p).lpNorm<Eigen::Infinity>(),
                     c[i].v.lpNorm<Eigen::Infinity>()});
  }
  t.denominator = base * base;
  t.ratio = t.denominator > 0.0 ? t.numerator / t.denominator : 0.0;
  return t;
}

double proximity_ratio(const Mask& mask, const ManifoldHermiteSeq& c, BasePointRule rule) {
  const ProximityTerms t = proximity_terms(mask, c, rule);
  if (!(t.denominator > 0.0))
    throw UndefinedRatioError("proximity ratio undefined: constant data with zero derivatives");
  return t.ratio;
}

double ominus_lipschitz_ratio(const Manifold& m, const PointVector& a, const PointVector& b) {
  const double flat = std::max((a.p - b.p).lpNorm<Eigen::Infinity>(),
                               (a.v - b.v).lpNorm<Eigen::Infinity>());
  if (!(flat > 0.0)) throw UndefinedRatioError("ominus Lipschitz ratio of coincident data");
  const TangentPair d = ominus(m, a, b);
  return std::max(d.u0.lpNorm<Eigen::Infinity>(), d.u1.lpNorm<Eigen::Infinity>()) / flat;
}

}  // namespace geomwave
