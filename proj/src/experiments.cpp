#include "geomwave/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "geomwave/errors.hpp"
#include "geomwave/filterbank.hpp"

namespace geomwave {

std::pair<double, double> least_squares_line(const std::vector<double>& x,
                                             const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InvalidArgument("least squares needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("least squares needs two distinct abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

namespace {

ManifoldHermiteSeq even_subsample(const ManifoldHermiteSeq& c) {
  std::vector<PointVector> entries;
  for (std::ptrdiff_t i = 0; 2 * i < static_cast<std::ptrdiff_t>(c.size()); ++i)
    entries.push_back({c[2 * i].p, 2.0 * c[2 * i].v});
  return ManifoldHermiteSeq::unchecked(c.manifold_ptr(), Boundary::periodic, 0,
                                       std::move(entries), c.level() - 1);
}

std::vector<double> manifold_norms(const SignalSpec& spec, const MaskProvider& provider,
                                   BasePointRule rule, int nmin, int nmax) {
  std::vector<double> norms(static_cast<std::size_t>(nmax - nmin));
  std::optional<DensityError> coarsest;
  ManifoldHermiteSeq current = sample_signal(spec, nmax);
  for (int n = nmax - 1; n >= nmin; --n) {
    try {
      auto pyr = decompose_manifold(current, provider, rule, 1);
      norms[static_cast<std::size_t>(n - nmin)] = detail_sup_norm(pyr.details.front());
      current = std::move(pyr.coarse);
    } catch (const DensityError& e) {
      coarsest = e;
      current = even_subsample(current);
    }
  }
  if (coarsest) throw *coarsest;
  return norms;
}

std::vector<double> linear_norms(const SignalSpec& spec, const MaskProvider& provider, int nmin,
                                 int nmax) {
  const auto pyr =
      decompose_linear(sample_signal_linear(spec, nmax), build_bank(provider), nmax - nmin);
  std::vector<double> norms;
  for (const auto& d : pyr.details) norms.push_back(sup_norm(d));
  return norms;
}

}  // namespace

DecayReport decay_experiment(const SignalSpec& spec, const MaskProvider& provider,
                             BasePointRule rule, int nmin, int nmax, int fit_levels) {
  if (nmin < 0 || nmax <= nmin)
    throw InvalidArgument("decay levels need 0 <= nmin < nmax");
  if (fit_levels < 2) throw InvalidArgument("slope fit needs at least two levels");

  DecayReport r;
  r.preset = spec.preset;
  r.manifold = spec.manifold->tag();
  r.predictor = provider.name();
  r.lambda = provider.lambda();
  r.rule = rule;
  r.nmin = nmin;
  r.nmax = nmax;

  const bool linear = spec.domain == Boundary::interior;
  if (linear && !spec.manifold->is_euclidean())
    throw InvalidArgument("interior signals are only supported on Euclidean space");
  r.sup_norms = linear ? linear_norms(spec, provider, nmin, nmax)
                       : manifold_norms(spec, provider, rule, nmin, nmax);
  for (int n = nmin; n < nmax; ++n) r.levels.push_back(n);

  for (std::size_t k = 0; k + 1 < r.sup_norms.size(); ++k)
    r.log2_ratios.push_back(std::log2(r.sup_norms[k + 1] / r.sup_norms[k]));
  for (std::size_t k = 0; k < r.sup_norms.size(); ++k)
    r.constant_c = std::max(r.constant_c, std::ldexp(r.sup_norms[k], 2 * r.levels[k]));

  r.exact_annihilation = std::ranges::all_of(r.sup_norms,
                                             [](double v) { return v <= kAnnihilationTol; });
  const int count = std::min<int>(fit_levels, static_cast<int>(r.levels.size()));
  r.fit_last = r.levels.back();
  r.fit_first = r.fit_last - count + 1;
  if (!r.exact_annihilation && count >= 2) {
    std::vector<double> x, y;
    for (std::size_t k = r.levels.size() - static_cast<std::size_t>(count);
         k < r.levels.size(); ++k) {
      x.push_back(r.levels[k]);
      y.push_back(std::log2(r.sup_norms[k]));
    }
    if (std::ranges::all_of(y, [](double v) { return std::isfinite(v); })) {
      const auto [slope, intercept] = least_squares_line(x, y);
      r.slope = slope;
      r.intercept = intercept;
    }
  }
  return r;
}

}  // namespace geomwave
