#include "geomwave/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "geomwave/errors.hpp"
#include "index_math.hpp"

namespace geomwave {

LevelFilters prediction_correction_filters(const Mask& predictor) {
  if (!interpolatory_check(predictor))
    throw InvalidArgument("prediction-correction bank needs an interpolatory predictor");
  const BlockCoeff d_inv = diag_d_power(-1);
  // (B̃^T)_k = (-1)^{1-k} A_{1-k} D^{-1} for 1 - k in [lo, hi].
  std::vector<BlockCoeff> dual_detail;
  for (int k = 1 - predictor.hi(); k <= 1 - predictor.lo(); ++k) {
    const double sign = (1 - k) % 2 == 0 ? 1.0 : -1.0;
    dual_detail.push_back(sign * (predictor[1 - k] * d_inv));
  }
  return {predictor, single_block_mask(1, BlockCoeff::identity()), single_block_mask(0, d_inv),
          Mask(1 - predictor.hi(), std::move(dual_detail))};
}

PredictionCorrectionBank::PredictionCorrectionBank(MaskProvider provider)
    : provider_(std::move(provider)) {
  if (!interpolatory_check(provider_.mask_at(0)))
    throw InvalidArgument("predictor '" + provider_.name() + "' is not interpolatory");
}

LevelFilters PredictionCorrectionBank::level(int n) const {
  return prediction_correction_filters(provider_.mask_at(n));
}

PredictionCorrectionBank build_bank(const MaskProvider& provider) {
  return PredictionCorrectionBank(provider);
}

namespace {

void require_same_boundary(const HermiteSequence& a, const HermiteSequence& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch between pyramid levels");
  if (a.is_periodic() != b.is_periodic())
    throw InvalidArgument("boundary mismatch between pyramid levels");
}

}  // namespace

MultiscalePyramid decompose_linear(const HermiteSequence& fine,
                                   const PredictionCorrectionBank& bank, int levels) {
  if (levels < 0) throw InvalidArgument("negative number of decomposition levels");
  const int top = fine.level();
  if (top - levels < 0)
    throw InvalidArgument("cannot decompose level-" + std::to_string(top) + " data by " +
                          std::to_string(levels) + " levels");
  if (fine.is_periodic() && fine.size() % (std::size_t{1} << levels) != 0)
    throw InvalidArgument("periodic length " + std::to_string(fine.size()) +
                          " not divisible by 2^" + std::to_string(levels));

  MultiscalePyramid pyr;
  pyr.coarse_level = top - levels;
  pyr.predictor = bank.provider().kind();
  pyr.lambda = bank.provider().lambda();
  pyr.details.resize(static_cast<std::size_t>(levels));

  HermiteSequence current = fine;
  // D^{-1} doubles the derivative component.
  const double d_inv = 2.0;
  for (int n = top - 1; n >= pyr.coarse_level; --n) {
    HermiteSequence coarse =
        current.is_periodic()
            ? HermiteSequence::periodic(current.dim(), current.size() / 2, n)
            : HermiteSequence::interior(current.dim(), detail::ceil_div(current.first(), 2),
                                        detail::floor_div(current.last(), 2), n);
    for (std::ptrdiff_t i = coarse.first(); i <= coarse.last(); ++i) {
      if (!current.valid(2 * i)) {
        coarse.set_valid(i, false);
        continue;
      }
      std::ranges::copy(current.value(2 * i), coarse.value(i).begin());
      std::ranges::transform(current.deriv(2 * i), coarse.deriv(i).begin(),
                             [&](double x) { return d_inv * x; });
    }

    const HermiteSequence predicted = apply_subdivision(bank.provider().mask_at(n), coarse);

    for (std::ptrdiff_t i = coarse.first(); i <= coarse.last(); ++i) {
      if (!current.valid(2 * i) || !predicted.valid(2 * i)) continue;
      const auto cp = std::as_const(current).value(2 * i);
      const auto cv = std::as_const(current).deriv(2 * i);
      const auto pp = predicted.value(2 * i), pv = predicted.deriv(2 * i);
      for (std::size_t c = 0; c < current.dim(); ++c) {
        const double tol = 1e-12 * (1.0 + std::abs(cp[c]) + std::abs(cv[c]));
        if (std::abs(cp[c] - pp[c]) > tol || std::abs(cv[c] - pv[c]) > tol)
          throw Error("nonzero even-index residual at level " + std::to_string(n) +
                      ", index " + std::to_string(i) + ": predictor is not interpolatory");
      }
    }

    HermiteSequence d =
        current.is_periodic()
            ? HermiteSequence::periodic(current.dim(), coarse.size(), n)
            : HermiteSequence::interior(current.dim(), detail::ceil_div(current.first() - 1, 2),
                                        detail::floor_div(current.last() - 1, 2), n);
    for (std::ptrdiff_t i = d.first(); i <= d.last(); ++i) {
      const std::ptrdiff_t j = 2 * i + 1;
      if (!current.valid(j) || !predicted.valid(j)) {
        d.set_valid(i, false);
        continue;
      }
      const auto cp = std::as_const(current).value(j), cv = std::as_const(current).deriv(j);
      const auto pp = predicted.value(j), pv = predicted.deriv(j);
      auto dp = d.value(i), dv = d.deriv(i);
      for (std::size_t c = 0; c < current.dim(); ++c) {
        dp[c] = cp[c] - pp[c];
        dv[c] = cv[c] - pv[c];
      }
    }
    pyr.details[static_cast<std::size_t>(n - pyr.coarse_level)] = std::move(d);
    current = std::move(coarse);
  }
  pyr.coarse = std::move(current);
  return pyr;
}

HermiteSequence reconstruct_linear(const MultiscalePyramid& pyr,
                                   const PredictionCorrectionBank& bank) {
  HermiteSequence c = pyr.coarse;
  c.set_level(pyr.coarse_level);
  for (int k = 0; k < pyr.levels(); ++k) {
    const int n = pyr.coarse_level + k;
    const HermiteSequence& d = pyr.details[static_cast<std::size_t>(k)];
    require_same_boundary(c, d);
    if (c.is_periodic() && d.size() != c.size())
      throw InvalidArgument("detail level " + std::to_string(n) + " has length " +
                            std::to_string(d.size()) + ", expected " + std::to_string(c.size()));

    HermiteSequence next = apply_subdivision(bank.provider().mask_at(n), c);
    const double half = 0.5;
    for (std::ptrdiff_t i = c.first(); i <= c.last(); ++i) {
      if (!c.valid(i)) continue;
      std::ranges::copy(c.value(i), next.value(2 * i).begin());
      std::ranges::transform(c.deriv(i), next.deriv(2 * i).begin(),
                             [&](double x) { return half * x; });
    }
    for (std::ptrdiff_t j = next.first(); j <= next.last(); ++j) {
      if (detail::mod(j, 2) == 0 || !next.valid(j)) continue;
      const std::ptrdiff_t di = detail::floor_div(j - 1, 2);
      if (!d.valid(di)) {
        next.set_valid(j, false);
        continue;
      }
      auto np = next.value(j), nv = next.deriv(j);
      auto dp = d.value(di), dv = d.deriv(di);
      for (std::size_t comp = 0; comp < c.dim(); ++comp) {
        np[comp] += dp[comp];
        nv[comp] += dv[comp];
      }
    }
    c = std::move(next);
  }
  return c;
}

double BiorthogonalityResiduals::max() const {
  return std::max({primal_identity, detail_identity, primal_of_detail, detail_of_primal});
}

namespace {

int reach(const Mask& m) { return std::max(std::abs(m.lo()), std::abs(m.hi())); }

}  // namespace

BiorthogonalityResiduals biorthogonality_residuals(const LevelFilters& f,
                                                   std::span<const HermiteSequence> probes) {
  const int n_reach = std::max({reach(f.primal), reach(f.detail), reach(f.dual_primal),
                                reach(f.dual_detail), 1});
  BiorthogonalityResiduals r;
  for (const auto& c : probes) {
    if (!c.is_periodic() || c.size() < static_cast<std::size_t>(4 * n_reach))
      throw InvalidArgument("biorthogonality probe must be periodic with length >= " +
                            std::to_string(4 * n_reach));
    const auto sa = apply_subdivision(f.primal, c);
    const auto sb = apply_subdivision(f.detail, c);
    r.primal_identity =
        std::max(r.primal_identity, sup_distance(apply_decomposition(f.dual_primal, sa), c));
    r.detail_identity =
        std::max(r.detail_identity, sup_distance(apply_decomposition(f.dual_detail, sb), c));
    r.primal_of_detail =
        std::max(r.primal_of_detail, sup_norm(apply_decomposition(f.dual_primal, sb)));
    r.detail_of_primal =
        std::max(r.detail_of_primal, sup_norm(apply_decomposition(f.dual_detail, sa)));
  }
  return r;
}

BiorthogonalityResiduals biorthogonality_residuals(const PredictionCorrectionBank& bank,
                                                   int level,
                                                   std::span<const HermiteSequence> probes) {
  return biorthogonality_residuals(bank.level(level), probes);
}

BiorthogonalityResiduals symbol_biorthogonality_residuals(const LevelFilters& f) {
  const MatrixLaurent a = laurent_symbol(f.primal);
  const MatrixLaurent b = laurent_symbol(f.detail);
  // The stored dual masks are the transposed filters, so the filter symbols
  // are their blockwise transposes.
  const MatrixLaurent a_tilde_sharp = laurent_symbol(f.dual_primal).transposed().sharp();
  const MatrixLaurent b_tilde_sharp = laurent_symbol(f.dual_detail).transposed().sharp();
  const MatrixLaurent two_i = MatrixLaurent::constant(2.0 * BlockCoeff::identity());

  auto pairing = [](const MatrixLaurent& dual_sharp, const MatrixLaurent& primal) {
    return dual_sharp * primal + dual_sharp.negated_argument() * primal.negated_argument();
  };
  BiorthogonalityResiduals r;
  r.primal_identity = (pairing(a_tilde_sharp, a) - two_i).max_abs_coeff();
  r.detail_identity = (pairing(b_tilde_sharp, b) - two_i).max_abs_coeff();
  r.primal_of_detail = pairing(a_tilde_sharp, b).max_abs_coeff();
  r.detail_of_primal = pairing(b_tilde_sharp, a).max_abs_coeff();
  return r;
}

BiorthogonalityResiduals symbol_biorthogonality_residuals(const PredictionCorrectionBank& bank,
                                                          int level) {
  return symbol_biorthogonality_residuals(bank.level(level));
}

double perfect_reconstruction_residual(const LevelFilters& f, const HermiteSequence& c) {
  if (!c.is_periodic()) throw InvalidArgument("perfect reconstruction check needs periodic data");
  const auto coarse = apply_decomposition(f.dual_primal, c);
  const auto details = apply_decomposition(f.dual_detail, c);
  const auto rebuilt =
      axpy(1.0, apply_subdivision(f.primal, coarse), apply_subdivision(f.detail, details));
  return sup_distance(rebuilt, c);
}

double vanishing_moment_residual(const PredictionCorrectionBank& bank, const ScalarFunction& f,
                                 int level, std::ptrdiff_t first, std::ptrdiff_t last) {
  if (last - first < 2)
    throw InvalidArgument("vanishing moment window needs at least three coarse samples");
  const auto fine = sample_scalar(f, level + 1, 2 * first, 2 * last);
  return sup_norm(apply_decomposition(bank.level(level).dual_detail, fine));
}

}  // namespace geomwave
