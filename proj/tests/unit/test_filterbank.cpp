#include <doctest.h>

#include <cmath>

#include "geomwave/errors.hpp"
#include "geomwave/filterbank.hpp"
#include "geomwave/laurent.hpp"
#include "test_support.hpp"

using namespace geomwave;

namespace {

std::vector<HermiteSequence> probes(Rng& rng, int count, std::size_t dim = 2) {
  std::vector<HermiteSequence> out;
  for (int k = 0; k < count; ++k) out.push_back(random_periodic(rng, dim, 8));
  return out;
}

}  // namespace

TEST_CASE("dual detail blocks of the cubic bank") {
  const auto f = prediction_correction_filters(cubic_hermite_mask());
  CHECK(f.dual_detail.lo() == 0);
  CHECK(f.dual_detail.hi() == 2);
  CHECK(f.dual_detail[1] == BlockCoeff::identity());
  CHECK(f.dual_detail[0] == BlockCoeff{-0.5, -0.25, 0.75, 0.25});
  // k = 2: (-1)^{-1} A_{-1} D^{-1} = -[[1/2, -1/4], [3/4, -1/4]].
  CHECK(f.dual_detail[2] == BlockCoeff{-0.5, 0.25, -0.75, 0.25});
  CHECK(f.detail == single_block_mask(1, BlockCoeff::identity()));
  CHECK(f.dual_primal == single_block_mask(0, BlockCoeff{1.0, 0.0, 0.0, 2.0}));
}

TEST_CASE("derived actions") {
  Rng rng(20);
  const auto f = prediction_correction_filters(cubic_hermite_mask());
  const auto c = random_periodic(rng, 3, 10);
  const auto coarse = apply_decomposition(f.dual_primal, c);
  for (std::ptrdiff_t j = 0; j < 5; ++j) {
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(coarse.value(j)[k] == c.value(2 * j)[k]);
      CHECK(coarse.deriv(j)[k] == 2.0 * c.deriv(2 * j)[k]);
    }
  }
  const auto d = random_periodic(rng, 3, 5);
  const auto placed = apply_subdivision(f.detail, d);
  for (std::ptrdiff_t k = 0; k < 5; ++k) {
    CHECK(testutil::max_abs_diff(placed.value(2 * k + 1), d.value(k)) == 0.0);
    for (double x : placed.value(2 * k)) CHECK(x == 0.0);
    for (double x : placed.deriv(2 * k)) CHECK(x == 0.0);
  }
}

TEST_CASE("non-interpolatory predictors are rejected") {
  CHECK_THROWS_AS(build_bank(MaskProvider::stationary(delta_mask())), InvalidArgument);
  CHECK_THROWS_AS(prediction_correction_filters(delta_mask()), InvalidArgument);
}

TEST_CASE("linear details vanish on reproduced data") {
  const ScalarFunction line{"x", [](double x) { return 2 * x - 1; }, [](double) { return 2.0; }};
  const auto bank = build_bank(MaskProvider::cubic());
  const auto fine = sample_scalar(line, 5, -8, 40);
  const auto pyr = decompose_linear(fine, bank, 3);
  for (const auto& d : pyr.details) CHECK(sup_norm(d) <= 1e-13);
  CHECK(pyr.coarse.level() == 2);
}

TEST_CASE("decomposition inverts pure prediction") {
  Rng rng(21);
  const auto provider = MaskProvider::exponential(1.5);
  const auto bank = build_bank(provider);
  auto coarse = random_periodic(rng, 2, 8, 2);
  const auto fine = run_scheme(provider, coarse, 3);
  const auto pyr = decompose_linear(fine, bank, 3);
  for (const auto& d : pyr.details) CHECK(sup_norm(d) <= 1e-13);
  CHECK(sup_distance(pyr.coarse, coarse) <= 1e-13);
}

TEST_CASE("linear perfect reconstruction") {
  Rng rng(22);
  for (const auto& provider : {MaskProvider::cubic(), MaskProvider::exponential(1.0)}) {
    const auto bank = build_bank(provider);
    for (int levels = 0; levels <= 6; ++levels) {
      for (std::size_t len : {64u, 512u}) {
        const auto fine = random_periodic(rng, 2, len, 7);
        const auto pyr = decompose_linear(fine, bank, levels);
        CHECK(pyr.levels() == levels);
        for (int k = 0; k < levels; ++k)
          CHECK(pyr.details[static_cast<std::size_t>(k)].size() ==
                (len >> (levels - k)));
        CHECK(sup_distance(reconstruct_linear(pyr, bank), fine) <= 1e-12);
      }
    }
  }
}

TEST_CASE("reconstruction from zero details is the scheme") {
  Rng rng(23);
  const auto provider = MaskProvider::exponential(-1.0);
  const auto bank = build_bank(provider);
  MultiscalePyramid pyr;
  pyr.coarse = random_periodic(rng, 1, 4, 1);
  pyr.coarse_level = 1;
  pyr.predictor = provider.kind();
  pyr.lambda = provider.lambda();
  for (int k = 0; k < 3; ++k)
    pyr.details.push_back(HermiteSequence::periodic(1, std::size_t{4} << k, 1 + k));
  CHECK(sup_distance(reconstruct_linear(pyr, bank), run_scheme(provider, pyr.coarse, 3)) == 0.0);
}

TEST_CASE("a single detail lands on its odd index") {
  const auto bank = build_bank(MaskProvider::cubic());
  MultiscalePyramid pyr;
  pyr.coarse = HermiteSequence::periodic(1, 4);
  auto d = HermiteSequence::periodic(1, 4);
  d.value(2)[0] = 1.0;
  d.deriv(2)[0] = -0.5;
  pyr.details.push_back(d);
  const auto fine = reconstruct_linear(pyr, bank);
  for (std::ptrdiff_t j = 0; j < 8; ++j) {
    CHECK(fine.value(j)[0] == (j == 5 ? 1.0 : 0.0));
    CHECK(fine.deriv(j)[0] == (j == 5 ? -0.5 : 0.0));
  }
}

TEST_CASE("pyramid shape errors") {
  Rng rng(24);
  const auto bank = build_bank(MaskProvider::cubic());
  CHECK_THROWS_AS(decompose_linear(random_periodic(rng, 1, 12, 4), bank, 3), InvalidArgument);
  CHECK_THROWS_AS(decompose_linear(random_periodic(rng, 1, 16, 2), bank, 3), InvalidArgument);
  auto pyr = decompose_linear(random_periodic(rng, 1, 16, 4), bank, 2);
  pyr.details[1] = HermiteSequence::periodic(1, 3);
  CHECK_THROWS_AS(reconstruct_linear(pyr, bank), InvalidArgument);
}

TEST_CASE("operator biorthogonality") {
  Rng rng(25);
  const auto cubic = build_bank(MaskProvider::cubic());
  CHECK(biorthogonality_residuals(cubic, 0, probes(rng, 100)).max() <= 1e-13);
  const std::vector<HermiteSequence> deltas{delta_sequence(2, 8, 0), delta_sequence(2, 8, 1)};
  CHECK(biorthogonality_residuals(cubic, 0, deltas).max() <= 1e-13);

  auto corrupted = cubic.level(0);
  corrupted.dual_detail.at(0).a01 += 1e-3;
  CHECK(biorthogonality_residuals(corrupted, probes(rng, 20)).max() >= 1e-4);

  const std::vector<HermiteSequence> short_probe{random_periodic(rng, 1, 2)};
  CHECK_THROWS_AS(biorthogonality_residuals(cubic, 0, short_probe), InvalidArgument);
}

TEST_CASE("Laurent symbols") {
  const auto delta = laurent_symbol(delta_mask());
  CHECK(delta.coeff(0) == BlockCoeff::identity());
  CHECK(delta.max_abs_coeff() == 1.0);

  const auto a = laurent_symbol(cubic_hermite_mask());
  CHECK(a.coeff(-1).a00 == 0.5);
  CHECK(a.coeff(0).a00 == 1.0);
  CHECK(a.coeff(1).a00 == 0.5);

  const auto f = prediction_correction_filters(cubic_hermite_mask());
  const auto b = laurent_symbol(f.detail);
  CHECK(b.min_exponent() == 1);
  CHECK(b.max_exponent() == 1);
  CHECK(b.coeff(1) == BlockCoeff::identity());

  // Sharp of z^2 M is z^{-2} M^T.
  const BlockCoeff m{1, 2, 3, 4};
  const auto s = MatrixLaurent::monomial(2, m).sharp();
  CHECK(s.coeff(-2) == m.transposed());
  // (z I)(z^{-1} I) = I; negated argument flips odd powers.
  const auto prod = MatrixLaurent::monomial(1, BlockCoeff::identity()) *
                    MatrixLaurent::monomial(-1, BlockCoeff::identity());
  CHECK(prod.coeff(0) == BlockCoeff::identity());
  CHECK(a.negated_argument().coeff(1).a00 == -0.5);
}

TEST_CASE("symbol biorthogonality") {
  CHECK(symbol_biorthogonality_residuals(build_bank(MaskProvider::cubic()), 0).max() <= 1e-13);
  const auto exp1 = build_bank(MaskProvider::exponential(1.0));
  for (int n = 0; n <= 5; ++n) CHECK(symbol_biorthogonality_residuals(exp1, n).max() <= 1e-12);
}

TEST_CASE("perturbations show up in the matching identity") {
  const double eps = 1e-3;
  SUBCASE("odd predictor block, fixed dual detail") {
    auto f = prediction_correction_filters(cubic_hermite_mask());
    f.primal.at(1).a00 += eps;
    const auto r = symbol_biorthogonality_residuals(f);
    CHECK(r.detail_of_primal >= eps / 2);
    CHECK(r.primal_identity <= 1e-15);
  }
  SUBCASE("even predictor block") {
    auto f = prediction_correction_filters(cubic_hermite_mask());
    f.primal.at(0).a11 += eps;
    const auto r = symbol_biorthogonality_residuals(f);
    CHECK(r.primal_identity >= eps / 2);
  }
}

TEST_CASE("operator and symbol forms agree under perturbations") {
  Rng rng(26);
  std::uniform_real_distribution<double> u(-1e-3, 1e-3);
  std::uniform_int_distribution<int> pick(0, 3);
  int agreed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    LevelFilters f;
    const bool consistent = trial % 2 == 0;
    Mask a = cubic_hermite_mask();
    const int k = pick(rng) < 2 ? 1 : -1;
    a.at(k) = a[k] + BlockCoeff{u(rng), u(rng), u(rng), u(rng)};
    if (consistent) {
      f = prediction_correction_filters(a);
    } else {
      f = prediction_correction_filters(cubic_hermite_mask());
      f.primal = a;
    }
    const bool op = biorthogonality_residuals(f, probes(rng, 10)).all_within(1e-13);
    const bool sym = symbol_biorthogonality_residuals(f).all_within(1e-13);
    CHECK(op == consistent);
    agreed += op == sym;
  }
  CHECK(agreed == 200);
}

TEST_CASE("vanishing moments") {
  const auto cubic = build_bank(MaskProvider::cubic());
  const auto basis = ReproductionSpace::poly_cubic().basis();
  CHECK(vanishing_moment_residual(cubic, basis[1], 0, -4, 4) <= 1e-13);
  CHECK(vanishing_moment_residual(cubic, basis[3], 0, -4, 4) <= 1e-12);
  const auto exp1 = MaskProvider::exponential(1.0);
  const ScalarFunction ex{"e^x", [](double x) { return std::exp(x); },
                          [](double x) { return std::exp(x); }};
  for (int n = 0; n <= 6; ++n)
    CHECK(vanishing_moment_residual(build_bank(exp1), ex, n, -4, 4) <= 1e-10);
  const ScalarFunction quartic{"x^4", [](double x) { return x * x * x * x; },
                               [](double x) { return 4 * x * x * x; }};
  CHECK(vanishing_moment_residual(cubic, quartic, 0, -4, 4) > 1e-3);
}

TEST_CASE("perfect reconstruction identity") {
  Rng rng(27);
  for (const auto& provider : {MaskProvider::cubic(), MaskProvider::exponential(0.5),
                               MaskProvider::exponential(2.0)}) {
    const auto bank = build_bank(provider);
    for (int n = 0; n <= 5; ++n)
      CHECK(perfect_reconstruction_residual(bank.level(n), random_periodic(rng, 3, 16)) <= 1e-12);
  }
}
