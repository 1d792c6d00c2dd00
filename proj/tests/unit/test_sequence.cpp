#include <doctest.h>

#include <cmath>

#include "geomwave/errors.hpp"
#include "geomwave/predictors.hpp"
#include "geomwave/sequence.hpp"
#include "test_support.hpp"

using namespace geomwave;
using testutil::random_mask;
using testutil::scalar_periodic;

TEST_CASE("delta mask upsamples") {
  Rng rng(1);
  const auto s = random_periodic(rng, 2, 5);
  const auto up = apply_subdivision(delta_mask(), s);
  REQUIRE(up.size() == 10);
  for (std::ptrdiff_t j = 0; j < 5; ++j) {
    CHECK(testutil::max_abs_diff(up.value(2 * j), s.value(j)) == 0.0);
    CHECK(testutil::max_abs_diff(up.deriv(2 * j), s.deriv(j)) == 0.0);
    for (double x : up.value(2 * j + 1)) CHECK(x == 0.0);
    for (double x : up.deriv(2 * j + 1)) CHECK(x == 0.0);
  }
}

TEST_CASE("cubic mask keeps constants") {
  const auto s = scalar_periodic({{2.5, 0}, {2.5, 0}, {2.5, 0}, {2.5, 0}});
  const auto out = apply_subdivision(cubic_hermite_mask(), s);
  for (std::ptrdiff_t j = 0; j < 8; ++j) {
    CHECK(out.value(j)[0] == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(std::abs(out.deriv(j)[0]) <= 1e-15);
  }
}

TEST_CASE("cubic mask on normalized linear data") {
  // s_j = (j, 1) on an interior window; refined entry k must be (k/2, 1/2).
  auto s = HermiteSequence::interior(1, -4, 4);
  for (std::ptrdiff_t j = -4; j <= 4; ++j) {
    s.value(j)[0] = static_cast<double>(j);
    s.deriv(j)[0] = 1.0;
  }
  const auto out = apply_subdivision(cubic_hermite_mask(), s);
  CHECK(out.first() == -8);
  CHECK(out.last() == 8);
  int checked = 0;
  for (std::ptrdiff_t k = out.first(); k <= out.last(); ++k) {
    if (!out.valid(k)) continue;
    CHECK(out.value(k)[0] == doctest::Approx(k / 2.0).epsilon(1e-15));
    CHECK(out.deriv(k)[0] == doctest::Approx(0.5).epsilon(1e-15));
    ++checked;
  }
  CHECK(checked == 17);
}

TEST_CASE("interior windows mark stencils that leave the window") {
  Rng rng(2);
  const Mask wide = random_mask(rng, -3, 3);
  auto s = HermiteSequence::interior(1, 0, 9);
  const auto out = apply_subdivision(wide, s);
  for (std::ptrdiff_t j = out.first(); j <= out.last(); ++j) {
    const bool inside = std::ceil((j - 3) / 2.0) >= 0 && std::floor((j + 3) / 2.0) <= 9;
    CHECK(out.valid(j) == inside);
  }
}

TEST_CASE("decomposition with delta kernels selects cosets") {
  Rng rng(3);
  const auto s = random_periodic(rng, 3, 8);
  const auto even = apply_decomposition(delta_mask(), s);
  const auto odd = apply_decomposition(single_block_mask(1, BlockCoeff::identity()), s);
  REQUIRE(even.size() == 4);
  for (std::ptrdiff_t j = 0; j < 4; ++j) {
    CHECK(testutil::max_abs_diff(even.value(j), s.value(2 * j)) == 0.0);
    CHECK(testutil::max_abs_diff(odd.value(j), s.value(2 * j + 1)) == 0.0);
    CHECK(testutil::max_abs_diff(odd.deriv(j), s.deriv(2 * j + 1)) == 0.0);
  }
}

TEST_CASE("transposed mask applied to a delta sequence reads out mask rows") {
  Rng rng(4);
  const Mask a = random_mask(rng, -3, 4);
  const Mask at = a.transposed();
  for (int column = 0; column < 2; ++column) {
    const auto delta = delta_sequence(1, 16, column);
    const auto out = apply_decomposition(at, delta);
    for (std::ptrdiff_t j = 0; j < 8; ++j) {
      // Only i = 0 contributes: entry j is (A^T)_{-2j} e_column, with -2j read
      // modulo the period 16.
      double want_p = 0.0, want_v = 0.0;
      for (int wrap = -1; wrap <= 1; ++wrap) {
        const int k = static_cast<int>(-2 * j + 16 * wrap);
        if (k < a.lo() || k > a.hi()) continue;
        const BlockCoeff b = a[k];
        want_p += column == 0 ? b.a00 : b.a10;
        want_v += column == 0 ? b.a01 : b.a11;
      }
      CHECK(out.value(j)[0] == want_p);
      CHECK(out.deriv(j)[0] == want_v);
    }
  }
}

TEST_CASE("shift") {
  Rng rng(5);
  const auto s = random_periodic(rng, 2, 7);
  CHECK(sup_distance(shift(s, 0), s) == 0.0);
  CHECK(sup_distance(shift(shift(s, 1), -1), s) == 0.0);
  const auto t = shift(s, 3);
  for (std::ptrdiff_t i = 0; i < 7; ++i)
    CHECK(testutil::max_abs_diff(t.value(i), s.value(i + 3)) == 0.0);
}

TEST_CASE("operators commute with shifts") {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const Mask a = random_mask(rng, -2, 3);
    const auto s = random_periodic(rng, 2, 12);
    const auto lhs = apply_subdivision(a, shift(s, 1));
    const auto rhs = shift(apply_subdivision(a, s), 2);
    CHECK(sup_distance(lhs, rhs) <= 1e-14);
    const auto dl = apply_decomposition(a, shift(s, 2));
    const auto dr = shift(apply_decomposition(a, s), 1);
    CHECK(sup_distance(dl, dr) <= 1e-14);
  }
}

TEST_CASE("subdivision is linear") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Mask a = random_mask(rng, -1, 2);
    const auto s = random_periodic(rng, 3, 6);
    const auto t = random_periodic(rng, 3, 6);
    const double alpha = -1.75;
    const auto lhs = apply_subdivision(a, axpy(alpha, s, t));
    const auto rhs = axpy(alpha, apply_subdivision(a, s), apply_subdivision(a, t));
    CHECK(sup_distance(lhs, rhs) <= 1e-13);
  }
}

TEST_CASE("block action commutes with coordinate rescaling") {
  Rng rng(8);
  const Mask a = random_mask(rng, -1, 1);
  const auto s = random_periodic(rng, 2, 6);
  auto scaled = s;
  for (std::ptrdiff_t i = 0; i < 6; ++i) {
    scaled.value(i)[1] *= 3.0;
    scaled.deriv(i)[1] *= 3.0;
  }
  auto out = apply_subdivision(a, s);
  const auto out_scaled = apply_subdivision(a, scaled);
  for (std::ptrdiff_t j = 0; j < 12; ++j) {
    CHECK(out_scaled.value(j)[0] == out.value(j)[0]);
    CHECK(out_scaled.value(j)[1] == doctest::Approx(3.0 * out.value(j)[1]).epsilon(1e-15));
    CHECK(out_scaled.deriv(j)[1] == doctest::Approx(3.0 * out.deriv(j)[1]).epsilon(1e-15));
  }
}

TEST_CASE("periodic and interior operators agree on valid indices") {
  Rng rng(9);
  const Mask a = random_mask(rng, -2, 2);
  const auto s = random_periodic(rng, 2, 16);
  auto w = HermiteSequence::interior(2, 0, 15);
  std::ranges::copy(s.raw(), w.raw().begin());

  const auto ps = apply_subdivision(a, s), ws = apply_subdivision(a, w);
  int compared = 0;
  for (std::ptrdiff_t j = ws.first(); j <= ws.last(); ++j) {
    if (!ws.valid(j)) continue;
    CHECK(testutil::max_abs_diff(ws.value(j), ps.value(j)) == 0.0);
    CHECK(testutil::max_abs_diff(ws.deriv(j), ps.deriv(j)) == 0.0);
    ++compared;
  }
  CHECK(compared > 20);

  const auto pd = apply_decomposition(a, s), wd = apply_decomposition(a, w);
  compared = 0;
  for (std::ptrdiff_t j = wd.first(); j <= wd.last(); ++j) {
    if (!wd.valid(j)) continue;
    CHECK(testutil::max_abs_diff(wd.value(j), pd.value(j)) == 0.0);
    ++compared;
  }
  CHECK(compared > 3);
}

TEST_CASE("sup norm") {
  CHECK(sup_norm(HermiteSequence::periodic(2, 4)) == 0.0);
  auto s = HermiteSequence::periodic(2, 1);
  s.value(0)[0] = 3.0;
  s.value(0)[1] = -4.0;
  s.deriv(0)[1] = 1.0;
  CHECK(sup_norm(s) == 4.0);
  CHECK(sup_distance(s, s) == 0.0);

  auto w = HermiteSequence::interior(1, 0, 2);
  for (std::ptrdiff_t i = 0; i <= 2; ++i) w.set_valid(i, false);
  CHECK_THROWS_AS(sup_norm(w), Error);
}

TEST_CASE("delta mask and delta sequence") {
  CHECK(delta_mask().lo() == 0);
  CHECK(delta_mask().hi() == 0);
  Rng rng(10);
  const auto s = random_periodic(rng, 2, 6);
  CHECK(sup_distance(apply_decomposition(delta_mask(), apply_subdivision(delta_mask(), s)), s) ==
        0.0);
  CHECK(sup_norm(delta_sequence(3, 8)) == 1.0);
  CHECK(sup_norm(delta_sequence(3, 8, 1)) == 1.0);
}

TEST_CASE("powers of D are exact") {
  for (int a = -60; a <= 60; a += 7)
    for (int b = -60; b <= 60; b += 11) CHECK(diag_d_power(a) * diag_d_power(b) == diag_d_power(a + b));
  CHECK(diag_d_power(1) == BlockCoeff{1.0, 0.0, 0.0, 0.5});
  CHECK(diag_d_power(-1) == BlockCoeff{1.0, 0.0, 0.0, 2.0});
}

TEST_CASE("short periodic sequences wrap") {
  // Length 1: both neighbours of an odd output are the same coarse entry, so
  // the output is (A_1 + A_{-1}) applied to it.
  auto one = HermiteSequence::periodic(1, 1);
  one.value(0)[0] = 2.0;
  one.deriv(0)[0] = 3.0;
  const auto up = apply_subdivision(cubic_hermite_mask(), one);
  REQUIRE(up.size() == 2);
  CHECK(up.value(0)[0] == 2.0);
  CHECK(up.deriv(0)[0] == 1.5);
  CHECK(up.value(1)[0] == 2.0);
  CHECK(up.deriv(1)[0] == -0.75);
  const auto down = apply_decomposition(cubic_hermite_mask().transposed(), up);
  REQUIRE(down.size() == 1);
}

TEST_CASE("errors") {
  Rng rng(11);
  CHECK_THROWS_AS(apply_decomposition(cubic_hermite_mask(), random_periodic(rng, 1, 7)),
                  InvalidArgument);
  CHECK_THROWS_AS(apply_subdivision(cubic_hermite_mask(), HermiteSequence::periodic(1, 0)),
                  InvalidArgument);
  CHECK_THROWS_AS(axpy(1.0, random_periodic(rng, 1, 4), random_periodic(rng, 2, 4)),
                  InvalidArgument);
  CHECK_THROWS_AS(Mask(0, {}), InvalidArgument);
}
