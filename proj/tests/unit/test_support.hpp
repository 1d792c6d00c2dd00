#pragma once

#include <doctest.h>

#include <random>

#include "geomwave/random.hpp"
#include "geomwave/sequence.hpp"

namespace testutil {

using geomwave::BlockCoeff;
using geomwave::HermiteSequence;
using geomwave::Mask;
using geomwave::Rng;

inline Mask random_mask(Rng& rng, int lo, int hi) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<BlockCoeff> coeffs;
  for (int k = lo; k <= hi; ++k) coeffs.push_back({u(rng), u(rng), u(rng), u(rng)});
  return Mask(lo, std::move(coeffs));
}

// One-dimensional periodic sequence from explicit (p, v) pairs.
inline HermiteSequence scalar_periodic(const std::vector<std::pair<double, double>>& pv,
                                       int level = 0) {
  auto s = HermiteSequence::periodic(1, pv.size(), level);
  for (std::size_t i = 0; i < pv.size(); ++i) {
    const auto j = static_cast<std::ptrdiff_t>(i);
    s.value(j)[0] = pv[i].first;
    s.deriv(j)[0] = pv[i].second;
  }
  return s;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testutil
