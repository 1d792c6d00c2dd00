#pragma once

// Random data generators shared by the verification suite and the tests.

#include <memory>
#include <random>
#include <vector>

#include "geomwave/manifold.hpp"
#include "geomwave/manifold_transform.hpp"
#include "geomwave/sequence.hpp"

namespace geomwave {

using Rng = std::mt19937_64;

/// Periodic sequence with entries uniform in [-1, 1].
HermiteSequence random_periodic(Rng& rng, std::size_t dim, std::size_t length, int level = 0);

/// Uniform on the sphere; uniform in [-1, 1]^m for Euclidean space.
Vec random_point(const Manifold& m, Rng& rng);

/// Tangent vector at p with a uniformly random direction and norm uniform in
/// [0, max_norm].
Vec random_tangent(const Manifold& m, const Vec& p, Rng& rng, double max_norm);

/// exp_p of a random tangent vector of norm at most max_dist.
Vec random_near_point(const Manifold& m, const Vec& p, Rng& rng, double max_dist);

/// Periodic data with no smoothness: offsets and vectors in T_c M of norm at
/// most 1, drawn once and rescaled by h. Entry i is
/// (exp_c(h offset_i), [h vector_i] transported to that point).
struct RandomCluster {
  std::shared_ptr<const Manifold> manifold;
  Vec center;
  std::vector<Vec> offsets;
  std::vector<Vec> vectors;

  ManifoldHermiteSeq at_scale(double h, int level) const;
};

RandomCluster random_cluster(std::shared_ptr<const Manifold> manifold, Rng& rng,
                             std::size_t length);

}  // namespace geomwave
