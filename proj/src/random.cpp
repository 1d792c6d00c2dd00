#include "geomwave/random.hpp"

namespace geomwave {

HermiteSequence random_periodic(Rng& rng, std::size_t dim, std::size_t length, int level) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto s = HermiteSequence::periodic(dim, length, level);
  for (double& x : s.raw()) x = u(rng);
  return s;
}

namespace {

Vec gaussian(Rng& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  Vec v(static_cast<Eigen::Index>(dim));
  for (auto& x : v) x = g(rng);
  return v;
}

}  // namespace

Vec random_point(const Manifold& m, Rng& rng) {
  if (m.is_euclidean()) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vec p(static_cast<Eigen::Index>(m.ambient_dim()));
    for (auto& x : p) x = u(rng);
    return p;
  }
  return m.project_point(gaussian(rng, m.ambient_dim()));
}

Vec random_tangent(const Manifold& m, const Vec& p, Rng& rng, double max_norm) {
  Vec dir = m.project_tangent(p, gaussian(rng, m.ambient_dim()));
  const double n = dir.norm();
  if (n == 0.0) return Vec::Zero(p.size());
  std::uniform_real_distribution<double> u(0.0, max_norm);
  return (u(rng) / n) * dir;
}

Vec random_near_point(const Manifold& m, const Vec& p, Rng& rng, double max_dist) {
  return m.exp(p, random_tangent(m, p, rng, max_dist));
}

RandomCluster random_cluster(std::shared_ptr<const Manifold> manifold, Rng& rng,
                             std::size_t length) {
  RandomCluster c;
  c.center = random_point(*manifold, rng);
  for (std::size_t i = 0; i < length; ++i) {
    c.offsets.push_back(random_tangent(*manifold, c.center, rng, 1.0));
    c.vectors.push_back(random_tangent(*manifold, c.center, rng, 1.0));
  }
  c.manifold = std::move(manifold);
  return c;
}

ManifoldHermiteSeq RandomCluster::at_scale(double h, int level) const {
  std::vector<PointVector> entries;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const Vec p = manifold->exp(center, h * offsets[i]);
    entries.push_back({p, manifold->transport(center, h * vectors[i], p)});
  }
  return ManifoldHermiteSeq::periodic(manifold, std::move(entries), level);
}

}  // namespace geomwave
