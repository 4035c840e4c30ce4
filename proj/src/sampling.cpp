#include "qvi/sampling.hpp"

#include <cmath>

namespace qvi {

Engine sample_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Engine(seq);
}

namespace {

Vector gaussian(int n, Engine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

Vector dirichlet_ones(int n, Engine& rng) {
  std::exponential_distribution<double> expo(1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = expo(rng);
  return v / v.sum();
}

}  // namespace

Vector sample_uniform(const FeasibleSet& set, Engine& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (const auto* b = set.as<Box>()) {
    Vector x(b->lo.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = b->lo[i] + unit(rng) * (b->hi[i] - b->lo[i]);
    return x;
  }
  if (const auto* b = set.as<Ball>()) {
    const int n = static_cast<int>(b->center.size());
    Vector d = gaussian(n, rng);
    const double r = b->radius * std::pow(unit(rng), 1.0 / n);
    return b->center + (r / d.norm()) * d;
  }
  return dirichlet_ones(set.dim(), rng);
}

Vector sample_multiscale(const FeasibleSet& set, Engine& rng) {
  std::uniform_real_distribution<double> exponent(-3.0, 0.0);
  const Vector u = sample_uniform(set, rng);
  const double s = std::pow(10.0, exponent(rng));
  Vector pole;
  if (const auto* b = set.as<Box>()) {
    pole = 0.5 * (b->lo + b->hi);
  } else if (const auto* b = set.as<Ball>()) {
    pole = b->center;
  } else {
    std::uniform_int_distribution<int> pick(0, set.dim() - 1);
    pole = Vector::Zero(set.dim());
    pole[pick(rng)] = 1.0;
  }
  return pole + s * (u - pole);
}

Vector random_direction(const FeasibleSet& set, Engine& rng) {
  Vector d = gaussian(set.dim(), rng);
  if (set.as<Simplex>() && d.size() > 1) d.array() -= d.mean();
  const double n = d.norm();
  if (n == 0.0) {
    d.setZero();
    d[0] = 1.0;
    if (set.as<Simplex>() && d.size() > 1) d[1] = -1.0;
    return d.normalized();
  }
  return d / n;
}

Vector sample_near(const FeasibleSet& set, const Vector& anchor, double distance, Engine& rng) {
  return euclidean_project(set, anchor + distance * random_direction(set, rng));
}

Vector sample_simplex_interior(int dim, Engine& rng, double floor) {
  Vector v = dirichlet_ones(dim, rng).array().max(floor).matrix();
  return v / v.sum();
}

}  // namespace qvi
