#include <doctest.h>

#include "qvi/geometry.hpp"
#include "qvi/sampling.hpp"

#include <cmath>

using namespace qvi;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// Extended-precision D(x, y) for the entropy, written out independently.
long double kl_oracle(const Vector& x, const Vector& y) {
  long double s = 0.0L;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const long double xi = x[i];
    const long double yi = y[i];
    s += xi * std::log(xi) - yi * std::log(yi) - (1.0L + std::log(yi)) * (xi - yi);
  }
  return s;
}

}  // namespace

TEST_CASE("grad_phi") {
  const auto sq = BregmanGeometry::squared_norm();
  const auto ent = BregmanGeometry::negative_entropy();
  CHECK(grad_phi(sq, vec({3, -1})) == vec({3, -1}));
  CHECK(grad_phi(ent, vec({1, 1})).isApprox(vec({1, 1}), 1e-15));
  const Vector g = grad_phi(ent, vec({0.5, 0.5}));
  CHECK(g[0] == doctest::Approx(0.30685281944005469).epsilon(1e-14));
  CHECK(g[1] == doctest::Approx(1.0 + std::log(0.5)).epsilon(1e-15));

  CHECK_THROWS_AS(grad_phi(sq, vec({1, NAN})), DomainError);
  CHECK_THROWS_AS(grad_phi(ent, vec({0.5, -0.1})), DomainError);
  // Zero components are lifted to the floor before the logarithm.
  CHECK(grad_phi(ent, vec({0.0, 1.0}))[0] == doctest::Approx(1.0 + std::log(1e-12)));
}

TEST_CASE("grad_phi_star") {
  const auto sq = BregmanGeometry::squared_norm();
  const auto ent = BregmanGeometry::negative_entropy();
  CHECK(grad_phi_star(sq, vec({2, 5})) == vec({2, 5}));
  CHECK(grad_phi_star(ent, vec({1, 1})).isApprox(vec({1, 1}), 1e-15));
  const double y = 1.0 + std::log(0.25);
  const Vector x = grad_phi_star(ent, vec({y, y, y}));
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(x[i] == doctest::Approx(0.25).epsilon(1e-15));

  SUBCASE("overflow saturates and is flagged") {
    const auto r = grad_phi_star_checked(ent, vec({2000.0, 0.0}));
    CHECK(r.saturated);
    CHECK(r.point[0] == ent.exp_cap);
    CHECK(r.point[1] == doctest::Approx(std::exp(-1.0)));
    CHECK_FALSE(grad_phi_star_checked(ent, vec({1.0, 0.0})).saturated);
  }
}

TEST_CASE("bregman_distance") {
  const auto sq = BregmanGeometry::squared_norm();
  const auto ent = BregmanGeometry::negative_entropy();
  CHECK(bregman_distance(sq, vec({1, 0}), vec({0, 0})) == doctest::Approx(0.5));
  CHECK(bregman_distance(sq, vec({1, 2}), vec({1, 2})) == 0.0);
  CHECK(bregman_distance(ent, vec({0.3, 0.7}), vec({0.3, 0.7})) == doctest::Approx(0.0).epsilon(1e-15));

  const Vector x = vec({0.5, 0.5});
  const Vector y = vec({0.25, 0.75});
  const double oracle = static_cast<double>(kl_oracle(x, y));
  CHECK(oracle == doctest::Approx(0.14384).epsilon(1e-4));
  CHECK(bregman_distance(ent, x, y) == doctest::Approx(oracle).epsilon(1e-13));

  CHECK(bregman_distance(ent, vec({0.0, 1.0}), vec({0.5, 0.5})) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(bregman_distance(ent, vec({-0.1, 1.1}), vec({0.5, 0.5})), DomainError);
}

TEST_CASE("bregman_project closed forms") {
  const auto sq = BregmanGeometry::squared_norm();
  const auto ent = BregmanGeometry::negative_entropy();

  CHECK(bregman_project(sq, FeasibleSet::uniform_box(3, -5, 5), vec({7, -6, 2})) == vec({5, -5, 2}));
  CHECK(bregman_project(sq, FeasibleSet::ball(Vector::Zero(2), 2.0), vec({3, 4})).isApprox(vec({1.2, 1.6}), 1e-15));
  CHECK(bregman_project(sq, FeasibleSet::ball(Vector::Zero(2), 2.0), vec({0.3, 0.4})) == vec({0.3, 0.4}));

  SUBCASE("entropy onto the simplex matches a grid minimizer") {
    const Vector x = vec({0.2, 0.2, 0.1});
    const Vector p = bregman_project(ent, FeasibleSet::simplex(3), x);
    CHECK(p.isApprox(vec({0.4, 0.4, 0.2}), 1e-15));
    // Brute force over a grid on the simplex: nothing beats the closed form.
    const double best = bregman_distance(ent, p, x);
    double grid_min = 1e300;
    const int n = 400;
    for (int i = 1; i < n; ++i) {
      for (int j = 1; i + j < n; ++j) {
        const Vector z = vec({double(i) / n, double(j) / n, double(n - i - j) / n});
        grid_min = std::min(grid_min, bregman_distance(ent, z, x));
      }
    }
    CHECK(best <= grid_min + 1e-14);
    CHECK(grid_min - best < 1e-4);
  }

  SUBCASE("Euclidean simplex projection against KKT") {
    const Vector x = vec({0.9, 0.8, -0.3, 0.1});
    const Vector p = project_onto_simplex(x);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-15));
    // KKT: p = max(x - tau, 0) for a common tau.
    const double tau = x[0] - p[0];
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(p[i] == doctest::Approx(std::max(x[i] - tau, 0.0)).epsilon(1e-14));
    CHECK(tau == doctest::Approx(0.35));
  }

  SUBCASE("unsupported pair") {
    CHECK_FALSE(is_supported_pair(GeometryKind::NegativeEntropy, FeasibleSet::uniform_box(2, 0, 1)));
    CHECK(is_supported_pair(GeometryKind::SquaredNorm, FeasibleSet::uniform_box(2, 0, 1)));
    CHECK_THROWS_AS(bregman_project(ent, FeasibleSet::ball(Vector::Zero(2), 1.0), vec({1, 1})), UnsupportedPairError);
    try {
      bregman_project(ent, FeasibleSet::uniform_box(2, 0, 1), vec({1, 1}));
      FAIL("expected UnsupportedPairError");
    } catch (const UnsupportedPairError& e) {
      CHECK(std::string(e.what()).find("unsupported geometry/set pair") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(bregman_project(sq, FeasibleSet::simplex(2), vec({NAN, 1})), DomainError);
}

TEST_CASE("feasible set construction") {
  CHECK_THROWS_AS(FeasibleSet::box(vec({1, 0}), vec({0, 1})), ValidationError);
  CHECK_THROWS_AS(FeasibleSet::ball(Vector::Zero(2), 0.0), ValidationError);
  CHECK_THROWS_AS(FeasibleSet::simplex(0), ValidationError);
  CHECK_THROWS_AS(BregmanGeometry::negative_entropy(1e-6), ValidationError);
  CHECK(FeasibleSet::simplex(3).contains(vec({0.2, 0.3, 0.5})));
  CHECK_FALSE(FeasibleSet::simplex(3).contains(vec({0.2, 0.3, 0.6})));
}

TEST_CASE("identities on seeded samples") {
  for (const auto& geom : {BregmanGeometry::squared_norm(), BregmanGeometry::negative_entropy()}) {
    CAPTURE(to_string(geom.kind));
    for (std::uint64_t i = 0; i < 200; ++i) {
      Engine rng = sample_engine(11, i);
      const Vector x = sample_simplex_interior(5, rng);
      const Vector y = sample_simplex_interior(5, rng);
      const Vector z = sample_simplex_interior(5, rng);
      const double lhs = bregman_distance(geom, x, y) + bregman_distance(geom, y, z) - bregman_distance(geom, x, z);
      const double rhs = (grad_phi(geom, z) - grad_phi(geom, y)).dot(x - y);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
      CHECK((grad_phi_star(geom, grad_phi(geom, x)) - x).lpNorm<Eigen::Infinity>() <= 1e-12);
      CHECK(bregman_distance(geom, x, y) >= 0.0);

      // Idempotence on feasible points.
      const Vector p = bregman_project(geom, FeasibleSet::simplex(5), x);
      CHECK((p - x).norm() <= 1e-12);
    }
  }
}
