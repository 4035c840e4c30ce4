#include <doctest.h>

#include "qvi/dynamics.hpp"

#include <algorithm>
#include <cmath>

using namespace qvi;

namespace {

Trajectory make_trajectory(std::vector<double> times, std::vector<Vector> xs) {
  Trajectory t;
  t.times = std::move(times);
  t.xs = xs;
  t.ys = std::move(xs);
  t.lambda = 0.1;
  return t;
}

// Plain Euler loop for the FBF flow on example-5.1, independent of
// integrate_flow: F and the box clamp are written out directly.
Eigen::Vector3d euler_oracle(Eigen::Vector3d x, double lambda, double h, double T) {
  Eigen::Matrix3d m;
  m << 1, 0, -1, 0, 1.5, 0, -1, 0, 2;
  auto f = [&](const Eigen::Vector3d& z) -> Eigen::Vector3d { return (std::exp(-z.squaredNorm()) + 0.2) * (m * z); };
  const long n = std::lround(T / h);
  for (long i = 0; i < n; ++i) {
    const Eigen::Vector3d fx = f(x);
    const Eigen::Vector3d y = (x - lambda * fx).cwiseMax(-5.0).cwiseMin(5.0);
    x += h * (y - x + lambda * (fx - f(y)));
  }
  return x;
}

double sum_sq_residual(const Trajectory& t, double h_record) {
  double s = 0.0;
  for (double r : fbf_residual_series(t)) s += h_record * r * r;
  return s;
}

}  // namespace

TEST_CASE("equilibrium is stationary") {
  const VIProblem p = make_example_5_1();
  for (Scheme scheme : {Scheme::ExplicitEuler, Scheme::RungeKutta4}) {
    for (FlowSystem sys : {FlowSystem::ForwardBackwardForward, FlowSystem::ProjectedGradient}) {
      IntegratorConfig cfg;
      cfg.scheme = scheme;
      cfg.horizon = 2.0;
      const Trajectory t = integrate_flow(p, sys, 0.2, Vector::Zero(3), cfg);
      for (const auto& x : t.xs) CHECK(x.norm() == 0.0);
      for (double r : fbf_residual_series(t)) CHECK(r == 0.0);
    }
  }
}

TEST_CASE("trajectory layout") {
  const VIProblem p = make_example_5_1();
  const Vector x0 = example_5_1_initial_point(Example51Case::Case1);
  IntegratorConfig cfg;
  cfg.horizon = 1.0;
  cfg.step = 0.03;  // 1.0 is not a multiple of h: the last step is shortened
  cfg.record_stride = 5;
  const Trajectory t = integrate_flow(p, FlowSystem::ForwardBackwardForward, 0.1, x0, cfg);
  CHECK(t.times.front() == 0.0);
  CHECK(t.times.back() == 1.0);
  CHECK(t.xs.front() == x0);
  CHECK(t.xs.size() == t.times.size());
  CHECK(t.ys.size() == t.times.size());
  CHECK(std::is_sorted(t.times.begin(), t.times.end()));
  CHECK(std::adjacent_find(t.times.begin(), t.times.end()) == t.times.end());
  // y is the forward point P(x - lambda F x).
  const Vector y0 = euclidean_project(p.set(), x0 - 0.1 * eval_operator(p, x0));
  CHECK(t.ys.front() == y0);

  cfg.step = 2.0;
  CHECK_THROWS_AS(integrate_flow(p, FlowSystem::ForwardBackwardForward, 0.1, x0, cfg), ValidationError);
  CHECK_THROWS_AS(integrate_flow(p, FlowSystem::ForwardBackwardForward, 0.0, x0, IntegratorConfig{}), ValidationError);
}

TEST_CASE("divergence carries the partial trajectory") {
  // F = -x pushes the state outward until it hits the NaN region.
  VIProblem p("blowup", [](const Vector& x) -> Vector { return x[0] > 0.5 ? Vector::Constant(1, NAN) : Vector(-x); },
              FeasibleSet::uniform_box(1, -2, 2));
  IntegratorConfig cfg;
  cfg.horizon = 20.0;
  cfg.step = 0.1;
  cfg.record_stride = 1;
  try {
    integrate_flow(p, FlowSystem::ForwardBackwardForward, 0.1, Vector::Constant(1, 0.4), cfg);
    FAIL("expected IntegrationDiverged");
  } catch (const IntegrationDiverged& e) {
    REQUIRE(e.partial().size() >= 2);
    CHECK(e.partial().times.front() == 0.0);
    CHECK(e.partial().times.back() < 20.0);
    for (const auto& x : e.partial().xs) CHECK(x.allFinite());
  }
}

TEST_CASE("lyapunov energy") {
  const Vector c = Vector::Constant(3, 0.7);
  const auto t = make_trajectory({0, 1, 2}, {c, c, c});
  for (double v : lyapunov_energy(t, c)) CHECK(v == 0.0);
  const auto one = make_trajectory({0}, {Vector::Ones(3)});
  CHECK(lyapunov_energy(one, Vector::Zero(3)).front() == doctest::Approx(1.5));
  CHECK_THROWS_AS(lyapunov_energy(one, Vector::Zero(2)), ValidationError);
}

TEST_CASE("continuous ergodic average") {
  const Vector c = Vector::Constant(2, -1.25);
  CHECK(continuous_ergodic_average(make_trajectory({0, 0.5, 1.0}, {c, c, c}), 1.0).isApprox(c, 1e-15));

  const auto line = make_trajectory({0, 1}, {Vector::Zero(1), Vector::Constant(1, 2.0)});
  CHECK(continuous_ergodic_average(line, 1.0)[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(continuous_ergodic_average(line, 1.5), RangeError);
  // T inside a segment: x(t) = 2t, average over [0, 1.5] is 1.5.
  const auto ramp = make_trajectory({0, 1, 2}, {Vector::Zero(1), Vector::Constant(1, 2.0), Vector::Constant(1, 4.0)});
  CHECK(continuous_ergodic_average(ramp, 1.5)[0] == doctest::Approx(1.5));
  const auto sparse = make_trajectory({0, 2, 3}, {Vector::Zero(1), Vector::Zero(1), Vector::Zero(1)});
  CHECK_THROWS_AS(continuous_ergodic_average(sparse, 1.0), RangeError);

  SUBCASE("independent quadrature on an example-5.1 run") {
    const VIProblem p = make_example_5_1();
    const Trajectory t =
        integrate_flow(p, FlowSystem::ForwardBackwardForward, 0.2, example_5_1_initial_point(Example51Case::Case1), {});
    // Simpson's rule on the uniform recording grid (spacing 0.01, 5000 panels).
    const std::size_t n = t.size() - 1;
    REQUIRE(n % 2 == 0);
    Vector simpson = t.xs.front() + t.xs.back();
    for (std::size_t i = 1; i < n; ++i) simpson += (i % 2 ? 4.0 : 2.0) * t.xs[i];
    simpson *= (t.times[1] - t.times[0]) / 3.0 / 50.0;
    const Vector avg = continuous_ergodic_average(t, 50.0);
    CHECK((avg - simpson).norm() <= 1e-4);
  }
}

TEST_CASE("example-5.1 FBF flow") {
  const VIProblem p = make_example_5_1();
  const Vector zero = Vector::Zero(3);

  SUBCASE("Euler at h = 1e-3 agrees with an independent Euler oracle at h = 1e-4") {
    for (Example51Case c : {Example51Case::Case1, Example51Case::Case2}) {
      const Vector x0 = example_5_1_initial_point(c);
      const Trajectory t = integrate_flow(p, FlowSystem::ForwardBackwardForward, 0.2, x0, {});
      const Eigen::Vector3d oracle = euler_oracle(x0, 0.2, 1e-4, 50.0);
      CHECK((t.xs.back() - oracle).norm() <= 1e-3);
    }
  }

  SUBCASE("energy decreases and larger steps decay faster") {
    for (Example51Case c : {Example51Case::Case1, Example51Case::Case2}) {
      std::vector<std::vector<double>> v;
      std::vector<double> times;
      for (double lambda : {0.05, 0.1, 0.2}) {
        const Trajectory t = integrate_flow(p, FlowSystem::ForwardBackwardForward, lambda, example_5_1_initial_point(c), {});
        v.push_back(lyapunov_energy(t, zero));
        times = t.times;
        for (std::size_t i = 1; i < v.back().size(); ++i) CHECK(v.back()[i] <= v.back()[i - 1] + 1e-10);
      }
      for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 5.0) continue;
        CHECK(v[2][i] <= v[1][i]);
        CHECK(v[1][i] <= v[0][i]);
      }
    }
  }

  SUBCASE("the state reaches 1e-3 on a longer horizon") {
    IntegratorConfig cfg;
    cfg.horizon = 120.0;
    const Trajectory t = integrate_flow(p, FlowSystem::ForwardBackwardForward, 0.2,
                                        example_5_1_initial_point(Example51Case::Case1), cfg);
    CHECK(t.xs.back().norm() <= 1e-3);
    for (const auto& x : t.xs) CHECK(x.norm() <= t.xs.front().norm() + 1e-6);
  }

  SUBCASE("FBF residual: square-summable with a decreasing tail") {
    // lambda = 0.15 keeps lambda L < 1 for L = 5.0679.
    const double lambda = 0.15;
    const Vector x0 = example_5_1_initial_point(Example51Case::Case1);
    IntegratorConfig cfg;
    cfg.horizon = 150.0;
    const Trajectory t = integrate_flow(p, FlowSystem::ForwardBackwardForward, lambda, x0, cfg);
    const auto r = fbf_residual_series(t);
    CHECK(r.back() <= 1e-3);
    const double bound = 0.5 * x0.squaredNorm() / (1.0 - lambda * 5.0679) + 0.1;
    CHECK(sum_sq_residual(t, 1e-2) <= bound);
    double tail = 0.0, mid = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t.times[i] >= 40.0) tail = std::max(tail, r[i]);
      if (t.times[i] >= 10.0 && t.times[i] <= 20.0) mid = std::max(mid, r[i]);
    }
    CHECK(tail <= mid);
  }

  SUBCASE("RK4 at h = 1e-2 matches Euler at h = 1e-4") {
    IntegratorConfig rk;
    rk.scheme = Scheme::RungeKutta4;
    rk.step = 1e-2;
    const Vector x0 = example_5_1_initial_point(Example51Case::Case2);
    const Trajectory t = integrate_flow(p, FlowSystem::ForwardBackwardForward, 0.2, x0, rk);
    CHECK((t.xs.back() - euler_oracle(x0, 0.2, 1e-4, 50.0)).norm() <= 1e-3);
  }

  SUBCASE("projected-gradient flow also converges") {
    const Trajectory t = integrate_flow(p, FlowSystem::ProjectedGradient, 0.2,
                                        example_5_1_initial_point(Example51Case::Case1), {});
    CHECK(t.xs.back().norm() < t.xs.front().norm());
  }
}
