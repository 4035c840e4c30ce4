#include "qvi/checks.hpp"

#include "qvi/dynamics.hpp"
#include "qvi/harness.hpp"
#include "qvi/sampling.hpp"
#include "qvi/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qvi {

std::optional<CheckSuite> parse_check_suite(const std::string& name) {
  if (name == "geometry") return CheckSuite::Geometry;
  if (name == "stepsize") return CheckSuite::Stepsize;
  if (name == "dynamics") return CheckSuite::Dynamics;
  if (name == "all") return CheckSuite::All;
  return std::nullopt;
}

namespace {

constexpr double kRelTol = 1e-10;

std::string sci(double v) {
  std::ostringstream o;
  o.precision(3);
  o << std::scientific << v;
  return o.str();
}

// Tracks the worst normalized defect of a family of scalar checks.
struct Worst {
  double excess = -std::numeric_limits<double>::infinity();
  int failures = 0;

  void equal(double lhs, double rhs, double scale) {
    const double tol = kRelTol * std::max({1.0, std::abs(lhs), std::abs(rhs), scale});
    const double d = std::abs(lhs - rhs) - tol;
    excess = std::max(excess, d);
    if (d > 0.0) ++failures;
  }
  void at_most(double lhs, double rhs, double scale) {
    const double tol = kRelTol * std::max({1.0, std::abs(rhs), scale});
    const double d = lhs - rhs - tol;
    excess = std::max(excess, d);
    if (d > 0.0) ++failures;
  }
  CheckResult result(const std::string& name) const {
    return {name, failures == 0,
            std::to_string(failures) + " failures; worst margin " + sci(excess)};
  }
};

struct GeometryCase {
  std::string label;
  BregmanGeometry geom;
  FeasibleSet set;
};

constexpr int kDim = 4;

// A point in the interior of the geometry's domain.
Vector domain_point(const BregmanGeometry& geom, Engine& rng) {
  if (geom.kind == GeometryKind::NegativeEntropy) return sample_simplex_interior(kDim, rng);
  std::normal_distribution<double> n(0.0, 3.0);
  Vector v(kDim);
  for (auto& c : v) c = n(rng);
  return v;
}

// A point to be projected; generally outside the set.
Vector ambient_point(const BregmanGeometry& geom, Engine& rng) {
  std::normal_distribution<double> n(0.0, 4.0);
  Vector v(kDim);
  for (auto& c : v) c = n(rng);
  if (geom.kind == GeometryKind::NegativeEntropy) return (v / 4.0).array().exp().matrix();
  return v;
}

void geometry_suite(std::uint64_t seed, std::vector<CheckResult>& out) {
  const std::vector<GeometryCase> cases{
      {"sqnorm/box", BregmanGeometry::squared_norm(), FeasibleSet::uniform_box(kDim, -5.0, 5.0)},
      {"sqnorm/ball", BregmanGeometry::squared_norm(), FeasibleSet::ball(Vector::Zero(kDim), 2.0)},
      {"sqnorm/simplex", BregmanGeometry::squared_norm(), FeasibleSet::simplex(kDim)},
      {"entropy/simplex", BregmanGeometry::negative_entropy(), FeasibleSet::simplex(kDim)},
  };

  // Identities that involve only the Legendre function.
  for (const auto& geom : {BregmanGeometry::squared_norm(), BregmanGeometry::negative_entropy()}) {
    const std::string g = to_string(geom.kind);
    Worst three, combo, jensen, inverse, strong;
    for (int i = 0; i < kGeometryInstances; ++i) {
      Engine rng = sample_engine(seed, static_cast<std::uint64_t>(i));
      const Vector x = domain_point(geom, rng);
      const Vector y = domain_point(geom, rng);
      const Vector z = domain_point(geom, rng);
      const Vector w = domain_point(geom, rng);

      const double lhs = bregman_distance(geom, x, y) + bregman_distance(geom, y, z) - bregman_distance(geom, x, z);
      const double rhs = (grad_phi(geom, z) - grad_phi(geom, y)).dot(x - y);
      three.equal(lhs, rhs, 0.0);

      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const double a = unit(rng);
      const Vector mix = grad_phi_star(geom, a * grad_phi(geom, z) + (1.0 - a) * grad_phi(geom, w));
      const double dz = bregman_distance(geom, x, z) - bregman_distance(geom, mix, z);
      const double dw = bregman_distance(geom, x, w) - bregman_distance(geom, mix, w);
      combo.equal(bregman_distance(geom, x, mix), a * dz + (1.0 - a) * dw, std::abs(dz) + std::abs(dw));

      constexpr int kPoints = 5;
      std::exponential_distribution<double> expo(1.0);
      Vector t(kPoints);
      for (auto& c : t) c = expo(rng);
      t /= t.sum();
      Vector dual = Vector::Zero(kDim);
      double weighted = 0.0;
      for (int j = 0; j < kPoints; ++j) {
        const Vector xj = domain_point(geom, rng);
        dual += t[j] * grad_phi(geom, xj);
        weighted += t[j] * bregman_distance(geom, x, xj);
      }
      jensen.at_most(bregman_distance(geom, x, grad_phi_star(geom, dual)), weighted, 0.0);

      const double err = (grad_phi_star(geom, grad_phi(geom, x)) - x).lpNorm<Eigen::Infinity>();
      inverse.excess = std::max(inverse.excess, err - 1e-12);
      if (err > 1e-12) ++inverse.failures;

      // Entropy is 1-strongly convex w.r.t. the 1-norm on the simplex.
      const double norm = geom.kind == GeometryKind::NegativeEntropy ? (x - y).lpNorm<1>() : (x - y).norm();
      strong.at_most(0.5 * geom.modulus * norm * norm, bregman_distance(geom, x, y), 0.0);
    }
    out.push_back(three.result("geometry/" + g + "/three-point identity"));
    out.push_back(combo.result("geometry/" + g + "/combination identity"));
    out.push_back(jensen.result("geometry/" + g + "/Jensen inequality"));
    out.push_back(inverse.result("geometry/" + g + "/gradient inversion (1e-12)"));
    out.push_back(strong.result("geometry/" + g + "/strong convexity"));
  }

  // Projection properties per supported (geometry, set) pair.
  for (const auto& c : cases) {
    Worst obtuse, proj_ineq, idem;
    for (int i = 0; i < kGeometryInstances; ++i) {
      Engine rng = sample_engine(seed ^ 0x9e3779b97f4a7c15ULL, static_cast<std::uint64_t>(i));
      const Vector x = ambient_point(c.geom, rng);
      const Vector p = bregman_project(c.geom, c.set, x);
      const Vector y = sample_uniform(c.set, rng);
      const Vector gx = grad_phi(c.geom, x);
      const Vector gp = grad_phi(c.geom, p);
      obtuse.at_most((gx - gp).dot(y - p), 0.0, gx.norm() * (y - p).norm());
      proj_ineq.at_most(bregman_distance(c.geom, y, p) + bregman_distance(c.geom, p, x),
                        bregman_distance(c.geom, y, x), 0.0);
      const double moved = (bregman_project(c.geom, c.set, y) - y).norm();
      idem.excess = std::max(idem.excess, moved - 1e-12);
      if (moved > 1e-12) ++idem.failures;
    }
    out.push_back(obtuse.result("geometry/" + c.label + "/obtuse-angle characterization"));
    out.push_back(proj_ineq.result("geometry/" + c.label + "/projection inequality"));
    out.push_back(idem.result("geometry/" + c.label + "/idempotence (1e-12)"));
  }
}

std::vector<double> lambda_sequence(const SolverTrace& trace) {
  std::vector<double> l;
  for (const auto& r : trace.records) l.push_back(r.lambda);
  l.push_back(trace.final_lambda);
  return l;
}

void stepsize_suite(std::uint64_t seed, std::vector<CheckResult>& out) {
  {
    // At k = 1 the default sequence gives eta_1 = 0.01.
    const EtaSpec fixed = EtaSpec::power_law(0.01, 1.1);
    StepSizeState s{0.15, 1, 0.0};
    const Vector w = Vector::Unit(2, 0);
    const Vector y = Vector::Zero(2);
    const double e1 = update_stepsize(s, fixed, 0.8, w, y, 10.0 * w, y).lambda;
    const double e2 = update_stepsize(s, fixed, 0.8, w, y, w, w).lambda;
    StepSizeState s3{0.1, 1, 0.0};
    const double e3 = update_stepsize(s3, EtaSpec::zero(), 0.5, w, y, w, y).lambda;
    const bool ok = std::abs(e1 - 0.08) < 1e-15 && std::abs(e2 - 0.16) < 1e-15 && std::abs(e3 - 0.1) < 1e-15;
    out.push_back({"stepsize/update rule examples", ok,
                   "got " + format_double(e1) + ", " + format_double(e2) + ", " + format_double(e3)});
  }

  {
    // Random steps: lambda stays positive and below lambda1 + Xi.
    const EtaSpec eta = EtaSpec::power_law(0.05, 1.3);
    int failures = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (int run = 0; run < 100; ++run) {
      Engine rng = sample_engine(seed, static_cast<std::uint64_t>(run));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const double lambda1 = 0.01 + unit(rng);
      StepSizeState s = initial_stepsize_state(lambda1, eta);
      for (int k = 0; k < 200; ++k) {
        Vector w(3), y(3), fw(3), fy(3);
        for (int i = 0; i < 3; ++i) {
          w[i] = unit(rng);
          y[i] = unit(rng);
          fw[i] = 5.0 * unit(rng);
          fy[i] = 5.0 * unit(rng);
        }
        s = update_stepsize(s, eta, 0.1 + 0.8 * unit(rng), w, y, fw, fy);
        worst = std::max(worst, s.lambda - (lambda1 + eta.total()));
        if (!(s.lambda > 0.0) || s.lambda > lambda1 + eta.total() + 1e-12) ++failures;
      }
    }
    out.push_back({"stepsize/random sequences bounded by lambda1 + Xi", failures == 0,
                   std::to_string(failures) + " failures; worst margin " + sci(worst)});
  }

  std::vector<std::pair<std::string, SolverTrace>> runs;
  for (Example52Case c : {Example52Case::I, Example52Case::II, Example52Case::III, Example52Case::IV}) {
    auto res = run_example_5_2(c, 10, {"alg1"});
    runs.emplace_back(std::string("example-5.2 case ") + case_label(c), std::move(res.runs.front().trace));
  }
  runs.emplace_back("example-5.3", run_example_5_3(true).trace);

  for (const auto& [label, trace] : runs) {
    const Alg1Config cfg = label == "example-5.3" ? example_5_3_alg1_config(true) : example_5_2_alg1_config();
    const double bound = cfg.lambda1 + cfg.eta.total();
    const auto l = lambda_sequence(trace);
    const double lmax = *std::max_element(l.begin(), l.end());
    out.push_back({"stepsize/" + label + "/cap lambda1 + Xi", lmax <= bound + 1e-12,
                   "max lambda " + format_double(lmax) + ", bound " + format_double(bound)});
    double dec = 0.0;
    for (std::size_t k = 0; k + 1 < l.size(); ++k) dec += std::max(0.0, l[k] - l[k + 1]);
    out.push_back({"stepsize/" + label + "/summable decrements", dec <= bound + 1e-9,
                   "sum of decrements " + format_double(dec) + ", bound " + format_double(bound)});
    if (trace.iterations() >= 500) {
      const std::size_t from = l.size() - l.size() / 5;
      const auto [lo, hi] = std::minmax_element(l.begin() + static_cast<std::ptrdiff_t>(from), l.end());
      out.push_back({"stepsize/" + label + "/tail oscillation", *hi - *lo <= 1e-3,
                     "max - min over last 20% = " + sci(*hi - *lo)});
    } else {
      out.push_back({"stepsize/" + label + "/tail oscillation", true,
                     "not applicable: " + std::to_string(trace.iterations()) + " iterations < 500"});
    }
  }
}

void dynamics_suite(std::uint64_t seed, std::vector<CheckResult>& out) {
  const VIProblem p51 = make_example_5_1();
  const Vector zero = Vector::Zero(3);

  {
    double worst = 0.0;
    for (Scheme scheme : {Scheme::ExplicitEuler, Scheme::RungeKutta4}) {
      for (double lambda : {0.05, 0.1, 0.2}) {
        IntegratorConfig cfg;
        cfg.scheme = scheme;
        cfg.horizon = 5.0;
        const Trajectory t = integrate_flow(p51, FlowSystem::ForwardBackwardForward, lambda, zero, cfg);
        for (const auto& x : t.xs) worst = std::max(worst, x.norm());
      }
    }
    out.push_back({"dynamics/equilibrium stationarity", worst <= 1e-12, "max drift " + sci(worst)});
  }

  {
    double worst_inc = -std::numeric_limits<double>::infinity();
    double worst_ball = -std::numeric_limits<double>::infinity();
    for (Example51Case c : {Example51Case::Case1, Example51Case::Case2}) {
      const Vector x0 = example_5_1_initial_point(c);
      const Trajectory t = integrate_flow(p51, FlowSystem::ForwardBackwardForward, 0.15, x0, {});
      const auto v = lyapunov_energy(t, zero);
      for (std::size_t i = 1; i < v.size(); ++i) worst_inc = std::max(worst_inc, v[i] - v[i - 1]);
      for (const auto& x : t.xs) worst_ball = std::max(worst_ball, x.norm() - x0.norm());
    }
    out.push_back({"dynamics/energy nonincreasing (lambda 0.15)", worst_inc <= 1e-10,
                   "largest increment " + sci(worst_inc)});
    out.push_back({"dynamics/bounded by initial distance", worst_ball <= 1e-6, "worst excess " + sci(worst_ball)});
  }

  {
    // Random feasible starts: distance to the solution never grows.
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 8; ++i) {
      Engine rng = sample_engine(seed, static_cast<std::uint64_t>(i));
      const Vector x0 = sample_uniform(p51.set(), rng);
      IntegratorConfig cfg;
      cfg.horizon = 10.0;
      const Trajectory t = integrate_flow(p51, FlowSystem::ForwardBackwardForward, 0.15, x0, cfg);
      for (const auto& x : t.xs) worst = std::max(worst, x.norm() - x0.norm());
    }
    out.push_back({"dynamics/bounded by initial distance (random starts)", worst <= 1e-6,
                   "worst excess " + sci(worst)});
  }

  {
    const Vector x0 = example_5_1_initial_point(Example51Case::Case1);
    auto final_state = [&](Scheme scheme, double h, double T) {
      IntegratorConfig cfg;
      cfg.scheme = scheme;
      cfg.step = h;
      cfg.horizon = T;
      cfg.record_stride = 1000;
      return integrate_flow(p51, FlowSystem::ForwardBackwardForward, 0.2, x0, cfg).xs.back();
    };
    const Vector a = final_state(Scheme::ExplicitEuler, 1e-2, 5.0);
    const Vector b = final_state(Scheme::ExplicitEuler, 5e-3, 5.0);
    const Vector c = final_state(Scheme::ExplicitEuler, 2.5e-3, 5.0);
    const double ratio = (a - b).norm() / (b - c).norm();
    out.push_back({"dynamics/Euler first-order convergence", ratio > 1.5 && ratio < 2.5,
                   "error ratio h : h/2 = " + format_double(ratio)});
    const double gap = (final_state(Scheme::RungeKutta4, 1e-2, 50.0) - final_state(Scheme::ExplicitEuler, 1e-4, 50.0)).norm();
    out.push_back({"dynamics/RK4 h=1e-2 vs Euler h=1e-4", gap <= 1e-3, "difference " + sci(gap)});
  }
}

}  // namespace

std::vector<CheckResult> run_check_suite(CheckSuite suite, std::uint64_t seed) {
  std::vector<CheckResult> out;
  if (suite == CheckSuite::Geometry || suite == CheckSuite::All) geometry_suite(seed, out);
  if (suite == CheckSuite::Stepsize || suite == CheckSuite::All) stepsize_suite(seed, out);
  if (suite == CheckSuite::Dynamics || suite == CheckSuite::All) dynamics_suite(seed, out);
  return out;
}

}  // namespace qvi
