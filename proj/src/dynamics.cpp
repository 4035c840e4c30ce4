#include "qvi/dynamics.hpp"

#include <cmath>

namespace qvi {

const char* to_string(Scheme s) { return s == Scheme::ExplicitEuler ? "euler" : "rk4"; }

void IntegratorConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("integrator step h must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ValidationError("integrator horizon T must be positive");
  if (step > horizon) throw ValidationError("integrator step h must not exceed horizon T");
  if (record_stride < 1) throw ValidationError("record_stride must be positive");
}

namespace {

Vector forward_point(const VIProblem& problem, double lambda, const Vector& x, const Vector& fx) {
  return euclidean_project(problem.set(), x - lambda * fx);
}

}  // namespace

Vector flow_rhs(const VIProblem& problem, FlowSystem system, double lambda, const Vector& x) {
  const Vector fx = eval_operator(problem, x);
  const Vector y = forward_point(problem, lambda, x, fx);
  if (system == FlowSystem::ProjectedGradient) return y - x;
  return y - x + lambda * (fx - eval_operator(problem, y));
}

Trajectory integrate_flow(const VIProblem& problem, FlowSystem system, double lambda, const Vector& x0,
                          const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(lambda > 0.0)) throw ValidationError("integrate_flow: lambda must be positive");
  if (x0.size() != problem.dim() || !x0.allFinite()) {
    throw ValidationError("integrate_flow: initial point must be finite with length " +
                          std::to_string(problem.dim()));
  }

  // The last step is shortened when T is not a multiple of h.
  const auto steps = static_cast<long>(std::ceil(cfg.horizon / cfg.step - 1e-9));
  Trajectory traj;
  traj.lambda = lambda;
  traj.times.reserve(steps / cfg.record_stride + 2);

  auto record = [&](double t, const Vector& x) {
    Vector y = forward_point(problem, lambda, x, eval_operator(problem, x));
    traj.times.push_back(t);
    traj.xs.push_back(x);
    traj.ys.push_back(std::move(y));
  };
  auto rhs = [&](const Vector& x) { return flow_rhs(problem, system, lambda, x); };

  Vector x = x0;
  record(0.0, x);
  for (long i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * cfg.step;
    const double h = (i + 1 == steps) ? cfg.horizon - t : cfg.step;
    try {
      if (cfg.scheme == Scheme::ExplicitEuler) {
        x += h * rhs(x);
      } else {
        const Vector k1 = rhs(x);
        const Vector k2 = rhs(x + 0.5 * h * k1);
        const Vector k3 = rhs(x + 0.5 * h * k2);
        const Vector k4 = rhs(x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      if (!x.allFinite()) throw DomainError("non-finite state");
      const bool last = i + 1 == steps;
      if (last) record(cfg.horizon, x);
      else if ((i + 1) % cfg.record_stride == 0) record(static_cast<double>(i + 1) * cfg.step, x);
    } catch (const DomainError& e) {
      throw IntegrationDiverged("integration diverged at t = " + std::to_string(t + h) + ": " + e.what(),
                                std::move(traj));
    }
  }
  return traj;
}

std::vector<double> lyapunov_energy(const Trajectory& traj, const Vector& x_star) {
  std::vector<double> v;
  v.reserve(traj.size());
  for (const Vector& x : traj.xs) {
    if (x.size() != x_star.size()) throw ValidationError("lyapunov_energy: dimension mismatch");
    v.push_back(0.5 * (x - x_star).squaredNorm());
  }
  return v;
}

Vector continuous_ergodic_average(const Trajectory& traj, double T) {
  if (!(T > 0.0)) throw ValidationError("continuous_ergodic_average: T must be positive");
  if (traj.size() < 2) throw RangeError("continuous_ergodic_average: need at least two recorded points");
  const double tol = 1e-12 * std::max(1.0, T);
  if (T > traj.times.back() + tol) {
    throw RangeError("continuous_ergodic_average: T = " + std::to_string(T) + " beyond trajectory end " +
                     std::to_string(traj.times.back()));
  }
  if (traj.times[1] > T + tol) {
    throw RangeError("continuous_ergodic_average: fewer than two recorded points in [0, T]");
  }
  Vector integral = Vector::Zero(traj.xs.front().size());
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double t0 = traj.times[i - 1];
    const double t1 = traj.times[i];
    if (t0 >= T - tol) break;
    if (t1 <= T + tol) {
      integral += 0.5 * (t1 - t0) * (traj.xs[i - 1] + traj.xs[i]);
    } else {
      const double a = (T - t0) / (t1 - t0);
      const Vector xT = (1.0 - a) * traj.xs[i - 1] + a * traj.xs[i];
      integral += 0.5 * (T - t0) * (traj.xs[i - 1] + xT);
      break;
    }
  }
  return integral / T;
}

std::vector<double> fbf_residual_series(const Trajectory& traj) {
  if (traj.size() == 0) throw ValidationError("fbf_residual_series: empty trajectory");
  std::vector<double> r;
  r.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) r.push_back((traj.xs[i] - traj.ys[i]).norm());
  return r;
}

}  // namespace qvi
