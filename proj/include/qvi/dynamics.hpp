#pragma once

// Time integration of the projected dynamical system
//   x' = -x + P_K(x - lambda F(x))
// and the forward-backward-forward flow
//   y  = P_K(x - lambda F(x)),  x' = -x + y + lambda (F(x) - F(y)),
// plus Lyapunov-energy and ergodic-average diagnostics on the result.
// Projections are metric (Euclidean).

#include "qvi/problems.hpp"

#include <stdexcept>
#include <vector>

namespace qvi {

enum class Scheme { ExplicitEuler, RungeKutta4 };
enum class FlowSystem { ForwardBackwardForward, ProjectedGradient };

const char* to_string(Scheme s);

struct IntegratorConfig {
  Scheme scheme = Scheme::ExplicitEuler;
  double step = 1e-3;
  double horizon = 50.0;
  int record_stride = 10;

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> xs;
  std::vector<Vector> ys;  ///< y(t) = P_K(x(t) - lambda F(x(t)))
  double lambda = 0.0;

  std::size_t size() const { return times.size(); }
};

class IntegrationDiverged : public std::runtime_error {
 public:
  IntegrationDiverged(const std::string& what, Trajectory partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// Right-hand side of the chosen system at state x.
Vector flow_rhs(const VIProblem& problem, FlowSystem system, double lambda, const Vector& x);

/// Integrates from x0 over [0, horizon], recording every record_stride steps
/// and the final state. Throws IntegrationDiverged on a non-finite state.
Trajectory integrate_flow(const VIProblem& problem, FlowSystem system, double lambda, const Vector& x0,
                          const IntegratorConfig& cfg);

/// V(t_i) = 0.5 ||x(t_i) - x_star||^2.
std::vector<double> lyapunov_energy(const Trajectory& traj, const Vector& x_star);

/// (1/T) times the trapezoidal integral of x(t) over [0, T]. T may fall
/// between grid points; the last segment is then interpolated linearly.
Vector continuous_ergodic_average(const Trajectory& traj, double T);

/// ||x(t_i) - y(t_i)||.
std::vector<double> fbf_residual_series(const Trajectory& traj);

}  // namespace qvi
