#pragma once

// Discrete solvers:
//  * solve_alg1: Bregman golden-ratio forward-backward-forward iteration with
//    relaxation gamma and the nonmonotone adaptive step
//      lambda_{k+1} = min(mu ||w_k - y_k|| / ||F w_k - F y_k||, lambda_k + eta_k)
//    (or lambda_k + eta_k when F w_k == F y_k);
//  * solve_relaxed_fbf: Euclidean relaxed Tseng iteration with fixed lambda;
//  * solve_graal_baseline: fixed-step golden-ratio projection baseline.
// Every run is single-threaded and deterministic.

#include "qvi/problems.hpp"

#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace qvi {

inline constexpr double kGoldenRatio = std::numbers::phi;

/// Summable perturbation sequence eta_k, k >= 1.
struct EtaSpec {
  enum class Form { PowerLaw, Zero };
  Form form = Form::PowerLaw;
  double c = 0.01;
  double p = 1.1;

  static EtaSpec power_law(double c, double p) { return {Form::PowerLaw, c, p}; }
  static EtaSpec zero() { return {Form::Zero, 0.0, 0.0}; }

  double operator()(long k) const;
  /// Xi = sum_{k >= 1} eta_k.
  double total() const;
  void validate() const;
};

struct StepSizeState {
  double lambda = 0.0;
  long k = 1;
  /// Xi - sum_{j < k} eta_j.
  double eta_sum_remaining = 0.0;
};

StepSizeState initial_stepsize_state(double lambda1, const EtaSpec& spec);

/// One application of the adaptive rule. F(w) and F(y) count as different
/// when ||Fw - Fy|| > 1e-14.
StepSizeState update_stepsize(const StepSizeState& state, const EtaSpec& spec, double mu, const Vector& w,
                              const Vector& y, const Vector& Fw, const Vector& Fy);

struct Alg1Config {
  double lambda1 = 0.15;
  double mu = 0.8;
  double gamma = 0.9;
  double psi = kGoldenRatio;
  EtaSpec eta = EtaSpec::power_law(0.01, 1.1);
  double tol = 1e-5;
  long max_iter = 1000;
  BregmanGeometry geometry = BregmanGeometry::squared_norm();
  /// false replaces the golden-ratio extrapolation by w_k := x_k.
  bool extrapolate = true;

  void validate() const;
};

enum class StopReason { Tolerance, MaxIter, Diverged };

const char* to_string(StopReason r);

struct IterationRecord {
  long k = 0;
  Vector x;       ///< x_k
  Vector w;       ///< extrapolated point w_k (x_k for schemes without one)
  Vector y;       ///< projected point y_k
  Vector x_next;  ///< x_{k+1}
  double lambda = 0.0;     ///< step used in this iteration
  double step_norm = 0.0;  ///< E_k = ||x_{k+1} - x_k||_2
  double residual = 0.0;   ///< natural residual at x_{k+1}
  /// D_Phi(p, x_k) for the problem's known solution p; NaN when unknown.
  double bregman_to_solution = 0.0;
  bool saturated = false;
};

struct SolverTrace {
  std::vector<IterationRecord> records;
  StopReason stop = StopReason::MaxIter;
  /// Step size after the last recorded iteration.
  double final_lambda = 0.0;
  std::string message;

  long iterations() const { return static_cast<long>(records.size()); }
  bool empty() const { return records.empty(); }
  /// Last x_{k+1}; throws on an empty trace.
  const Vector& final_point() const;
};

/// Iterates from (x0, x1) with w_0 := x0. Throws UnsupportedPairError for a
/// geometry the feasible set has no projection for; domain errors met while
/// iterating end the run with StopReason::Diverged.
SolverTrace solve_alg1(const VIProblem& problem, const Alg1Config& cfg, const Vector& x0, const Vector& x1);

using RelaxationSequence = std::function<double(long)>;

/// y_k = P(x_k - lambda F x_k);
/// x_{k+1} = gamma_k (y_k + lambda (F x_k - F y_k)) + (1 - gamma_k) x_k.
/// gamma_k == 1 is Tseng's method.
SolverTrace solve_relaxed_fbf(const VIProblem& problem, double lambda, const RelaxationSequence& gamma,
                              const Vector& x0, double tol, long max_iter);

/// xbar_k = ((psi - 1) x_k + xbar_{k-1}) / psi; x_{k+1} = P(xbar_k - lambda F x_k);
/// xbar_0 := x0.
SolverTrace solve_graal_baseline(const VIProblem& problem, double lambda, double psi, const Vector& x0,
                                 double tol, long max_iter);

using ErgodicWeights = std::function<double(long)>;

/// (sum s_k x_k) / (sum s_k) over the recorded iterates x_k.
Vector discrete_ergodic_average(const SolverTrace& trace, const ErgodicWeights& weights);

}  // namespace qvi
