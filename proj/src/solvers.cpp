#include "qvi/solvers.hpp"

#include <cmath>
#include <limits>

namespace qvi {

double EtaSpec::operator()(long k) const {
  if (form == Form::Zero) return 0.0;
  return c / std::pow(static_cast<double>(k), p);
}

double EtaSpec::total() const {
  if (form == Form::Zero || c == 0.0) return 0.0;
  return c * std::riemann_zeta(p);
}

void EtaSpec::validate() const {
  if (form == Form::Zero) return;
  if (!(c >= 0.0) || !std::isfinite(c)) throw ValidationError("eta_c must be nonnegative");
  if (!(p > 1.0) || !std::isfinite(p)) throw ValidationError("eta_p must be > 1 for a summable sequence");
}

StepSizeState initial_stepsize_state(double lambda1, const EtaSpec& spec) {
  if (!(lambda1 > 0.0)) throw ValidationError("lambda1 must be positive");
  return {lambda1, 1, spec.total()};
}

StepSizeState update_stepsize(const StepSizeState& state, const EtaSpec& spec, double mu, const Vector& w,
                              const Vector& y, const Vector& Fw, const Vector& Fy) {
  if (!(state.lambda > 0.0)) throw ValidationError("update_stepsize: lambda must be positive");
  const double eta = spec(state.k);
  const double grown = state.lambda + eta;
  const double op_gap = (Fw - Fy).norm();
  StepSizeState next;
  next.lambda = op_gap > 1e-14 ? std::min(mu * (w - y).norm() / op_gap, grown) : grown;
  next.k = state.k + 1;
  next.eta_sum_remaining = state.eta_sum_remaining - eta;
  return next;
}

void Alg1Config::validate() const {
  if (!(lambda1 > 0.0)) throw ValidationError("lambda1 must be positive");
  if (!(mu > 0.0 && mu < 1.0)) throw ValidationError("mu must be in (0,1)");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("gamma must be in (0,1)");
  if (!(psi > 1.0)) throw ValidationError("psi must be > 1");
  if (!(tol > 0.0)) throw ValidationError("tol must be positive");
  if (max_iter < 1) throw ValidationError("max_iter must be positive");
  eta.validate();
  geometry.validate();
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Tolerance: return "Tolerance";
    case StopReason::MaxIter: return "MaxIter";
    case StopReason::Diverged: break;
  }
  return "Diverged";
}

const Vector& SolverTrace::final_point() const {
  if (records.empty()) throw RangeError("final_point: empty trace");
  return records.back().x_next;
}

namespace {

// grad Phi* followed by the entropy floor, so later logarithms stay finite.
Vector mirror_point(const BregmanGeometry& geom, const Vector& dual, bool& saturated) {
  ConjugateGradient g = grad_phi_star_checked(geom, dual);
  saturated = saturated || g.saturated;
  if (geom.kind == GeometryKind::NegativeEntropy) {
    g.point = g.point.cwiseMax(geom.domain_floor);
  }
  return std::move(g.point);
}

double distance_to_solution(const VIProblem& problem, const BregmanGeometry& geom, const Vector& x) {
  if (!problem.known_solution()) return std::numeric_limits<double>::quiet_NaN();
  return bregman_distance(geom, *problem.known_solution(), x);
}

void check_initial(const VIProblem& problem, const Vector& x, const char* what) {
  if (x.size() != problem.dim()) {
    throw ValidationError(std::string(what) + " must have length " + std::to_string(problem.dim()));
  }
}

void check_common(double tol, long max_iter) {
  if (!(tol > 0.0)) throw ValidationError("tol must be positive");
  if (max_iter < 1) throw ValidationError("max_iter must be positive");
}

// Finishes a trace after an iteration produced a non-finite point or raised.
void mark_diverged(SolverTrace& trace, std::string why) {
  trace.stop = StopReason::Diverged;
  trace.message = std::move(why);
}

}  // namespace

SolverTrace solve_alg1(const VIProblem& problem, const Alg1Config& cfg, const Vector& x0, const Vector& x1) {
  cfg.validate();
  check_initial(problem, x0, "x0");
  check_initial(problem, x1, "x1");
  const BregmanGeometry& geom = cfg.geometry;
  if (!is_supported_pair(geom.kind, problem.set())) {
    throw UnsupportedPairError(std::string("unsupported geometry/set pair: ") + to_string(geom.kind) +
                               " with " + problem.set().kind_name());
  }

  SolverTrace trace;
  StepSizeState step = initial_stepsize_state(cfg.lambda1, cfg.eta);
  trace.final_lambda = step.lambda;
  Vector x = x1;
  Vector w_prev = x0;
  try {
    Vector grad_x = grad_phi(geom, x);
    Vector grad_w_prev = grad_phi(geom, w_prev);
    for (long k = 1; k <= cfg.max_iter; ++k) {
      IterationRecord rec;
      rec.k = k;
      rec.lambda = step.lambda;
      bool saturated = false;

      Vector w = cfg.extrapolate
                     ? mirror_point(geom, ((cfg.psi - 1.0) * grad_x + grad_w_prev) / cfg.psi, saturated)
                     : x;
      const Vector grad_w = grad_phi(geom, w);
      const Vector fw = eval_operator(problem, w);
      Vector y = bregman_project(geom, problem.set(), mirror_point(geom, grad_w - step.lambda * fw, saturated));
      const Vector fy = eval_operator(problem, y);
      const Vector grad_y = grad_phi(geom, y);
      Vector x_next = mirror_point(
          geom, (1.0 - cfg.gamma) * grad_x + cfg.gamma * (grad_y - step.lambda * (fy - fw)), saturated);

      if (!w.allFinite() || !y.allFinite() || !x_next.allFinite()) {
        mark_diverged(trace, "non-finite iterate at k = " + std::to_string(k));
        return trace;
      }

      rec.step_norm = (x_next - x).norm();
      rec.residual = natural_residual(problem, geom, x_next, step.lambda);
      rec.bregman_to_solution = distance_to_solution(problem, geom, x);
      rec.saturated = saturated;
      step = update_stepsize(step, cfg.eta, cfg.mu, w, y, fw, fy);

      rec.x = std::move(x);
      rec.w = w;
      rec.y = std::move(y);
      rec.x_next = x_next;
      const double e = rec.step_norm;
      trace.records.push_back(std::move(rec));
      trace.final_lambda = step.lambda;

      grad_w_prev = grad_w;
      w_prev = std::move(w);
      x = std::move(x_next);
      grad_x = grad_phi(geom, x);
      if (e < cfg.tol) {
        trace.stop = StopReason::Tolerance;
        return trace;
      }
    }
  } catch (const DomainError& e) {
    mark_diverged(trace, e.what());
    return trace;
  }
  trace.stop = StopReason::MaxIter;
  return trace;
}

SolverTrace solve_relaxed_fbf(const VIProblem& problem, double lambda, const RelaxationSequence& gamma,
                              const Vector& x0, double tol, long max_iter) {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (!gamma) throw ValidationError("relaxation sequence is empty");
  check_common(tol, max_iter);
  check_initial(problem, x0, "x0");
  const BregmanGeometry geom = BregmanGeometry::squared_norm();

  SolverTrace trace;
  trace.final_lambda = lambda;
  Vector x = x0;
  try {
    for (long k = 0; k < max_iter; ++k) {
      const double g = gamma(k);
      if (!(g > 0.0 && g <= 1.0)) throw ValidationError("relaxation gamma_k must be in (0,1]");
      const Vector fx = eval_operator(problem, x);
      Vector y = euclidean_project(problem.set(), x - lambda * fx);
      const Vector fy = eval_operator(problem, y);
      Vector x_next = g * (y + lambda * (fx - fy)) + (1.0 - g) * x;
      if (!x_next.allFinite()) {
        mark_diverged(trace, "non-finite iterate at k = " + std::to_string(k));
        return trace;
      }
      IterationRecord rec;
      rec.k = k;
      rec.lambda = lambda;
      rec.step_norm = (x_next - x).norm();
      rec.residual = natural_residual(problem, geom, x_next, lambda);
      rec.bregman_to_solution = distance_to_solution(problem, geom, x);
      rec.w = x;
      rec.x = std::move(x);
      rec.y = std::move(y);
      rec.x_next = x_next;
      const double e = rec.step_norm;
      trace.records.push_back(std::move(rec));
      x = std::move(x_next);
      if (e < tol) {
        trace.stop = StopReason::Tolerance;
        return trace;
      }
    }
  } catch (const DomainError& e) {
    mark_diverged(trace, e.what());
    return trace;
  }
  trace.stop = StopReason::MaxIter;
  return trace;
}

SolverTrace solve_graal_baseline(const VIProblem& problem, double lambda, double psi, const Vector& x0,
                                 double tol, long max_iter) {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (!(psi > 1.0)) throw ValidationError("psi must be > 1");
  check_common(tol, max_iter);
  check_initial(problem, x0, "x0");
  const BregmanGeometry geom = BregmanGeometry::squared_norm();

  SolverTrace trace;
  trace.final_lambda = lambda;
  Vector x = x0;
  Vector x_bar = x0;
  try {
    for (long k = 1; k <= max_iter; ++k) {
      x_bar = ((psi - 1.0) * x + x_bar) / psi;
      const Vector fx = eval_operator(problem, x);
      Vector x_next = euclidean_project(problem.set(), x_bar - lambda * fx);
      if (!x_next.allFinite()) {
        mark_diverged(trace, "non-finite iterate at k = " + std::to_string(k));
        return trace;
      }
      IterationRecord rec;
      rec.k = k;
      rec.lambda = lambda;
      rec.step_norm = (x_next - x).norm();
      rec.residual = natural_residual(problem, geom, x_next, lambda);
      rec.bregman_to_solution = distance_to_solution(problem, geom, x);
      rec.w = x_bar;
      rec.y = x_next;
      rec.x = std::move(x);
      rec.x_next = x_next;
      const double e = rec.step_norm;
      trace.records.push_back(std::move(rec));
      x = std::move(x_next);
      if (e < tol) {
        trace.stop = StopReason::Tolerance;
        return trace;
      }
    }
  } catch (const DomainError& e) {
    mark_diverged(trace, e.what());
    return trace;
  }
  trace.stop = StopReason::MaxIter;
  return trace;
}

Vector discrete_ergodic_average(const SolverTrace& trace, const ErgodicWeights& weights) {
  if (trace.empty()) throw ValidationError("discrete_ergodic_average: empty trace");
  if (!weights) throw ValidationError("discrete_ergodic_average: no weights");
  // Running weighted mean: m += (s_k / S_k)(x_k - m). A constant sequence is
  // reproduced exactly.
  Vector mean = Vector::Zero(trace.records.front().x.size());
  double total = 0.0;
  for (const auto& rec : trace.records) {
    const double s = weights(rec.k);
    if (!(s > 0.0)) throw ValidationError("discrete_ergodic_average: weights must be positive");
    total += s;
    mean += (s / total) * (rec.x - mean);
  }
  return mean;
}

}  // namespace qvi
