#include "qvi/problems.hpp"

#include <cmath>
#include <set>

namespace qvi {

const char* to_string(MonotonicityClass c) {
  switch (c) {
    case MonotonicityClass::Monotone: return "monotone";
    case MonotonicityClass::StronglyPseudomonotone: return "strongly-pseudomonotone";
    case MonotonicityClass::Pseudomonotone: return "pseudomonotone";
    case MonotonicityClass::Quasimonotone: return "quasimonotone";
    case MonotonicityClass::Unknown: break;
  }
  return "unknown";
}

VIProblem::VIProblem(std::string name, Operator op, FeasibleSet set,
                     std::optional<Vector> known_solution, MonotonicityClass label)
    : name_(std::move(name)),
      op_(std::move(op)),
      set_(std::move(set)),
      known_solution_(std::move(known_solution)),
      label_(label) {
  if (!op_) throw ValidationError("problem '" + name_ + "' has no operator");
  if (known_solution_ && !set_.contains(*known_solution_, 1e-12)) {
    throw ValidationError("known solution of '" + name_ + "' is not in the feasible set");
  }
}

Vector eval_operator(const VIProblem& problem, const Vector& x) {
  if (x.size() != problem.dim()) {
    throw DomainError("eval_operator: expected length " + std::to_string(problem.dim()) + ", got " +
                      std::to_string(x.size()));
  }
  Vector fx = problem.op()(x);
  if (fx.size() != problem.dim()) {
    throw DomainError("eval_operator: operator of '" + problem.name() + "' returned wrong length");
  }
  return fx;
}

double natural_residual(const VIProblem& problem, const BregmanGeometry& geom, const Vector& x,
                        double lambda) {
  if (!(lambda > 0.0)) throw ValidationError("natural_residual: lambda must be positive");
  const Vector fx = eval_operator(problem, x);
  const Vector p = bregman_project(geom, problem.set(), grad_phi_star(geom, grad_phi(geom, x) - lambda * fx));
  return (x - p).norm();
}

Eigen::Matrix3d example_5_1_matrix() {
  Eigen::Matrix3d m;
  m << 1.0, 0.0, -1.0,
       0.0, 1.5, 0.0,
      -1.0, 0.0, 2.0;
  return m;
}

VIProblem make_example_5_1(double q) {
  if (!(q > 0.0)) throw ValidationError("example-5.1: q must be positive");
  const Eigen::Matrix3d m = example_5_1_matrix();
  auto op = [m, q](const Vector& x) -> Vector {
    return (std::exp(-x.squaredNorm()) + q) * (m * x);
  };
  return VIProblem("example-5.1", op, FeasibleSet::uniform_box(3, -5.0, 5.0), Vector::Zero(3),
                   MonotonicityClass::StronglyPseudomonotone);
}

VIProblem make_example_5_2(double a, double b, int dim) {
  if (dim < 1) throw ValidationError("example-5.2: dim must be positive");
  if (!(b / 2.0 > 0.0 && b / 2.0 < a)) throw ValidationError("example-5.2: requires 0 < b/2 < a");
  auto op = [b](const Vector& x) -> Vector { return (b - x.norm()) * x; };
  return VIProblem("example-5.2", op, FeasibleSet::ball(Vector::Zero(dim), a), Vector::Zero(dim),
                   MonotonicityClass::Quasimonotone);
}

VIProblem make_example_5_3(double q) {
  if (!(q > 0.0)) throw ValidationError("example-5.3: q must be positive");
  auto op = [q](const Vector& x) -> Vector {
    static constexpr double base[3] = {1.0, 1.5, 2.0};
    Vector f(3);
    for (int i = 0; i < 3; ++i) {
      if (x[i] < 0.0 || !std::isfinite(x[i])) {
        throw DomainError("example-5.3: flow x" + std::to_string(i + 1) +
                          " outside [0, inf) for the fractional power");
      }
      f[i] = base[i] + (x[i] == 0.0 ? 0.0 : std::pow(x[i], q));
    }
    return f;
  };
  return VIProblem("example-5.3", op, FeasibleSet::simplex(3), std::nullopt,
                   MonotonicityClass::Pseudomonotone);
}

Vector example_5_1_initial_point(Example51Case c) {
  Vector x(3);
  if (c == Example51Case::Case1) x << -5.0, 4.0, 7.0;
  else x << -4.0, 3.0, 5.0;
  return x;
}

Vector example_5_2_initial_point(const VIProblem& problem) {
  Vector x(problem.dim());
  for (int i = 0; i < problem.dim(); ++i) x[i] = 1.0 / (i + 1);
  return euclidean_project(problem.set(), x);
}

Vector example_5_3_initial_point() {
  Vector x(3);
  x << 0.3, 0.4, 0.3;
  return x;
}

namespace {

double param_or(const ProblemParams& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(const ProblemParams& params, std::initializer_list<const char*> allowed,
                    const std::string& name) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : params) {
    if (!ok.count(key)) throw ValidationError(name + ": unknown parameter '" + key + "'");
  }
}

}  // namespace

VIProblem problem_by_name(const std::string& name, const ProblemParams& params, std::optional<int> dim) {
  if (name == "example-5.1" || name == "example-5.3") {
    reject_unknown(params, {"q"}, name);
    if (dim && *dim != 3) throw ValidationError(name + ": dim must be 3");
    const double q = param_or(params, "q", 0.2);
    return name == "example-5.1" ? make_example_5_1(q) : make_example_5_3(q);
  }
  if (name == "example-5.2") {
    reject_unknown(params, {"a", "b"}, name);
    return make_example_5_2(param_or(params, "a", 2.0), param_or(params, "b", 3.0), dim.value_or(10));
  }
  throw ValidationError("unknown problem '" + name +
                        "' (expected example-5.1, example-5.2 or example-5.3)");
}

Vector default_initial_point(const VIProblem& problem) {
  if (problem.name() == "example-5.1") return example_5_1_initial_point(Example51Case::Case1);
  if (problem.name() == "example-5.2") return example_5_2_initial_point(problem);
  if (problem.name() == "example-5.3") return example_5_3_initial_point();
  return euclidean_project(problem.set(), Vector::Zero(problem.dim()));
}

}  // namespace qvi
