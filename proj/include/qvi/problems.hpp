#pragma once

#include "qvi/core.hpp"
#include "qvi/geometry.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>

namespace qvi {

enum class MonotonicityClass { Monotone, StronglyPseudomonotone, Pseudomonotone, Quasimonotone, Unknown };

const char* to_string(MonotonicityClass c);

using Operator = std::function<Vector(const Vector&)>;

/// VI(F, K): find x* in K with <F(x*), y - x*> >= 0 for every y in K.
///
/// The class label is descriptive metadata only; no solver branches on it.
class VIProblem {
 public:
  VIProblem(std::string name, Operator op, FeasibleSet set,
            std::optional<Vector> known_solution = std::nullopt,
            MonotonicityClass label = MonotonicityClass::Unknown);

  const std::string& name() const { return name_; }
  int dim() const { return set_.dim(); }
  const FeasibleSet& set() const { return set_; }
  const std::optional<Vector>& known_solution() const { return known_solution_; }
  MonotonicityClass label() const { return label_; }
  const Operator& op() const { return op_; }

 private:
  std::string name_;
  Operator op_;
  FeasibleSet set_;
  std::optional<Vector> known_solution_;
  MonotonicityClass label_;
};

/// F(x), with length checks on input and output.
Vector eval_operator(const VIProblem& problem, const Vector& x);

/// ||x - proj_K(grad Phi*(grad Phi(x) - lambda F(x)))||_2; zero exactly at
/// solutions of the VI.
double natural_residual(const VIProblem& problem, const BregmanGeometry& geom, const Vector& x,
                        double lambda);

// ---------------------------------------------------------------------------
// Catalog of benchmark problems.

/// The symmetric matrix used by example-5.1.
Eigen::Matrix3d example_5_1_matrix();

/// F(x) = (exp(-||x||^2) + q) M x on the box [-5, 5]^3. Solution x* = 0.
VIProblem make_example_5_1(double q = 0.2);

/// F(x) = (b - ||x||) x on the ball of radius a in R^dim, a finite truncation
/// of the sequence-space problem. Requires 0 < b/2 < a. Solution x* = 0.
VIProblem make_example_5_2(double a, double b, int dim = 10);

/// Three parallel routes with costs 1 + x1^q, 1.5 + x2^q, 2 + x3^q on the
/// probability simplex. 0^q is defined as 0; negative flows are rejected.
VIProblem make_example_5_3(double q = 0.2);

enum class Example51Case { Case1, Case2 };

Vector example_5_1_initial_point(Example51Case c);

/// x_i = 1/i, rescaled radially into the ball when it lies outside.
Vector example_5_2_initial_point(const VIProblem& problem);

Vector example_5_3_initial_point();

/// Parameters keyed by name ("q", "a", "b"); unknown keys are rejected.
using ProblemParams = std::map<std::string, double>;

/// Builds "example-5.1", "example-5.2" or "example-5.3". dim is only
/// meaningful for example-5.2; the others require dim = 3 when given.
VIProblem problem_by_name(const std::string& name, const ProblemParams& params = {},
                          std::optional<int> dim = std::nullopt);

/// Default initial point for a catalog problem.
Vector default_initial_point(const VIProblem& problem);

}  // namespace qvi
