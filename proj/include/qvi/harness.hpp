#pragma once

// Drivers for the three benchmark experiments: the continuous flow on
// example-5.1, the solver comparison on example-5.2, and the entropy-geometry
// routing problem example-5.3. Each run_* returns in-memory results; each
// reproduce_* also writes CSV and SVG files.

#include "qvi/csv.hpp"
#include "qvi/dynamics.hpp"
#include "qvi/solvers.hpp"
#include "qvi/svg.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace qvi {

// --- example-5.1 -----------------------------------------------------------

struct Example51Run {
  double lambda = 0.0;
  Trajectory trajectory;
  std::vector<double> energy;  ///< V(t) = 0.5 ||x(t)||^2
};

struct Example51Result {
  Example51Case which = Example51Case::Case1;
  std::vector<Example51Run> runs;
};

const char* case_label(Example51Case c);

/// FBF flow for each lambda from the case's initial point. Runs for
/// different lambdas are independent and execute in parallel.
Example51Result run_example_5_1(Example51Case which, const std::vector<double>& lambdas,
                                const IntegratorConfig& cfg = {});

// --- example-5.2 -----------------------------------------------------------

enum class Example52Case { I, II, III, IV };

const char* case_label(Example52Case c);
std::pair<double, double> example_5_2_parameters(Example52Case c);  ///< (a, b)

/// lambda1 = 0.15, mu = 0.8, gamma = 0.9, psi = golden ratio, tol 1e-5,
/// at most 1000 iterations, squared-norm geometry.
Alg1Config example_5_2_alg1_config();

struct SolverRun {
  std::string solver;
  SolverTrace trace;
};

struct Example52Result {
  Example52Case which = Example52Case::I;
  ResultTable table;
  std::vector<SolverRun> runs;
};

/// solvers is a subset of {"alg1", "graal"}; graal uses lambda = 0.15 and
/// psi = golden ratio with the same stopping rule.
Example52Result run_example_5_2(Example52Case which, int dim = 10,
                                const std::vector<std::string>& solvers = {"alg1", "graal"});

// --- example-5.3 -----------------------------------------------------------

/// Entropy geometry, gamma = 0.8, mu = 0.5, psi = golden ratio, lambda1 =
/// 0.15, tol 1e-4, at most 800 iterations.
Alg1Config example_5_3_alg1_config(bool with_extrapolation);

struct Example53Result {
  bool with_extrapolation = true;
  SolverTrace trace;
  std::vector<Vector> flows;      ///< x_{k+1} per iteration
  std::vector<double> residuals;  ///< E_k per iteration
};

Example53Result run_example_5_3(bool with_extrapolation);

// --- output ------------------------------------------------------------------

struct ChartOutput {
  std::string file;  ///< relative to the experiment's output directory
  Chart chart;
};

struct ExperimentSpec {
  std::string name;
  std::filesystem::path output_dir;
};

/// Writes table.csv (when the table has rows) and one SVG per chart into
/// spec.output_dir. I/O failures are reported with the offending path.
void emit_results(const ResultTable& table, const std::vector<ChartOutput>& charts, const ExperimentSpec& spec);

void reproduce_example_5_1(const std::filesystem::path& dir);
void reproduce_example_5_2(const std::filesystem::path& dir);
void reproduce_example_5_3(const std::filesystem::path& dir);

}  // namespace qvi
