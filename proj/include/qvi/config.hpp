#pragma once

// INI-style run configuration for `qvi solve`.
//
//   seed = 0
//   [problem]
//   name = example-5.2
//   dim = 10
//   params.a = 2
//   params.b = 3
//   [solver]
//   name = alg1          ; alg1 | relaxed_fbf | graal
//   lambda1 = 0.15
//   geometry = sqnorm    ; sqnorm | entropy
//   [integrator]
//   scheme = euler       ; euler | rk4
//   h = 1e-3
//   T = 50
//   [output]
//   dir = out
//
// Comments start with '#' or ';'. Unknown sections or keys, duplicate keys
// and out-of-range values are rejected with the offending line number.

#include "qvi/dynamics.hpp"
#include "qvi/solvers.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace qvi {

enum class SolverKind { Alg1, RelaxedFbf, Graal };

const char* to_string(SolverKind s);

struct RunConfig {
  std::uint64_t seed = 0;

  std::string problem_name;
  std::optional<int> dim;
  ProblemParams params;

  SolverKind solver = SolverKind::Alg1;
  /// Solver parameters; relaxed_fbf and graal read lambda1 as their fixed
  /// step, relaxed_fbf reads gamma as its constant relaxation, graal reads psi.
  Alg1Config alg1;

  IntegratorConfig integrator;
  std::filesystem::path output_dir = ".";

  /// Line of the problem.name entry, for errors raised while building it.
  int problem_line = 0;
};

/// Parses and validates a configuration. Errors are ValidationError with a
/// "line N: " prefix.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

/// The catalog problem named by the config. Catalog errors are rethrown
/// with the line of problem.name.
VIProblem build_problem(const RunConfig& cfg);

}  // namespace qvi
