#include "qvi/cli.hpp"

#include "qvi/checks.hpp"
#include "qvi/config.hpp"
#include "qvi/harness.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <limits>

namespace qvi {

namespace fs = std::filesystem;

namespace {

// Maps exceptions to exit codes; validation problems are usage errors.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedPairError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace

int cmd_reproduce(const std::string& example, const fs::path& output_dir, std::ostream& out, std::ostream& err) {
  if (example != "5.1" && example != "5.2" && example != "5.3" && example != "all") {
    err << "error: unknown example '" << example << "'; valid examples are 5.1, 5.2, 5.3, all\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    if (example == "5.1") reproduce_example_5_1(output_dir);
    if (example == "5.2") reproduce_example_5_2(output_dir);
    if (example == "5.3") reproduce_example_5_3(output_dir);
    if (example == "all") {
      reproduce_example_5_1(output_dir / "example-5.1");
      reproduce_example_5_2(output_dir / "example-5.2");
      reproduce_example_5_3(output_dir / "example-5.3");
    }
    out << "wrote example " << example << " results to " << output_dir.string() << '\n';
    return kExitOk;
  });
}

int cmd_solve(const fs::path& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_run_config(config_path);
    const VIProblem problem = build_problem(cfg);
    const Vector x0 = default_initial_point(problem);
    const Alg1Config& a = cfg.alg1;

    SolverTrace trace;
    switch (cfg.solver) {
      case SolverKind::Alg1:
        trace = solve_alg1(problem, a, x0, x0);
        break;
      case SolverKind::RelaxedFbf: {
        const double gamma = a.gamma;
        trace = solve_relaxed_fbf(problem, a.lambda1, [gamma](long) { return gamma; }, x0, a.tol, a.max_iter);
        break;
      }
      case SolverKind::Graal:
        trace = solve_graal_baseline(problem, a.lambda1, a.psi, x0, a.tol, a.max_iter);
        break;
    }

    write_csv(cfg.output_dir / "trace.csv", trace_csv(trace));
    const double residual =
        trace.empty() ? std::numeric_limits<double>::quiet_NaN() : trace.records.back().residual;
    out << to_string(trace.stop) << " iterations=" << trace.iterations() << " residual=" << format_double(residual)
        << " seed=" << cfg.seed << '\n';
    if (!trace.message.empty() && trace.stop == StopReason::Diverged) err << "diverged: " << trace.message << '\n';
    switch (trace.stop) {
      case StopReason::Tolerance: return kExitOk;
      case StopReason::MaxIter: return kExitMaxIter;
      case StopReason::Diverged: break;
    }
    return kExitRuntime;
  });
}

int cmd_check(const std::string& suite, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  const auto which = parse_check_suite(suite);
  if (!which) {
    err << "error: unknown suite '" << suite << "'; valid suites are geometry, stepsize, dynamics, all\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    const auto results = run_check_suite(*which, seed);
    int failed = 0;
    for (const auto& r : results) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
      if (!r.passed) ++failed;
    }
    out << results.size() - failed << '/' << results.size() << " properties passed, seed=" << seed << '\n';
    return failed == 0 ? kExitOk : kExitRuntime;
  });
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Solvers and diagnostics for quasimonotone variational inequalities", "qvi"};
  app.require_subcommand(1);

  std::string example;
  std::string dir;
  auto* reproduce = app.add_subcommand("reproduce", "Run an experiment and write CSV and SVG results");
  reproduce->add_option("example", example, "5.1, 5.2, 5.3 or all")->required();
  reproduce->add_option("dir", dir, "Output directory")->required();

  std::string config;
  auto* solve = app.add_subcommand("solve", "Solve the problem described by an INI config file");
  solve->add_option("config", config, "Config file")->required();

  std::string suite;
  std::uint64_t seed = 0;
  auto* check = app.add_subcommand("check", "Run a property suite");
  check->add_option("suite", suite, "geometry, stepsize, dynamics or all")->required();
  check->add_option("--seed", seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*reproduce) return cmd_reproduce(example, dir, std::cout, std::cerr);
  if (*solve) return cmd_solve(config, std::cout, std::cerr);
  return cmd_check(suite, seed, std::cout, std::cerr);
}

}  // namespace qvi
