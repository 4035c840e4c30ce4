#include "qvi/harness.hpp"

#include <chrono>
#include <exception>
#include <limits>

namespace qvi {

namespace fs = std::filesystem;

namespace {

// Runs body(i) for i in [0, n) on the OpenMP team; the first exception (by
// index) is rethrown on the calling thread.
template <class Body>
void parallel_indices(std::size_t n, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string lambda_tag(double lambda) { return "lambda_" + format_double(lambda); }

ResultRow summarize(const std::string& case_name, const std::string& solver, const SolverTrace& trace,
                    const VIProblem& problem, double seconds) {
  ResultRow row;
  row.case_name = case_name;
  row.solver = solver;
  row.iterations = trace.iterations();
  row.wall_time_seconds = seconds;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.final_residual = trace.empty() ? nan : trace.records.back().residual;
  row.final_error = trace.empty() || !problem.known_solution()
                        ? nan
                        : (trace.final_point() - *problem.known_solution()).norm();
  return row;
}

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Series iteration_series(const std::string& label, const SolverTrace& trace) {
  Series s{label, {}, {}};
  for (const auto& r : trace.records) {
    s.x.push_back(static_cast<double>(r.k));
    s.y.push_back(r.step_norm);
  }
  return s;
}

}  // namespace

const char* case_label(Example51Case c) { return c == Example51Case::Case1 ? "case1" : "case2"; }

Example51Result run_example_5_1(Example51Case which, const std::vector<double>& lambdas,
                                const IntegratorConfig& cfg) {
  if (lambdas.empty()) throw ValidationError("run_example_5_1: lambdas must be nonempty");
  const VIProblem problem = make_example_5_1();
  const Vector x0 = example_5_1_initial_point(which);
  Example51Result result;
  result.which = which;
  result.runs.resize(lambdas.size());
  parallel_indices(lambdas.size(), [&](std::size_t i) {
    Example51Run run;
    run.lambda = lambdas[i];
    run.trajectory = integrate_flow(problem, FlowSystem::ForwardBackwardForward, lambdas[i], x0, cfg);
    run.energy = lyapunov_energy(run.trajectory, *problem.known_solution());
    result.runs[i] = std::move(run);
  });
  return result;
}

const char* case_label(Example52Case c) {
  switch (c) {
    case Example52Case::I: return "I";
    case Example52Case::II: return "II";
    case Example52Case::III: return "III";
    case Example52Case::IV: break;
  }
  return "IV";
}

std::pair<double, double> example_5_2_parameters(Example52Case c) {
  switch (c) {
    case Example52Case::I: return {2.0, 3.0};
    case Example52Case::II: return {3.0, 5.0};
    case Example52Case::III: return {4.0, 7.0};
    case Example52Case::IV: break;
  }
  return {5.0, 9.0};
}

Alg1Config example_5_2_alg1_config() {
  Alg1Config cfg;
  cfg.lambda1 = 0.15;
  cfg.mu = 0.8;
  cfg.gamma = 0.9;
  cfg.psi = kGoldenRatio;
  cfg.tol = 1e-5;
  cfg.max_iter = 1000;
  cfg.geometry = BregmanGeometry::squared_norm();
  return cfg;
}

Example52Result run_example_5_2(Example52Case which, int dim, const std::vector<std::string>& solvers) {
  if (dim < 2) throw ValidationError("run_example_5_2: dim must be at least 2");
  const auto [a, b] = example_5_2_parameters(which);
  const VIProblem problem = make_example_5_2(a, b, dim);
  const Vector x0 = example_5_2_initial_point(problem);
  const Alg1Config cfg = example_5_2_alg1_config();

  Example52Result result;
  result.which = which;
  const std::string case_name = std::string("Case ") + case_label(which);
  for (const auto& name : solvers) {
    SolverRun run{name, {}};
    double seconds = 0.0;
    if (name == "alg1") {
      seconds = timed([&] { run.trace = solve_alg1(problem, cfg, x0, x0); });
    } else if (name == "graal") {
      seconds = timed([&] { run.trace = solve_graal_baseline(problem, cfg.lambda1, kGoldenRatio, x0, cfg.tol, cfg.max_iter); });
    } else {
      throw ValidationError("run_example_5_2: unknown solver '" + name + "' (expected alg1 or graal)");
    }
    result.table.rows.push_back(summarize(case_name, name, run.trace, problem, seconds));
    result.runs.push_back(std::move(run));
  }
  return result;
}

Alg1Config example_5_3_alg1_config(bool with_extrapolation) {
  Alg1Config cfg;
  cfg.lambda1 = 0.15;
  cfg.mu = 0.5;
  cfg.gamma = 0.8;
  cfg.psi = kGoldenRatio;
  cfg.tol = 1e-4;
  cfg.max_iter = 800;
  cfg.geometry = BregmanGeometry::negative_entropy();
  cfg.extrapolate = with_extrapolation;
  return cfg;
}

Example53Result run_example_5_3(bool with_extrapolation) {
  const VIProblem problem = make_example_5_3();
  const Vector x0 = example_5_3_initial_point();
  Example53Result result;
  result.with_extrapolation = with_extrapolation;
  result.trace = solve_alg1(problem, example_5_3_alg1_config(with_extrapolation), x0, x0);
  for (const auto& r : result.trace.records) {
    result.flows.push_back(r.x_next);
    result.residuals.push_back(r.step_norm);
  }
  return result;
}

void emit_results(const ResultTable& table, const std::vector<ChartOutput>& charts, const ExperimentSpec& spec) {
  try {
    fs::create_directories(spec.output_dir);
  } catch (const fs::filesystem_error& e) {
    throw std::runtime_error("cannot create output directory '" + spec.output_dir.string() + "': " + e.what());
  }
  if (!table.rows.empty()) write_csv(spec.output_dir / "table.csv", result_table_csv(table));
  for (const auto& c : charts) write_svg(spec.output_dir / c.file, c.chart);
}

void reproduce_example_5_1(const fs::path& dir) {
  const std::vector<double> lambdas{0.05, 0.1, 0.2};
  std::vector<ChartOutput> charts;
  for (Example51Case which : {Example51Case::Case1, Example51Case::Case2}) {
    const Example51Result res = run_example_5_1(which, lambdas);
    const std::string tag = case_label(which);
    Chart energy{"Lyapunov energy, example 5.1 " + tag, "t", "V(t)", true, std::nullopt, {}};
    for (const auto& run : res.runs) {
      const fs::path sub = dir / tag / lambda_tag(run.lambda);
      write_csv(sub / "trajectory.csv", trajectory_csv(run.trajectory));
      write_csv(sub / "energy.csv", energy_csv(run.trajectory.times, run.energy));
      energy.series.push_back({"lambda=" + format_double(run.lambda), run.trajectory.times, run.energy});

      Chart comps{"Trajectory components, example 5.1 " + tag + ", lambda=" + format_double(run.lambda), "t",
                  "x_i(t)", false, std::nullopt, {}};
      for (int i = 0; i < 3; ++i) {
        Series s{"x" + std::to_string(i + 1), run.trajectory.times, {}};
        for (const auto& x : run.trajectory.xs) s.y.push_back(x[i]);
        comps.series.push_back(std::move(s));
      }
      charts.push_back({"components_" + tag + "_" + lambda_tag(run.lambda) + ".svg", std::move(comps)});
    }
    charts.push_back({"energy_" + tag + ".svg", std::move(energy)});
  }
  emit_results({}, charts, {"example-5.1", dir});
}

void reproduce_example_5_2(const fs::path& dir) {
  const std::vector<Example52Case> cases{Example52Case::I, Example52Case::II, Example52Case::III, Example52Case::IV};
  std::vector<Example52Result> results(cases.size());
  parallel_indices(cases.size(), [&](std::size_t i) { results[i] = run_example_5_2(cases[i]); });

  ResultTable table;
  std::vector<ChartOutput> charts;
  for (const auto& res : results) {
    const std::string tag = std::string("case") + case_label(res.which);
    Chart chart{std::string("Example 5.2 Case ") + case_label(res.which), "iteration k", "E_k = ||x_{k+1} - x_k||",
                true, 1e-5, {}};
    for (const auto& run : res.runs) {
      write_csv(dir / tag / run.solver / "trace.csv", trace_csv(run.trace));
      chart.series.push_back(iteration_series(run.solver, run.trace));
    }
    table.rows.insert(table.rows.end(), res.table.rows.begin(), res.table.rows.end());
    charts.push_back({"residual_" + tag + ".svg", std::move(chart)});
  }
  emit_results(table, charts, {"example-5.2", dir});
}

void reproduce_example_5_3(const fs::path& dir) {
  const VIProblem problem = make_example_5_3();
  Example53Result with{};
  Example53Result without{};
  double t_with = 0.0;
  double t_without = 0.0;
  t_with = timed([&] { with = run_example_5_3(true); });
  t_without = timed([&] { without = run_example_5_3(false); });

  write_csv(dir / "trace.csv", trace_csv(with.trace));
  write_csv(dir / "no_extrapolation" / "trace.csv", trace_csv(without.trace));

  ResultTable table;
  table.rows.push_back(summarize("Example 5.3", "alg1", with.trace, problem, t_with));
  table.rows.push_back(summarize("Example 5.3", "alg1-no-extrapolation", without.trace, problem, t_without));

  Chart flows{"Path flows, example 5.3", "iteration k", "x_i", false, std::nullopt, {}};
  for (const auto* res : {&with, &without}) {
    const std::string suffix = res->with_extrapolation ? "" : " (no extrapolation)";
    for (int i = 0; i < 3; ++i) {
      Series s{"x" + std::to_string(i + 1) + suffix, {}, {}};
      for (std::size_t k = 0; k < res->flows.size(); ++k) {
        s.x.push_back(static_cast<double>(res->trace.records[k].k));
        s.y.push_back(res->flows[k][i]);
      }
      flows.series.push_back(std::move(s));
    }
  }
  Chart residual{"Residual E_k, example 5.3", "iteration k", "E_k = ||x_{k+1} - x_k||", true, 1e-4, {}};
  residual.series.push_back(iteration_series("golden ratio", with.trace));
  residual.series.push_back(iteration_series("no extrapolation", without.trace));

  emit_results(table, {{"flows.svg", std::move(flows)}, {"residual.svg", std::move(residual)}},
               {"example-5.3", dir});
}

}  // namespace qvi
