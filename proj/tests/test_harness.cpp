#include <doctest.h>

#include "qvi/harness.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace qvi;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("qvi_test_harness_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double svg_attr(const std::string& svg, const std::string& name) {
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, std::regex(name + "=\"([^\"]+)\"")));
  return parse_double(m[1].str());
}

std::size_t polyline_vertices(const std::string& svg) {
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, std::regex("points=\"([^\"]*)\"")));
  std::istringstream pts(m[1].str());
  std::size_t n = 0;
  for (std::string tok; pts >> tok;) ++n;
  return n;
}

}  // namespace

TEST_CASE("csv formatting round-trips") {
  for (double v : {0.0, -0.0, 1.0 / 3.0, 5.0679, 1e-300, -2.5e17, 0.1 + 0.2}) {
    const double back = parse_double(format_double(v));
    CHECK(std::memcmp(&v, &back, sizeof v) == 0);
  }
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(std::isnan(parse_double("nan")));
  CHECK_THROWS_AS(parse_double("1.5x"), ValidationError);
  CHECK_THROWS_AS(parse_double(""), ValidationError);

  const CsvTable t{{"a", "b"}, {{"1", "2.5"}, {"3", "nan"}}};
  const std::string s = to_csv_string(t);
  CHECK(s == "a,b\n1,2.5\n3,nan\n");
  const CsvTable back = parse_csv(s);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
}

TEST_CASE("csv schemas") {
  const auto r = run_example_5_2(Example52Case::I);
  const CsvTable table = result_table_csv(r.table);
  CHECK_NOTHROW(validate_schema(table, CsvSchema::Table));
  const ResultTable parsed = parse_result_table(parse_csv(to_csv_string(table)));
  REQUIRE(parsed.rows.size() == 2);
  CHECK(parsed.rows[0].solver == "alg1");
  CHECK(parsed.rows[0].iterations == r.runs[0].trace.iterations());
  CHECK(parsed.rows[1].final_error == r.table.rows[1].final_error);

  const CsvTable trace = trace_csv(r.runs[0].trace);
  CHECK(trace.header == std::vector<std::string>{"k", "lambda", "E_k", "residual", "dist_to_solution"});
  CHECK(trace.rows.size() == r.runs[0].trace.records.size());
  CHECK_NOTHROW(validate_schema(parse_csv(to_csv_string(trace)), CsvSchema::Trace));
  CHECK_THROWS_AS(validate_schema(trace, CsvSchema::Energy), ValidationError);

  CsvTable bad = trace;
  bad.rows[0][0] = "1.5";
  CHECK_THROWS_AS(validate_schema(bad, CsvSchema::Trace), ValidationError);
  bad = trace;
  bad.rows[0].pop_back();
  CHECK_THROWS_AS(validate_schema(bad, CsvSchema::Trace), ValidationError);
}

TEST_CASE("run_example_5_1") {
  CHECK_THROWS_AS(run_example_5_1(Example51Case::Case1, {}), ValidationError);
  IntegratorConfig cfg;
  cfg.horizon = 5.0;
  const auto res = run_example_5_1(Example51Case::Case2, {0.05, 0.1, 0.2}, cfg);
  REQUIRE(res.runs.size() == 3);
  const VIProblem p = make_example_5_1();
  for (const auto& run : res.runs) {
    // Parallel runs match a direct serial integration bitwise.
    const Trajectory t = integrate_flow(p, FlowSystem::ForwardBackwardForward, run.lambda,
                                        example_5_1_initial_point(Example51Case::Case2), cfg);
    REQUIRE(t.size() == run.trajectory.size());
    CHECK((t.xs.back().array() == run.trajectory.xs.back().array()).all());
    CHECK(run.energy.size() == t.size());
    CHECK(run.energy.front() == doctest::Approx(0.5 * (16 + 9 + 25)));
  }
  CHECK(std::string(case_label(Example51Case::Case1)) == "case1");

  const CsvTable traj = trajectory_csv(res.runs[0].trajectory);
  CHECK(traj.header == std::vector<std::string>{"t", "x1", "x2", "x3", "y1", "y2", "y3"});
  CHECK_NOTHROW(validate_schema(traj, CsvSchema::Trajectory));
  CHECK_NOTHROW(validate_schema(energy_csv(res.runs[0].trajectory.times, res.runs[0].energy), CsvSchema::Energy));
}

TEST_CASE("run_example_5_2 arguments") {
  CHECK_THROWS_AS(run_example_5_2(Example52Case::I, 1), ValidationError);
  CHECK_THROWS_AS(run_example_5_2(Example52Case::I, 10, {"tseng"}), ValidationError);
  CHECK(example_5_2_parameters(Example52Case::III) == std::pair{4.0, 7.0});
  const auto r = run_example_5_2(Example52Case::II, 4, {"graal"});
  REQUIRE(r.table.rows.size() == 1);
  CHECK(r.table.rows[0].case_name == "Case II");
  CHECK(r.table.rows[0].iterations <= 1000);
}

TEST_CASE("run_example_5_3") {
  const auto with = run_example_5_3(true);
  const auto without = run_example_5_3(false);
  CHECK(with.flows.size() == with.trace.records.size());
  CHECK(with.residuals.size() == with.trace.records.size());
  CHECK(with.residuals.back() == with.trace.records.back().step_norm);
  // Without extrapolation w_k is x_k.
  for (const auto& r : without.trace.records) CHECK(r.w == r.x);
  CHECK_FALSE(example_5_3_alg1_config(false).extrapolate);
}

TEST_CASE("emit_results") {
  SUBCASE("no charts: table only") {
    const fs::path d = fresh_dir("table_only");
    emit_results(run_example_5_2(Example52Case::I).table, {}, {"t", d});
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(d)) files.push_back(e.path().filename());
    CHECK(files == std::vector<fs::path>{"table.csv"});
  }
  SUBCASE("one series of N points gives N polyline vertices") {
    const fs::path d = fresh_dir("one_series");
    Chart c{"c", "x", "y", false, std::nullopt, {{"s", {0, 1, 2, 3, 4, 5, 6}, {1, 4, 2, 8, 5, 7, 1}}}};
    emit_results({}, {{"one.svg", c}}, {"t", d});
    CHECK_FALSE(fs::exists(d / "table.csv"));
    const std::string svg = slurp(d / "one.svg");
    CHECK(polyline_vertices(svg) == 7);
    CHECK(svg.find("<polyline") == svg.rfind("<polyline"));
  }
  SUBCASE("I/O failures name the path") {
    const fs::path d = fresh_dir("io");
    std::ofstream(d / "blocker") << "x";
    try {
      emit_results(run_example_5_2(Example52Case::I).table, {}, {"t", d / "blocker" / "sub"});
      FAIL("expected an I/O error");
    } catch (const std::exception& e) {
      CHECK(std::string(e.what()).find("blocker") != std::string::npos);
    }
  }
}

TEST_CASE("reproduce_example_5_3 output") {
  const fs::path d = fresh_dir("ex53");
  reproduce_example_5_3(d);
  for (const char* f : {"trace.csv", "flows.svg", "residual.svg", "table.csv", "no_extrapolation/trace.csv"}) {
    CHECK(fs::exists(d / f));
  }
  const CsvTable trace = read_csv(d / "trace.csv");
  CHECK_NOTHROW(validate_schema(trace, CsvSchema::Trace));
  double max_e = 0.0;
  for (const auto& row : trace.rows) max_e = std::max(max_e, parse_double(row[2]));

  // Log-y residual chart spans [tol, max E_k].
  const std::string svg = slurp(d / "residual.svg");
  CHECK(svg.find("data-log-y=\"true\"") != std::string::npos);
  const double y_min = svg_attr(svg, "data-y-min");
  const double y_max = svg_attr(svg, "data-y-max");
  CHECK(y_min <= 1e-4);
  CHECK(y_max >= max_e);
  const auto no_ext = read_csv(d / "no_extrapolation" / "trace.csv");
  for (const auto& row : no_ext.rows) CHECK(parse_double(row[2]) <= y_max);

  const auto table = parse_result_table(read_csv(d / "table.csv"));
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].iterations == static_cast<long>(trace.rows.size()));
}

TEST_CASE("chart y-range") {
  Chart c{"c", "x", "y", true, 1e-4, {{"s", {0, 1, 2}, {0.5, 1e-3, 0.0}}}};
  const AxisRange r = chart_y_range(c);
  CHECK(r.lo == 1e-4);
  CHECK(r.hi == 0.5);
  c.log_y = false;
  c.y_floor.reset();
  CHECK(chart_y_range(c).lo == 0.0);
  CHECK_THROWS(render_svg(Chart{"c", "x", "y", false, std::nullopt, {{"s", {0, 1}, {1}}}}));
}
