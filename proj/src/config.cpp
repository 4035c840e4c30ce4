#include "qvi/config.hpp"

#include "qvi/csv.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace qvi {

const char* to_string(SolverKind s) {
  switch (s) {
    case SolverKind::Alg1: return "alg1";
    case SolverKind::RelaxedFbf: return "relaxed_fbf";
    case SolverKind::Graal: break;
  }
  return "graal";
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw ValidationError("line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto pos = s.find_first_of("#;");
  return pos == std::string_view::npos ? s : s.substr(0, pos);
}

bool known_key(const std::string& key) {
  static const char* const keys[] = {
      "seed",           "problem.name",   "problem.dim",  "solver.name",     "solver.lambda1", "solver.mu",
      "solver.gamma",   "solver.psi",     "solver.eta_c", "solver.eta_p",    "solver.tol",     "solver.max_iter",
      "solver.geometry", "integrator.scheme", "integrator.h", "integrator.T", "output.dir"};
  for (const char* k : keys) {
    if (key == k) return true;
  }
  return key.rfind("problem.params.", 0) == 0 && key.size() > std::string_view("problem.params.").size();
}

double to_double(const Entry& e, const std::string& key) {
  try {
    return parse_double(e.value);
  } catch (const ValidationError&) {
    fail(e.line, key + " must be a number, got '" + e.value + "'");
  }
}

long long to_integer(const Entry& e, const std::string& key) {
  long long v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (e.value.empty() || ec != std::errc() || ptr != last) fail(e.line, key + " must be an integer, got '" + e.value + "'");
  return v;
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::string section;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "problem" && section != "solver" && section != "integrator" && section != "output") {
        fail(line_no, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    const std::string name(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (name.empty()) fail(line_no, "missing key");
    if (value.empty()) fail(line_no, "missing value for '" + name + "'");
    const std::string key = section.empty() ? name : section + "." + name;
    if (!known_key(key)) fail(line_no, "unknown key '" + key + "'");
    if (!entries.emplace(key, Entry{value, line_no}).second) fail(line_no, "duplicate key '" + key + "'");
  }

  RunConfig cfg;
  auto get = [&](const std::string& key) -> const Entry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  // Runs a validator and re-labels its error with the key's line.
  auto check = [&](const std::string& key, auto&& validate) {
    try {
      validate();
    } catch (const ValidationError& e) {
      const Entry* en = get(key);
      fail(en ? en->line : 0, e.what());
    }
  };

  if (const Entry* e = get("seed")) {
    const long long s = to_integer(*e, "seed");
    if (s < 0) fail(e->line, "seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }

  const Entry* name = get("problem.name");
  if (!name) fail(line_no, "missing required key 'problem.name'");
  cfg.problem_name = name->value;
  cfg.problem_line = name->line;
  if (const Entry* e = get("problem.dim")) {
    const long long d = to_integer(*e, "problem.dim");
    if (d < 1 || d > 1'000'000) fail(e->line, "problem.dim must be a positive integer");
    cfg.dim = static_cast<int>(d);
  }
  for (const auto& [key, e] : entries) {
    if (key.rfind("problem.params.", 0) == 0) {
      cfg.params[key.substr(std::string_view("problem.params.").size())] = to_double(e, key);
    }
  }

  if (const Entry* e = get("solver.name")) {
    if (e->value == "alg1") cfg.solver = SolverKind::Alg1;
    else if (e->value == "relaxed_fbf") cfg.solver = SolverKind::RelaxedFbf;
    else if (e->value == "graal") cfg.solver = SolverKind::Graal;
    else fail(e->line, "solver.name must be one of alg1, relaxed_fbf, graal");
  }
  Alg1Config& a = cfg.alg1;
  if (const Entry* e = get("solver.lambda1")) a.lambda1 = to_double(*e, "solver.lambda1");
  if (const Entry* e = get("solver.mu")) a.mu = to_double(*e, "solver.mu");
  if (const Entry* e = get("solver.gamma")) a.gamma = to_double(*e, "solver.gamma");
  if (const Entry* e = get("solver.psi")) a.psi = to_double(*e, "solver.psi");
  if (const Entry* e = get("solver.eta_c")) a.eta.c = to_double(*e, "solver.eta_c");
  if (const Entry* e = get("solver.eta_p")) a.eta.p = to_double(*e, "solver.eta_p");
  if (const Entry* e = get("solver.tol")) a.tol = to_double(*e, "solver.tol");
  if (const Entry* e = get("solver.max_iter")) {
    const long long m = to_integer(*e, "solver.max_iter");
    if (m < 1) fail(e->line, "max_iter must be positive");
    a.max_iter = static_cast<long>(m);
  }
  if (const Entry* e = get("solver.geometry")) {
    if (e->value == "sqnorm") a.geometry = BregmanGeometry::squared_norm();
    else if (e->value == "entropy") a.geometry = BregmanGeometry::negative_entropy();
    else fail(e->line, "solver.geometry must be sqnorm or entropy");
  }

  check("solver.lambda1", [&] { if (!(a.lambda1 > 0.0)) throw ValidationError("lambda1 must be positive"); });
  check("solver.mu", [&] { if (!(a.mu > 0.0 && a.mu < 1.0)) throw ValidationError("mu must be in (0,1)"); });
  check("solver.gamma", [&] {
    if (cfg.solver == SolverKind::RelaxedFbf) {
      if (!(a.gamma > 0.0 && a.gamma <= 1.0)) throw ValidationError("gamma must be in (0,1]");
    } else if (!(a.gamma > 0.0 && a.gamma < 1.0)) {
      throw ValidationError("gamma must be in (0,1)");
    }
  });
  check("solver.psi", [&] { if (!(a.psi > 1.0)) throw ValidationError("psi must be > 1"); });
  check("solver.eta_c", [&] { if (!(a.eta.c >= 0.0)) throw ValidationError("eta_c must be nonnegative"); });
  check("solver.eta_p", [&] { a.eta.validate(); });
  check("solver.tol", [&] { if (!(a.tol > 0.0)) throw ValidationError("tol must be positive"); });
  check("solver.geometry", [&] {
    if (cfg.solver != SolverKind::Alg1 && a.geometry.kind != GeometryKind::SquaredNorm) {
      throw ValidationError(std::string(to_string(cfg.solver)) + " supports only the sqnorm geometry");
    }
  });

  if (const Entry* e = get("integrator.scheme")) {
    if (e->value == "euler") cfg.integrator.scheme = Scheme::ExplicitEuler;
    else if (e->value == "rk4") cfg.integrator.scheme = Scheme::RungeKutta4;
    else fail(e->line, "integrator.scheme must be euler or rk4");
  }
  if (const Entry* e = get("integrator.h")) cfg.integrator.step = to_double(*e, "integrator.h");
  if (const Entry* e = get("integrator.T")) cfg.integrator.horizon = to_double(*e, "integrator.T");
  check(get("integrator.h") ? "integrator.h" : "integrator.T", [&] { cfg.integrator.validate(); });

  if (const Entry* e = get("output.dir")) cfg.output_dir = e->value;
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

VIProblem build_problem(const RunConfig& cfg) {
  try {
    return problem_by_name(cfg.problem_name, cfg.params, cfg.dim);
  } catch (const ValidationError& e) {
    fail(cfg.problem_line, e.what());
  }
}

}  // namespace qvi
