#include "qvi/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qvi {

namespace fs = std::filesystem;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ValidationError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

namespace {

long parse_long(std::string_view text) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::string join(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  return line;
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string to_csv_string(const CsvTable& table) {
  std::string s = join(table.header) + '\n';
  for (const auto& row : table.rows) s += join(row) + '\n';
  return s;
}

void write_csv(const fs::path& path, const CsvTable& table) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << to_csv_string(table);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  bool first = true;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    if (first) {
      t.header = split(line);
      first = false;
    } else {
      t.rows.push_back(split(line));
    }
  }
  return t;
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

CsvTable trajectory_csv(const Trajectory& traj) {
  CsvTable t;
  const Eigen::Index n = traj.xs.empty() ? 0 : traj.xs.front().size();
  t.header.push_back("t");
  for (Eigen::Index i = 1; i <= n; ++i) t.header.push_back("x" + std::to_string(i));
  for (Eigen::Index i = 1; i <= n; ++i) t.header.push_back("y" + std::to_string(i));
  for (std::size_t r = 0; r < traj.size(); ++r) {
    std::vector<std::string> row{format_double(traj.times[r])};
    for (Eigen::Index i = 0; i < n; ++i) row.push_back(format_double(traj.xs[r][i]));
    for (Eigen::Index i = 0; i < n; ++i) row.push_back(format_double(traj.ys[r][i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable energy_csv(const std::vector<double>& times, const std::vector<double>& energy) {
  if (times.size() != energy.size()) throw ValidationError("energy_csv: length mismatch");
  CsvTable t{{"t", "V"}, {}};
  for (std::size_t i = 0; i < times.size(); ++i) t.rows.push_back({format_double(times[i]), format_double(energy[i])});
  return t;
}

CsvTable trace_csv(const SolverTrace& trace) {
  CsvTable t{{"k", "lambda", "E_k", "residual", "dist_to_solution"}, {}};
  for (const auto& r : trace.records) {
    t.rows.push_back({std::to_string(r.k), format_double(r.lambda), format_double(r.step_norm),
                      format_double(r.residual), format_double(r.bregman_to_solution)});
  }
  return t;
}

CsvTable result_table_csv(const ResultTable& table) {
  CsvTable t{{"case", "solver", "iterations", "wall_time_seconds", "final_residual", "final_error"}, {}};
  for (const auto& r : table.rows) {
    t.rows.push_back({r.case_name, r.solver, std::to_string(r.iterations), format_double(r.wall_time_seconds),
                      format_double(r.final_residual), format_double(r.final_error)});
  }
  return t;
}

void validate_schema(const CsvTable& table, CsvSchema schema) {
  auto fail = [](const std::string& what) { throw ValidationError("csv schema: " + what); };
  const auto& h = table.header;
  std::vector<char> types;  // 'd' double, 'i' integer, 's' string
  switch (schema) {
    case CsvSchema::Trajectory: {
      if (h.size() < 3 || (h.size() - 1) % 2 != 0 || h[0] != "t") fail("trajectory header must be t,x1..xn,y1..yn");
      const std::size_t n = (h.size() - 1) / 2;
      for (std::size_t i = 0; i < n; ++i) {
        if (h[1 + i] != "x" + std::to_string(i + 1) || h[1 + n + i] != "y" + std::to_string(i + 1)) {
          fail("trajectory header must be t,x1..xn,y1..yn");
        }
      }
      types.assign(h.size(), 'd');
      break;
    }
    case CsvSchema::Energy:
      if (h != std::vector<std::string>{"t", "V"}) fail("energy header must be t,V");
      types = {'d', 'd'};
      break;
    case CsvSchema::Trace:
      if (h != std::vector<std::string>{"k", "lambda", "E_k", "residual", "dist_to_solution"}) {
        fail("trace header must be k,lambda,E_k,residual,dist_to_solution");
      }
      types = {'i', 'd', 'd', 'd', 'd'};
      break;
    case CsvSchema::Table:
      if (h != std::vector<std::string>{"case", "solver", "iterations", "wall_time_seconds", "final_residual",
                                        "final_error"}) {
        fail("table header must be case,solver,iterations,wall_time_seconds,final_residual,final_error");
      }
      types = {'s', 's', 'i', 'd', 'd', 'd'};
      break;
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != types.size()) fail("row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) + " fields");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (types[c] == 'd') parse_double(row[c]);
      else if (types[c] == 'i') parse_long(row[c]);
      else if (row[c].empty()) fail("row " + std::to_string(r + 1) + " has an empty text field");
    }
  }
}

ResultTable parse_result_table(const CsvTable& table) {
  validate_schema(table, CsvSchema::Table);
  ResultTable out;
  for (const auto& row : table.rows) {
    out.rows.push_back({row[0], row[1], parse_long(row[2]), parse_double(row[3]), parse_double(row[4]),
                        parse_double(row[5])});
  }
  return out;
}

}  // namespace qvi
