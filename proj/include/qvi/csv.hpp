#pragma once

// CSV files: comma separated, header row, LF line endings, '.' decimal
// point. Numbers are written in shortest round-trip form, so a value read
// back compares equal to the value written.

#include "qvi/dynamics.hpp"
#include "qvi/solvers.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qvi {

struct ResultRow {
  std::string case_name;
  std::string solver;
  long iterations = 0;
  double wall_time_seconds = 0.0;
  double final_residual = 0.0;
  double final_error = 0.0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string format_double(double v);
/// Throws ValidationError on anything that is not a complete number.
double parse_double(std::string_view text);

/// Overwrites the file; parent directories are created.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text);
std::string to_csv_string(const CsvTable& table);

enum class CsvSchema { Trajectory, Energy, Trace, Table };

/// trajectory: t,x1..xn,y1..yn
CsvTable trajectory_csv(const Trajectory& traj);
/// energy: t,V
CsvTable energy_csv(const std::vector<double>& times, const std::vector<double>& energy);
/// trace: k,lambda,E_k,residual,dist_to_solution
CsvTable trace_csv(const SolverTrace& trace);
/// table: case,solver,iterations,wall_time_seconds,final_residual,final_error
CsvTable result_table_csv(const ResultTable& table);

/// Checks the header and that every field parses with the column's type.
void validate_schema(const CsvTable& table, CsvSchema schema);

/// Reads back a table.csv.
ResultTable parse_result_table(const CsvTable& table);

}  // namespace qvi
