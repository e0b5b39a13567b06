#pragma once

#include "feynkac/fields.hpp"
#include "feynkac/stepper.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace feynkac {

/// Problem description as it appears in a JSON config file: fields are
/// referenced by registry name and resolved by make_problem().
struct ProblemConfig {
  std::string id = "problem";
  double alpha = 0.5;
  Complex rho;
  double T = 1.0;
  int dim = 1;
  int m = 128;
  bool correction = true;
  FieldSpec potential;   // "U"
  FieldSpec initial;     // "G0"
  SourceSpec source;     // "f"
};

ProblemConfig parse_config(std::istream& in);
ProblemConfig parse_config_string(const std::string& text);
ProblemConfig load_config(const std::string& path);

/// Resolves the named fields against the registry.
Problem make_problem(const ProblemConfig& config);

struct ConvergenceRow {
  double tau = 0.0;
  double error = 0.0;
  std::optional<double> rate;  // log2(error_prev / error); absent on row 0
};

/// One convergence study: strictly halving taus, self-convergence errors,
/// per-refinement rates, and the least-squares fitted slope.
struct ConvergenceReport {
  std::string problem_id;
  std::string case_label = "-";  // "a"/"b"/"c" for the 2D table, else "-"
  double alpha = 0.0;
  std::string timestamp;  // ISO 8601 UTC, set when the report is created
  std::vector<ConvergenceRow> rows;
  std::optional<double> fitted_rate;
};

/// Runs the study for one problem; taus must halve strictly and divide T.
/// The required solves (each tau plus the final tau/2) run concurrently.
ConvergenceReport run_convergence(const ProblemConfig& config,
                                  const std::vector<double>& taus);

/// Same, reusing an already assembled system (must match config.dim/m).
ConvergenceReport run_convergence(const ProblemConfig& config,
                                  const FemSystem& sys,
                                  const std::vector<double>& taus);

/// The bundled convergence studies 1, 3, 5 and 7 (three 1D problems and a
/// 2D problem with three potential cases at two fractional orders), at
/// tau = 1/10, 1/20, 1/40, 1/80.
struct TableCell {
  ProblemConfig config;
  std::string case_label = "-";
};
std::vector<TableCell> table_configs(int table_id, int m);
std::vector<ConvergenceReport> reproduce_table(int table_id, int m = 128);

/// Reference errors shipped with the project for the --check mode.
struct ExpectedCell {
  std::string case_label;
  double alpha = 0.0;
  std::vector<double> taus;
  std::vector<double> errors;
};
const std::vector<ExpectedCell>& expected_table(int table_id);

struct CheckResult {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Per-value relative comparison of a run against reference cells.
CheckResult check_reports(const std::vector<ConvergenceReport>& reports,
                          const std::vector<ExpectedCell>& expected, double rtol);

/// Reads reference cells from a committed CSV (columns case,alpha,tau,error).
std::vector<ExpectedCell> read_expected_csv(std::istream& in);

void write_report_csv(std::ostream& os, const ConvergenceReport& report);
void write_table_csv(std::ostream& os, int table_id,
                     const std::vector<ConvergenceReport>& reports);
void write_expected_csv(std::ostream& os, const std::vector<ExpectedCell>& cells);

/// Least-squares slope of log2(error) against log2(tau); absent when any
/// error is nonpositive or fewer than two points exist.
std::optional<double> fitted_rate(const std::vector<double>& taus,
                                  const std::vector<double>& errors);

/// 17-significant-digit float formatting used by every CSV emitter.
std::string fmt17(double value);

/// Current UTC time as ISO 8601, the report timestamp format.
std::string iso_timestamp();

}  // namespace feynkac
