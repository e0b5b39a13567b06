#include "feynkac/harness.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace feynkac {

namespace {

using nlohmann::json;

FieldSpec parse_field_spec(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains("name")) {
    throw std::invalid_argument("config: '" + key + "' must be {\"name\": ..., ...}");
  }
  FieldSpec spec;
  spec.name = j.at("name").get<std::string>();
  if (j.contains("params")) {
    spec.params = j.at("params").get<std::vector<double>>();
  }
  return spec;
}

SourceSpec parse_source_spec(const json& j) {
  SourceSpec spec;
  if (!j.is_object() || !j.contains("name")) {
    throw std::invalid_argument("config: 'f' must be {\"name\": ..., ...}");
  }
  spec.name = j.at("name").get<std::string>();
  if (j.contains("params")) {
    spec.params = j.at("params").get<std::vector<double>>();
  }
  if (j.contains("spatial")) {
    spec.spatial = parse_field_spec(j.at("spatial"), "f.spatial");
  }
  return spec;
}

ProblemConfig config_from_json(const json& j) {
  ProblemConfig config;
  if (j.contains("id")) config.id = j.at("id").get<std::string>();
  config.alpha = j.at("alpha").get<double>();
  const auto rho = j.at("rho").get<std::vector<double>>();
  if (rho.size() != 2) {
    throw std::invalid_argument("config: 'rho' must be [re, im]");
  }
  config.rho = Complex(rho[0], rho[1]);
  config.T = j.at("T").get<double>();
  config.dim = j.at("dim").get<int>();
  config.m = j.at("m").get<int>();
  config.correction = j.at("correction").get<bool>();
  config.potential = parse_field_spec(j.at("U"), "U");
  config.initial = parse_field_spec(j.at("G0"), "G0");
  config.source = parse_source_spec(j.at("f"));

  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw std::invalid_argument("config: alpha must lie strictly inside (0,1)");
  }
  if (!(config.T > 0.0)) {
    throw std::invalid_argument("config: T must be > 0");
  }
  if (config.dim != 1 && config.dim != 2) {
    throw std::invalid_argument("config: dim must be 1 or 2");
  }
  if (config.m < 2) {
    throw std::invalid_argument("config: m must be >= 2");
  }
  return config;
}

std::string short_label(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

void append_row(std::vector<ExpectedCell>& cells, const std::string& case_label,
                double alpha, std::initializer_list<double> errors) {
  ExpectedCell cell;
  cell.case_label = case_label;
  cell.alpha = alpha;
  cell.taus = {0.1, 0.05, 0.025, 0.0125};
  cell.errors = errors;
  cells.push_back(std::move(cell));
}

}  // namespace

std::string fmt17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string iso_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

ProblemConfig parse_config(std::istream& in) {
  json j;
  in >> j;
  return config_from_json(j);
}

ProblemConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file '" + path + "'");
  }
  return parse_config(in);
}

Problem make_problem(const ProblemConfig& config) {
  Problem problem;
  problem.alpha = config.alpha;
  problem.rho = config.rho;
  problem.T = config.T;
  problem.dim = config.dim;
  problem.correction = config.correction;
  problem.potential = make_scalar_field(config.potential, config.dim);
  problem.initial = make_initial_field(config.initial, config.dim);
  problem.source =
      make_source_field(config.source, config.dim, config.rho, problem.potential);
  return problem;
}

std::optional<double> fitted_rate(const std::vector<double>& taus,
                                  const std::vector<double>& errors) {
  if (taus.size() != errors.size() || taus.size() < 2) {
    return std::nullopt;
  }
  for (double e : errors) {
    if (!(e > 0.0)) return std::nullopt;
  }
  double mean_x = 0.0, mean_y = 0.0;
  const auto n = static_cast<double>(taus.size());
  std::vector<double> xs(taus.size()), ys(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    xs[i] = std::log2(taus[i]);
    ys[i] = std::log2(errors[i]);
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
  }
  return sxy / sxx;
}

ConvergenceReport run_convergence(const ProblemConfig& config,
                                  const std::vector<double>& taus) {
  const FemSystem sys = assemble(build_mesh(config.dim, config.m));
  return run_convergence(config, sys, taus);
}

ConvergenceReport run_convergence(const ProblemConfig& config,
                                  const FemSystem& sys,
                                  const std::vector<double>& taus) {
  if (taus.empty()) {
    throw std::invalid_argument("run_convergence: need at least one tau");
  }
  if (sys.mesh.dim != config.dim || sys.mesh.m != config.m) {
    throw std::invalid_argument("run_convergence: system does not match config");
  }
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (std::abs(taus[i] - 0.5 * taus[i - 1]) > 1e-9 * taus[i - 1]) {
      throw std::invalid_argument("run_convergence: taus must halve strictly");
    }
  }
  const Problem problem = make_problem(config);

  // Solve once per distinct step size: every tau plus the final tau/2.
  std::vector<double> solve_taus = taus;
  solve_taus.push_back(taus.back() / 2.0);
  for (double tau : solve_taus) {
    step_count(config.T, tau);
  }

  std::vector<std::future<VectorZ>> futures;
  futures.reserve(solve_taus.size());
  for (double tau : solve_taus) {
    futures.push_back(std::async(std::launch::async, [&problem, &sys, tau] {
      return solve(problem, sys, tau).final_field().values;
    }));
  }
  std::vector<VectorZ> finals;
  finals.reserve(solve_taus.size());
  for (auto& f : futures) {
    finals.push_back(f.get());
  }

  ConvergenceReport report;
  report.problem_id = config.id;
  report.alpha = config.alpha;
  report.timestamp = iso_timestamp();

  std::vector<double> errors(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    NodalField diff;
    diff.time = config.T;
    diff.values = finals[i] - finals[i + 1];
    errors[i] = l2_norm(sys, diff);
  }
  for (std::size_t i = 0; i < taus.size(); ++i) {
    ConvergenceRow row;
    row.tau = taus[i];
    row.error = errors[i];
    if (i > 0 && errors[i - 1] > 0.0 && errors[i] > 0.0) {
      row.rate = std::log2(errors[i - 1] / errors[i]);
    }
    report.rows.push_back(row);
  }
  report.fitted_rate = fitted_rate(taus, errors);
  return report;
}

std::vector<TableCell> table_configs(int table_id, int m) {
  std::vector<TableCell> cells;
  const FieldSpec chi_right{"chi", {0.5, 1.0}};
  const FieldSpec chi_left{"chi", {0.0, 0.5}};
  const FieldSpec zero{"zero", {}};

  auto base_1d = [&](double alpha) {
    ProblemConfig c;
    c.alpha = alpha;
    c.T = 1.0;
    c.dim = 1;
    c.m = m;
    c.correction = true;
    c.potential = chi_right;
    return c;
  };

  switch (table_id) {
    case 1:
      for (double alpha : {0.3, 0.5, 0.7}) {
        ProblemConfig c = base_1d(alpha);
        c.id = "table1-alpha" + short_label(alpha);
        c.rho = Complex(-1.0, 1.0);
        c.initial = chi_left;
        c.source = SourceSpec{"zero", {}, {}};
        cells.push_back(TableCell{std::move(c), "-"});
      }
      break;
    case 3:
      for (double alpha : {0.3, 0.5, 0.7}) {
        ProblemConfig c = base_1d(alpha);
        c.id = "table3-alpha" + short_label(alpha);
        c.rho = Complex(-1.0, 0.0);
        c.initial = zero;
        c.source = SourceSpec{"expu-product", {}, FieldSpec{"poly", {}}};
        cells.push_back(TableCell{std::move(c), "-"});
      }
      break;
    case 5:
      for (double alpha : {0.3, 0.5, 0.7}) {
        ProblemConfig c = base_1d(alpha);
        c.id = "table5-alpha" + short_label(alpha);
        c.rho = Complex(-1.0, 0.0);
        c.initial = chi_left;
        c.source = SourceSpec{"expu-product", {}, FieldSpec{"poly", {}}};
        cells.push_back(TableCell{std::move(c), "-"});
      }
      break;
    case 7: {
      const std::vector<std::pair<std::string, FieldSpec>> cases = {
          {"a", FieldSpec{"chi-box", {0.5, 1.0, 0.5, 1.0}}},
          {"b", FieldSpec{"linear", {}}},
          {"c", FieldSpec{"quadratic", {}}},
      };
      for (const auto& [label, potential] : cases) {
        for (double alpha : {0.2, 0.8}) {
          ProblemConfig c;
          c.id = "table7-" + label + "-alpha" + short_label(alpha);
          c.alpha = alpha;
          c.rho = Complex(-1.0, 0.0);
          c.T = 1.0;
          c.dim = 2;
          c.m = m;
          c.correction = true;
          c.potential = potential;
          c.initial = FieldSpec{"chi-box", {0.0, 0.5, 0.0, 0.5}};
          c.source = SourceSpec{"expu-product", {}, FieldSpec{"poly2", {}}};
          cells.push_back(TableCell{std::move(c), label});
        }
      }
      break;
    }
    default:
      throw std::invalid_argument("table id must be one of 1, 3, 5, 7");
  }
  return cells;
}

std::vector<ConvergenceReport> reproduce_table(int table_id, int m) {
  const std::vector<TableCell> cells = table_configs(table_id, m);
  const std::vector<double> taus = {0.1, 0.05, 0.025, 0.0125};
  const FemSystem sys = assemble(build_mesh(cells.front().config.dim, m));

  std::vector<ConvergenceReport> reports;
  reports.reserve(cells.size());
  for (const auto& cell : cells) {
    ConvergenceReport report = run_convergence(cell.config, sys, taus);
    report.case_label = cell.case_label;
    reports.push_back(std::move(report));
  }
  return reports;
}

const std::vector<ExpectedCell>& expected_table(int table_id) {
  static const auto tables = [] {
    std::map<int, std::vector<ExpectedCell>> t;
    append_row(t[1], "-", 0.3, {4.8369e-05, 1.1142e-05, 2.6726e-06, 6.5445e-07});
    append_row(t[1], "-", 0.5, {8.8909e-05, 2.0464e-05, 4.8980e-06, 1.1978e-06});
    append_row(t[1], "-", 0.7, {1.3446e-04, 3.1062e-05, 7.4008e-06, 1.8043e-06});

    append_row(t[3], "-", 0.3, {4.7712e-05, 1.2368e-05, 3.1461e-06, 7.9328e-07});
    append_row(t[3], "-", 0.5, {2.4018e-05, 6.3733e-06, 1.6370e-06, 4.1458e-07});
    append_row(t[3], "-", 0.7, {4.7152e-06, 1.2328e-06, 3.2488e-07, 8.3728e-08});

    append_row(t[5], "-", 0.3, {9.3834e-05, 2.3020e-05, 5.7054e-06, 1.4205e-06});
    append_row(t[5], "-", 0.5, {1.1269e-04, 2.6875e-05, 6.5344e-06, 1.6128e-06});
    append_row(t[5], "-", 0.7, {1.4131e-04, 3.3013e-05, 7.9159e-06, 1.9364e-06});

    append_row(t[7], "a", 0.2, {1.0561e-05, 2.5062e-06, 6.1101e-07, 1.5089e-07});
    append_row(t[7], "a", 0.8, {2.6980e-05, 6.2089e-06, 1.4771e-06, 3.5962e-07});
    append_row(t[7], "b", 0.2, {2.7957e-05, 6.7950e-06, 1.6771e-06, 4.1676e-07});
    append_row(t[7], "b", 0.8, {5.3769e-05, 1.2412e-05, 2.9587e-06, 7.2115e-07});
    append_row(t[7], "c", 0.2, {1.4881e-05, 3.5516e-06, 8.6835e-07, 2.1475e-07});
    append_row(t[7], "c", 0.8, {3.4592e-05, 7.9669e-06, 1.8963e-06, 4.6183e-07});
    return t;
  }();
  auto it = tables.find(table_id);
  if (it == tables.end()) {
    throw std::invalid_argument("table id must be one of 1, 3, 5, 7");
  }
  return it->second;
}

CheckResult check_reports(const std::vector<ConvergenceReport>& reports,
                          const std::vector<ExpectedCell>& expected, double rtol) {
  CheckResult result;
  if (reports.size() != expected.size()) {
    result.ok = false;
    result.violations.push_back("cell count mismatch: got " +
                                std::to_string(reports.size()) + ", expected " +
                                std::to_string(expected.size()));
    return result;
  }
  for (std::size_t c = 0; c < expected.size(); ++c) {
    const auto& cell = expected[c];
    const auto& report = reports[c];
    const std::string where =
        "case " + cell.case_label + " alpha " + fmt17(cell.alpha);
    if (report.case_label != cell.case_label ||
        std::abs(report.alpha - cell.alpha) > 1e-12) {
      result.ok = false;
      result.violations.push_back(where + ": cell ordering mismatch");
      continue;
    }
    if (report.rows.size() != cell.taus.size()) {
      result.ok = false;
      result.violations.push_back(where + ": row count mismatch");
      continue;
    }
    for (std::size_t i = 0; i < cell.taus.size(); ++i) {
      if (std::abs(report.rows[i].tau - cell.taus[i]) > 1e-12) {
        result.ok = false;
        result.violations.push_back(where + ": tau mismatch at row " +
                                    std::to_string(i));
        continue;
      }
      const double got = report.rows[i].error;
      const double ref = cell.errors[i];
      const double rel = std::abs(got - ref) / std::abs(ref);
      if (!(rel <= rtol)) {
        result.ok = false;
        result.violations.push_back(where + " tau " + fmt17(cell.taus[i]) +
                                    ": error " + fmt17(got) + " vs reference " +
                                    fmt17(ref) + " (rel " + fmt17(rel) + ")");
      }
    }
  }
  return result;
}

std::vector<ExpectedCell> read_expected_csv(std::istream& in) {
  std::vector<ExpectedCell> cells;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("case,", 0) == 0) {
      continue;
    }
    std::istringstream row(line);
    std::string case_label, alpha_s, tau_s, error_s;
    if (!std::getline(row, case_label, ',') || !std::getline(row, alpha_s, ',') ||
        !std::getline(row, tau_s, ',') || !std::getline(row, error_s, ',')) {
      throw std::runtime_error("expected CSV: malformed line '" + line + "'");
    }
    const double alpha = std::stod(alpha_s);
    if (cells.empty() || cells.back().case_label != case_label ||
        std::abs(cells.back().alpha - alpha) > 1e-12) {
      cells.push_back(ExpectedCell{case_label, alpha, {}, {}});
    }
    cells.back().taus.push_back(std::stod(tau_s));
    cells.back().errors.push_back(std::stod(error_s));
  }
  return cells;
}

void write_expected_csv(std::ostream& os, const std::vector<ExpectedCell>& cells) {
  os << "case,alpha,tau,error\n";
  for (const auto& cell : cells) {
    for (std::size_t i = 0; i < cell.taus.size(); ++i) {
      os << cell.case_label << "," << fmt17(cell.alpha) << "," << fmt17(cell.taus[i])
         << "," << fmt17(cell.errors[i]) << "\n";
    }
  }
}

void write_report_csv(std::ostream& os, const ConvergenceReport& report) {
  os << "# problem=" << report.problem_id << " alpha=" << fmt17(report.alpha)
     << " generated=" << report.timestamp << "\n";
  os << "tau,error,rate\n";
  for (const auto& row : report.rows) {
    os << fmt17(row.tau) << "," << fmt17(row.error) << ",";
    if (row.rate) {
      os << fmt17(*row.rate);
    }
    os << "\n";
  }
  os << "# fitted_rate=";
  if (report.fitted_rate) {
    os << fmt17(*report.fitted_rate);
  }
  os << "\n";
}

void write_table_csv(std::ostream& os, int table_id,
                     const std::vector<ConvergenceReport>& reports) {
  os << "# table=" << table_id << " generated="
     << (reports.empty() ? iso_timestamp() : reports.front().timestamp) << "\n";
  os << "case,alpha,tau,error,rate,fit\n";
  for (const auto& report : reports) {
    for (const auto& row : report.rows) {
      os << report.case_label << "," << fmt17(report.alpha) << "," << fmt17(row.tau)
         << "," << fmt17(row.error) << ",";
      if (row.rate) os << fmt17(*row.rate);
      os << ",";
      if (report.fitted_rate) os << fmt17(*report.fitted_rate);
      os << "\n";
    }
  }
}

}  // namespace feynkac
