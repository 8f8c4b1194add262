#include "anharm/cli.hpp"

#include <CLI11.hpp>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "anharm/exact_diag.hpp"
#include "anharm/spectra_report.hpp"

namespace anharm::cli {

std::optional<double> parse_real(const std::string& text) {
  if (text == "sqrt2") return std::numbers::sqrt2;
  if (text.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (errno != 0 || end != text.c_str() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

namespace {

struct RunConfig {
  std::string omega1 = "1";
  std::string omega2 = "sqrt2";
  std::string g = "0.1";
  std::string hbar = "1";
  int k = kSpacingLevels;
  int digits = 8;
  int rows = 20;
  int n_max_cap = 80;
  std::vector<std::string> hbars = {"1", "0.1"};
  std::string out;
  std::string dump_matrix;
  std::string format = "csv";
};

struct BadFlag {
  std::string flag;
  std::string message;
};

double real_flag(const std::string& text, const char* flag) {
  if (auto v = parse_real(text)) return *v;
  throw BadFlag{flag, "expected a decimal number (or sqrt2), got '" + text + "'"};
}

std::string flag_for_field(const std::string& field) {
  if (field.empty()) return {};
  return "--" + field;
}

ModelParams params_from(const RunConfig& c) {
  return {.omega1 = real_flag(c.omega1, "--omega1"),
          .omega2 = real_flag(c.omega2, "--omega2"),
          .g = real_flag(c.g, "--g"),
          .hbar = real_flag(c.hbar, "--hbar")};
}

ComparisonOptions comparison_options(const RunConfig& c) {
  ComparisonOptions o;
  o.k = c.k;
  o.digits = c.digits;
  o.convergence.n_max_cap = c.n_max_cap;
  return o;
}

void add_options(CLI::App& cmd, RunConfig& c) {
  cmd.add_option("--omega1", c.omega1, "Frequency of oscillator 1")->capture_default_str();
  cmd.add_option("--omega2", c.omega2, "Frequency of oscillator 2 ('sqrt2' is exact)")
      ->capture_default_str();
  cmd.add_option("--g", c.g, "Quartic coupling strength")->capture_default_str();
  cmd.add_option("--hbar", c.hbar, "Planck constant (levels, compare)")->capture_default_str();
  cmd.add_option("--k", c.k, "Number of lowest levels that must converge")->capture_default_str();
  cmd.add_option("--digits", c.digits, "Convergence target in digits")->capture_default_str();
  cmd.add_option("--n-max-cap", c.n_max_cap, "Largest per-mode quantum number tried")
      ->capture_default_str();
  cmd.add_option("--out", c.out, "Output file (default: standard output)");
  cmd.add_option("--dump-matrix", c.dump_matrix,
                 "Write the final truncated Hamiltonian as 'row col value' triplets");
  cmd.add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd.add_option("--rows", c.rows, "Number of table rows (compare, scan-hbar)")
      ->capture_default_str();
  cmd.add_option("--hbars", c.hbars, "Comma-separated hbar values (scan-hbar)")
      ->delimiter(',')
      ->capture_default_str();
}

void deliver(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
  } else {
    write_text_file(c.out, text);
  }
}

void dump_if_requested(const RunConfig& c, const ModelParams& params, int n_max) {
  if (c.dump_matrix.empty()) return;
  std::ostringstream buf;
  write_matrix_triplets(assemble_hamiltonian(BasisSpec(n_max), params), buf);
  write_text_file(c.dump_matrix, buf.str());
}

int cmd_levels(const RunConfig& c, std::ostream& out) {
  const ModelParams params = validate(params_from(c));
  ConvergenceOptions options;
  options.n_max_cap = c.n_max_cap;
  const ConvergenceReport report = converged_levels(params, c.k, c.digits, options);
  dump_if_requested(c, params, report.final_n_max);
  std::ostringstream buf;
  if (c.format == "json") {
    buf << levels_json(params, report) << '\n';
  } else {
    write_levels_csv(report.levels, buf);
  }
  deliver(c, buf.str(), out);
  return kOk;
}

int cmd_compare(const RunConfig& c, std::ostream& out) {
  const ModelParams params = validate(params_from(c));
  const ComparisonTable table = comparison_table(params, c.rows, comparison_options(c));
  dump_if_requested(c, params, table.convergence.final_n_max);
  std::ostringstream buf;
  if (c.format == "json") {
    buf << comparison_json(table) << '\n';
  } else {
    write_comparison_csv(table.rows, buf);
  }
  deliver(c, buf.str(), out);
  return kOk;
}

int cmd_scan_hbar(const RunConfig& c, std::ostream& out) {
  const ModelParams base = validate(params_from(c));
  if (c.hbars.empty()) throw BadFlag{"--hbars", "needs at least one value"};
  std::vector<double> hbars;
  for (const auto& text : c.hbars) {
    const double h = real_flag(text, "--hbars");
    if (!(h > 0.0)) throw BadFlag{"--hbars", "every hbar must be positive, got " + text};
    hbars.push_back(h);
  }
  const HbarScan scan = hbar_scan(base, hbars, c.rows, comparison_options(c));
  if (!c.dump_matrix.empty()) {
    ModelParams first = base;
    first.hbar = hbars.front();
    dump_if_requested(c, first, scan.tables.front().convergence.final_n_max);
  }
  std::ostringstream buf;
  if (c.format == "json") {
    buf << scan_json(scan) << '\n';
  } else {
    write_scan_csv(scan, buf);
  }
  deliver(c, buf.str(), out);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectrum of two non-resonant oscillators with quartic coupling"};
  app.set_config("--config", "", "Optional key=value file; command-line flags take precedence");
  app.require_subcommand(1);

  RunConfig config;
  add_options(app, config);
  auto* levels = app.add_subcommand("levels", "Converged exact levels with quantum-number labels");
  auto* compare =
      app.add_subcommand("compare", "Exact vs semiclassical vs quantum-perturbative levels");
  auto* scan = app.add_subcommand("scan-hbar", "Semiclassical error over a list of hbar values");
  for (auto* cmd : {levels, compare, scan}) cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  try {
    if (*levels) return cmd_levels(config, out);
    if (*compare) return cmd_compare(config, out);
    return cmd_scan_hbar(config, out);
  } catch (const BadFlag& e) {
    err << "error: " << e.flag << ": " << e.message << '\n';
    return kBadInput;
  } catch (const Error& e) {
    const std::string flag = flag_for_field(e.field());
    err << "error: " << (flag.empty() ? "" : flag + ": ") << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::BudgetExceeded:
      case ErrorCode::ConvergenceFailure:
        return kBudgetExceeded;
      case ErrorCode::Io:
        return kIoFailure;
      default:
        return kBadInput;
    }
  }
}

}  // namespace anharm::cli
