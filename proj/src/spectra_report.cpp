#include "anharm/spectra_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include "json.hpp"
#include <ostream>
#include <sstream>

#include "anharm/classical_pt.hpp"
#include "anharm/quantum_pt.hpp"

namespace anharm {

using nlohmann::json;

MeanSpacing mean_level_spacing(std::span<const double> sorted_levels, int count,
                               SpacingConvention convention) {
  if (count < 2) {
    throw Error(ErrorCode::InsufficientLevels, "mean level spacing needs at least 2 levels");
  }
  if (sorted_levels.size() < static_cast<std::size_t>(count)) {
    throw Error(ErrorCode::InsufficientLevels,
                "mean level spacing over " + std::to_string(count) + " levels, but only " +
                    std::to_string(sorted_levels.size()) + " available");
  }
  const double range = sorted_levels[static_cast<std::size_t>(count) - 1] - sorted_levels[0];
  const double divisor = convention == SpacingConvention::PerLevel ? count : count - 1;
  return {.d = range / divisor, .count = count, .convention = convention};
}

ComparisonTable comparison_table(const ModelParams& params, int n_rows,
                                 const ComparisonOptions& options) {
  validate(params);
  if (n_rows < 1) throw Error(ErrorCode::InvalidArgument, "n_rows must be at least 1", "rows");
  const int k = std::max({options.k, options.spacing_count, n_rows});

  ComparisonTable table;
  table.params = params;
  table.convergence = converged_levels(params, k, options.digits, options.convergence);

  std::vector<double> energies;
  energies.reserve(table.convergence.levels.size());
  for (const auto& l : table.convergence.levels) energies.push_back(l.energy);
  table.spacing = mean_level_spacing(energies, options.spacing_count, options.convention);

  const double d = table.spacing.d;
  table.rows.reserve(static_cast<std::size_t>(n_rows));
  for (int r = 0; r < n_rows; ++r) {
    const SpectrumLevel& level = table.convergence.levels[static_cast<std::size_t>(r)];
    ComparisonRow row{.rank = level.rank,
                      .n = level.assigned,
                      .e_exact = level.energy,
                      .e_sc = semiclassical_series(level.assigned, params).total(params.g),
                      .e_qp = qp_series(level.assigned, params).total(params.g),
                      .overlap_weight = level.overlap_weight,
                      .ambiguous = level.ambiguous};
    row.err_sc = std::abs(row.e_exact - row.e_sc) / d;
    row.err_qp = std::abs(row.e_exact - row.e_qp) / d;
    table.rows.push_back(row);
  }
  return table;
}

HbarScan hbar_scan(const ModelParams& base, std::span<const double> hbars, int n_rows,
                   const ComparisonOptions& options) {
  validate(base);
  if (hbars.empty()) throw Error(ErrorCode::InvalidArgument, "hbar list is empty", "hbars");
  HbarScan scan;
  for (double h : hbars) {
    ModelParams p = base;
    p.hbar = h;
    validate(p);
    scan.hbars.push_back(h);
  }
  for (double h : scan.hbars) {
    ModelParams p = base;
    p.hbar = h;
    scan.tables.push_back(comparison_table(p, n_rows, options));
  }
  return scan;
}

std::string format_significant(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.*g", digits, value);
  return buf;
}

namespace {

constexpr int kEnergyDigits = 7;
constexpr int kErrorDigits = 8;

std::string hbar_tag(double h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", h);
  return buf;
}

json params_json(const ModelParams& p) {
  return {{"omega1", p.omega1}, {"omega2", p.omega2}, {"g", p.g}, {"hbar", p.hbar}};
}

json convergence_json(const ConvergenceReport& report) {
  json history = json::array();
  for (const auto& step : report.history) {
    const double worst =
        step.changes.empty() ? 0.0 : *std::max_element(step.changes.begin(), step.changes.end());
    history.push_back({{"n_max", step.n_max},
                       {"dimension", step.dimension},
                       {"max_change", step.changes.empty() ? json(nullptr) : json(worst)},
                       {"changes", step.changes}});
  }
  return {{"final_n_max", report.final_n_max},
          {"final_dimension", report.final_dimension},
          {"digits", report.digits},
          {"history", history}};
}

json rows_json(std::span<const ComparisonRow> rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"rank", r.rank},
                   {"n1", r.n.n1()},
                   {"n2", r.n.n2()},
                   {"e_exact", r.e_exact},
                   {"e_sc", r.e_sc},
                   {"e_qp", r.e_qp},
                   {"err_sc_over_D", r.err_sc},
                   {"err_qp_over_D", r.err_qp},
                   {"overlap_weight", r.overlap_weight},
                   {"ambiguous", r.ambiguous}});
  }
  return out;
}

json table_json(const ComparisonTable& table) {
  return {{"params", params_json(table.params)},
          {"mean_spacing",
           {{"D", table.spacing.d},
            {"count", table.spacing.count},
            {"convention",
             table.spacing.convention == SpacingConvention::PerLevel ? "per_level" : "per_gap"}}},
          {"convergence", convergence_json(table.convergence)},
          {"rows", rows_json(table.rows)}};
}

}  // namespace

void write_comparison_csv(std::span<const ComparisonRow> rows, std::ostream& out) {
  out << kComparisonCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.n.n1() << ',' << r.n.n2() << ',' << format_significant(r.e_exact, kEnergyDigits)
        << ',' << format_significant(r.e_sc, kEnergyDigits) << ','
        << format_significant(r.e_qp, kEnergyDigits) << ','
        << format_significant(r.err_sc, kErrorDigits) << ','
        << format_significant(r.err_qp, kErrorDigits) << '\n';
  }
}

void write_levels_csv(std::span<const SpectrumLevel> levels, std::ostream& out) {
  out << "rank,n1,n2,energy,overlap_weight,ambiguous\n";
  for (const auto& l : levels) {
    out << l.rank << ',' << l.assigned.n1() << ',' << l.assigned.n2() << ','
        << format_significant(l.energy, kEnergyDigits) << ','
        << format_significant(l.overlap_weight, 4) << ',' << (l.ambiguous ? 1 : 0) << '\n';
  }
}

void write_scan_csv(const HbarScan& scan, std::ostream& out) {
  out << "rank";
  for (double h : scan.hbars) {
    const std::string tag = hbar_tag(h);
    out << ",n1[hbar=" << tag << "],n2[hbar=" << tag << "],err_sc_over_D[hbar=" << tag << ']';
  }
  out << '\n';
  const std::size_t n_rows = scan.tables.empty() ? 0 : scan.tables.front().rows.size();
  for (std::size_t r = 0; r < n_rows; ++r) {
    out << r + 1;
    for (const auto& table : scan.tables) {
      const ComparisonRow& row = table.rows[r];
      out << ',' << row.n.n1() << ',' << row.n.n2() << ','
          << format_significant(row.err_sc, kErrorDigits);
    }
    out << '\n';
  }
}

std::string comparison_json(const ComparisonTable& table) { return table_json(table).dump(2); }

std::string levels_json(const ModelParams& params, const ConvergenceReport& report) {
  json levels = json::array();
  for (const auto& l : report.levels) {
    levels.push_back({{"rank", l.rank},
                      {"n1", l.assigned.n1()},
                      {"n2", l.assigned.n2()},
                      {"energy", l.energy},
                      {"overlap_weight", l.overlap_weight},
                      {"ambiguous", l.ambiguous}});
  }
  return json{{"params", params_json(params)},
              {"convergence", convergence_json(report)},
              {"levels", levels}}
      .dump(2);
}

std::string scan_json(const HbarScan& scan) {
  json tables = json::array();
  for (const auto& t : scan.tables) tables.push_back(table_json(t));
  return json{{"hbars", scan.hbars}, {"tables", tables}}.dump(2);
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

void emit_csv(std::span<const ComparisonRow> rows, const std::filesystem::path& path) {
  if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "no rows to write");
  std::ostringstream buffer;
  write_comparison_csv(rows, buffer);
  write_text_file(path, buffer.str());
}

}  // namespace anharm
