#pragma once

// Side-by-side comparison of exact, semiclassical and quantum-perturbative
// levels, with errors in units of the mean level spacing.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "anharm/exact_diag.hpp"
#include "anharm/model.hpp"

namespace anharm {

/// How the range E_count - E_1 is normalized.
enum class SpacingConvention {
  PerLevel,  ///< (E_count - E_1) / count; the convention behind the reference tables
  PerGap,    ///< (E_count - E_1) / (count - 1); the arithmetic mean of adjacent gaps
};

struct MeanSpacing {
  double d = 0.0;
  int count = 0;
  SpacingConvention convention = SpacingConvention::PerLevel;
};

inline constexpr int kSpacingLevels = 100;

/// Mean spacing of the lowest `count` entries of an ascending spectrum.
/// Throws Error(InsufficientLevels) if count < 2 or fewer levels are given.
MeanSpacing mean_level_spacing(std::span<const double> sorted_levels, int count,
                               SpacingConvention convention = SpacingConvention::PerLevel);

struct ComparisonRow {
  int rank = 0;
  QuantumNumbers n;
  double e_exact = 0.0;
  double e_sc = 0.0;
  double e_qp = 0.0;
  double err_sc = 0.0;  ///< |e_exact - e_sc| / D
  double err_qp = 0.0;  ///< |e_exact - e_qp| / D
  double overlap_weight = 0.0;
  bool ambiguous = false;
};

struct ComparisonOptions {
  int k = kSpacingLevels;  ///< levels to converge; at least spacing_count
  int digits = 8;
  int spacing_count = kSpacingLevels;
  SpacingConvention convention = SpacingConvention::PerLevel;
  ConvergenceOptions convergence;
};

struct ComparisonTable {
  ModelParams params;
  MeanSpacing spacing;
  ConvergenceReport convergence;
  std::vector<ComparisonRow> rows;  ///< ascending exact energy
};

/// Converges the exact spectrum, labels it, evaluates both perturbative
/// pipelines at each label and reports the first n_rows rows.
ComparisonTable comparison_table(const ModelParams& params, int n_rows,
                                 const ComparisonOptions& options = {});

struct HbarScan {
  std::vector<double> hbars;
  std::vector<ComparisonTable> tables;  ///< one per hbar, rank-ordered rows
};

/// comparison_table() repeated for each hbar with the other parameters fixed.
/// Row r of every table is the r-th exact level of that hbar with its own label.
HbarScan hbar_scan(const ModelParams& base, std::span<const double> hbars, int n_rows,
                   const ComparisonOptions& options = {});

/// Fixed-width decimal rendering used by every writer ("%#.*g").
std::string format_significant(double value, int digits);

inline constexpr const char* kComparisonCsvHeader =
    "n1,n2,e_exact,e_sc,e_qp,err_sc_over_D,err_qp_over_D";

void write_comparison_csv(std::span<const ComparisonRow> rows, std::ostream& out);
void write_levels_csv(std::span<const SpectrumLevel> levels, std::ostream& out);
void write_scan_csv(const HbarScan& scan, std::ostream& out);

/// Same fields as the CSV plus spacing and convergence metadata.
std::string comparison_json(const ComparisonTable& table);
std::string levels_json(const ModelParams& params, const ConvergenceReport& report);
std::string scan_json(const HbarScan& scan);

/// Writes the comparison CSV to `path`. Throws Error(InvalidArgument) for an
/// empty table without touching the filesystem and Error(Io) naming the path.
void emit_csv(std::span<const ComparisonRow> rows, const std::filesystem::path& path);

/// Writes `contents` to `path`, throwing Error(Io) with the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace anharm
