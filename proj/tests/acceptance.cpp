// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "anharm/classical_pt.hpp"
#include "anharm/exact_diag.hpp"
#include "anharm/quantum_pt.hpp"
#include "anharm/spectra_report.hpp"
#include "oracles.hpp"

using namespace anharm;

namespace {

struct TableRow {
  int n1, n2;
  double e_exact, e_sc, e_qp;
  double err_sc, err_qp;  // second table
  double err_sc_h1, err_sc_h01;  // third table
};

// Reference tables, rows in ascending exact energy at hbar = 1.
constexpr std::array<TableRow, 20> kTable = {{
    {0, 0, 1.230722, 1.230990, 1.230522, 1.0611359e-3, 1.1284242e-3, 1.0611359e-3, 2.4773894e-5},
    {1, 0, 2.275974, 2.273214, 2.274701, 1.5578579e-2, 7.1859419e-3, 1.5578579e-2, 1.0003044e-4},
    {0, 1, 2.689415, 2.690856, 2.687816, 8.1338054e-3, 9.0260478e-3, 8.1338054e-3, 1.8136360e-4},
    {2, 0, 3.316524, 3.308447, 3.311808, 4.5591835e-2, 2.6613854e-2, 4.5591835e-2, 2.5054353e-4},
    {1, 1, 3.820434, 3.814018, 3.812833, 3.6215890e-2, 4.2791300e-2, 3.6215890e-2, 5.6091835e-6},
    {0, 2, 4.146646, 4.148302, 4.142610, 9.3476856e-3, 2.2781115e-2, 9.3476856e-3, 3.1972348e-4},
    {3, 0, 4.354307, 4.336609, 4.341846, 9.9898852e-2, 7.0337765e-2, 9.9898852e-2, 4.3938606e-4},
    {2, 1, 4.937708, 4.915967, 4.916677, 0.1227176, 0.1187100, 0.1227176, 2.3371598e-4},
    {1, 2, 5.359848, 5.347322, 5.345305, 7.0703819e-2, 9.2249520e-2, 7.0703819e-2, 9.3486393e-5},
    {4, 0, 5.390110, 5.357700, 5.364811, 0.1829406, 0.1428019, 0.1829406, 7.0301769e-4},
    {0, 3, 5.603778, 5.603248, 5.594904, 2.9902905e-2, 5.0089385e-2, 2.9902905e-3, 4.4125578e-4},
    {3, 1, 6.047742, 5.996702, 5.999287, 0.2880960, 0.2735053, 0.2880960, 6.3570746e-4},
    {5, 0, 6.424398, 6.371719, 6.380706, 0.2973495, 0.2466222, 0.2973495, 2.3932516e-4},
    {2, 2, 6.546966, 6.510986, 6.509044, 0.2030921, 0.2140520, 0.2030921, 1.0582660e-3},
    {1, 3, 6.897049, 6.873125, 6.866657, 0.1350395, 0.1715501, 0.1350395, 1.1966258e-4},
    {0, 4, 7.062932, 7.055694, 7.044699, 4.0854741e-2, 0.1029161, 4.0854741e-2, 1.2452388e-3},
    {4, 1, 7.152476, 7.056224, 7.060684, 0.5432989, 0.5181223, 0.5432989, 5.2726327e-4},
    {6, 0, 7.457506, 7.378668, 7.389530, 0.4450069, 0.3836938, 0.4450069, 8.1146188e-4},
    {3, 2, 7.723943, 7.639295, 7.639228, 0.4778005, 0.4781800, 0.4778005, 1.5294374e-3},
    {2, 3, 8.144146, 8.093505, 8.088912, 0.2858459, 0.3117708, 0.2858459, 3.0663537e-4},
}};

// Printed semiclassical ground level; direct evaluation gives 1.230910.
constexpr double kDerivedGroundSc = 1.230910;
constexpr std::size_t kOffDiagonalRow = 10;  // (0,3): second vs third table differ by 10x

constexpr double kLastDigit = 5e-7;
constexpr double kExactTol = 5e-6;
constexpr double kQuotientRel = 0.01;
constexpr double kSelfConsistency = 1e-10;
constexpr double kFineHbarRel = 0.05;
constexpr double kIdentityRel = 1e-12;
constexpr double kQuadratureTol = 1e-8;
constexpr double kResidualTol = 1e-12;

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void note(const std::string& text) { std::printf("       %s\n", text.c_str()); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ModelParams with_hbar(double h) {
  ModelParams p = reference_params();
  p.hbar = h;
  return p;
}

std::vector<ModelParams> grid_params(double hbar) {
  std::mt19937_64 rng(20250101);
  std::uniform_real_distribution<double> w(0.2, 3.0);
  std::vector<ModelParams> out = {with_hbar(hbar)};
  while (out.size() < 101) {
    const double w1 = w(rng), w2 = w(rng);
    if (std::abs(w1 - w2) < 0.05) continue;
    out.push_back({.omega1 = w1, .omega2 = w2, .g = 0.1, .hbar = hbar});
  }
  return out;
}

void criterion_1() {
  const ModelParams p = reference_params();
  double worst = 0.0;
  int bad = 0;
  for (const auto& row : kTable) {
    const double e = qp_series({row.n1, row.n2}, p).total(p.g);
    const double d = std::abs(e - row.e_qp);
    worst = std::max(worst, d);
    if (d > kLastDigit) {
      ++bad;
      note(fmt("(%g,%g) computed %.9f", row.n1, row.n2, e) + fmt(" printed %.6f |diff| %.2e", row.e_qp, d));
    }
  }
  note("(1,1) and (1,2) disagree with the second table's own quotients (printed digits swapped or "
       "mistyped); (2,0) and (0,3) are printed truncated rather than rounded");
  report(1, bad == 0,
         fmt("quantum-perturbative column, %g/20 within 5e-7 (max |diff| %.2e)", 20 - bad, worst));
}

void criterion_2() {
  const ModelParams p = reference_params();
  double worst = 0.0;
  int bad = 0;
  for (std::size_t i = 0; i < kTable.size(); ++i) {
    const auto& row = kTable[i];
    const double expected = i == 0 ? kDerivedGroundSc : row.e_sc;
    const double e = semiclassical_series({row.n1, row.n2}, p).total(p.g);
    const double d = std::abs(e - expected);
    worst = std::max(worst, d);
    if (d > kLastDigit) {
      ++bad;
      note(fmt("(%g,%g) computed %.9f", row.n1, row.n2, e) + fmt(" expected %.6f", expected));
    }
  }
  note("(0,0) compared with the derived 1.230910; the printed 1.230990 is a misprint");
  report(2, bad == 0,
         fmt("semiclassical column, %g/20 within 5e-7 (max |diff| %.2e)", 20 - bad, worst));
}

ComparisonTable criterion_3() {
  const auto start = std::chrono::steady_clock::now();
  ComparisonTable table = comparison_table(reference_params(), 20);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double worst = 0.0;
  bool labels_ok = true;
  for (std::size_t i = 0; i < kTable.size(); ++i) {
    const auto& row = table.rows[i];
    worst = std::max(worst, std::abs(row.e_exact - kTable[i].e_exact));
    if (row.n != QuantumNumbers(kTable[i].n1, kTable[i].n2)) {
      labels_ok = false;
      note("rank " + std::to_string(i + 1) + " labelled " + to_string(row.n));
    }
  }
  const bool dim_ok = table.convergence.final_n_max == 34 &&
                      table.convergence.final_dimension == 1225;
  report(3, worst <= kExactTol && labels_ok && dim_ok && seconds < 60.0,
         fmt("exact column max |diff| %.2e (tol 5e-6), final dimension %g, %.2f s", worst,
             static_cast<double>(table.convergence.final_dimension), seconds) +
             (labels_ok ? ", labels match" : ", label mismatch"));
  return table;
}

void criterion_4(const ComparisonTable& table) {
  const double d = table.spacing.d;
  int bad = 0;
  double worst = 0.0, worst_self = 0.0;
  for (std::size_t i = 0; i < kTable.size(); ++i) {
    const auto& row = table.rows[i];
    const double sc_ref = i == kOffDiagonalRow ? kTable[i].err_sc_h1 : kTable[i].err_sc;
    const double r_sc = rel(row.err_sc, sc_ref);
    const double r_qp = rel(row.err_qp, kTable[i].err_qp);
    worst = std::max({worst, r_sc, r_qp});
    if (r_sc > kQuotientRel || r_qp > kQuotientRel) {
      ++bad;
      note(fmt("row %g: rel sc %.3e qp %.3e", static_cast<double>(i + 1), r_sc, r_qp));
    }
    worst_self = std::max(worst_self,
                          rel(std::abs(row.e_exact - row.e_sc) / d, row.err_sc));
    worst_self = std::max(worst_self,
                          rel(std::abs(row.e_exact - row.e_qp) / d, row.err_qp));
  }
  note(fmt("D = (E100 - E1)/100 = %.8f", d));
  {
    const ComparisonTable gap = [] {
      ComparisonOptions o;
      o.convention = SpacingConvention::PerGap;
      return comparison_table(reference_params(), 20, o);
    }();
    double worst_gap = 0.0;
    for (std::size_t i = 0; i < kTable.size(); ++i) {
      if (i == kOffDiagonalRow) continue;
      worst_gap = std::max({worst_gap, rel(gap.rows[i].err_sc, kTable[i].err_sc),
                            rel(gap.rows[i].err_qp, kTable[i].err_qp)});
    }
    note(fmt("for reference, D = (E100 - E1)/99 = %.8f gives max rel dev %.2e", gap.spacing.d,
             worst_gap));
  }
  note("(0,3) semiclassical quotient compared with the hbar=1 copy in the third table "
       "(2.99e-3); the second table prints 2.99e-2");
  report(4, bad == 0 && worst_self <= kSelfConsistency,
         fmt("error quotients, max rel dev %.2e (tol 1e-2), self-consistency %.1e (tol 1e-10)",
             worst, worst_self));
}

void criteria_5_6() {
  double worst_identity = 0.0, worst_oracle = 0.0;
  std::string worst_case;
  for (double hbar : {1.0, 0.1}) {
    for (const auto& p : grid_params(hbar)) {
      for (int n1 = 0; n1 <= 50; ++n1) {
        for (int n2 = 0; n2 <= 50; ++n2) {
          const QuantumNumbers n(n1, n2);
          const double closed = e2_quantum_closed(n, p);
          const double semiclassical = h2_actions(ebk_actions(n, hbar), p);
          const double correction = hbar * hbar * q2_correction(n, p);
          const double residual = std::abs(closed - semiclassical - correction) / std::abs(closed);
          if (residual > worst_identity) {
            worst_identity = residual;
            worst_case = fmt("worst: hbar %g, omega (%.6f, %.6f)", hbar, p.omega1, p.omega2) +
                         fmt(", n (%g,%g)", n1, n2) + fmt(", E2 %.4e", closed);
          }
          worst_oracle = std::max(worst_oracle, rel(e2_quantum_sum(n, p), closed));
        }
      }
    }
  }
  note(worst_case);
  report(5, worst_identity <= kIdentityRel,
         fmt("E2 = H2(EBK) + hbar^2 Q2, max rel residual %.2e (tol 1e-12)", worst_identity));
  report(6, worst_oracle <= kIdentityRel,
         fmt("closed-form E2 vs intermediate-state sum, max rel diff %.2e (tol 1e-12)",
             worst_oracle));
}

void criterion_7() {
  const std::array<ModelParams, 3> params = {
      reference_params(), ModelParams{.omega1 = 0.8, .omega2 = 1.3, .g = 0.1, .hbar = 1.0},
      ModelParams{.omega1 = 2.0, .omega2 = 0.45, .g = 0.1, .hbar = 1.0}};
  double worst_h1 = 0.0, worst_h2 = 0.0;
  for (const auto& p : params) {
    for (int n1 = 0; n1 < 6; ++n1) {
      for (int n2 = 0; n2 < 6; ++n2) {
        const ActionPair a = ebk_actions({n1, n2}, 1.0);
        const double h1 = angle_average(
            [&](double t1, double t2) {
              return oracle::v_cartesian(a.i1(), a.i2(), t1, t2);
            },
            64);
        worst_h1 = std::max(worst_h1, std::abs(h1 - h1_actions(a)));
        worst_h2 = std::max(worst_h2,
                            std::abs(oracle::h2_quadrature(a.i1(), a.i2(), p, 64) -
                                     h2_actions(a, p)));
      }
    }
  }
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> action(0.0, 10.0), angle(0.0, 6.283185307179586);
  double worst_res = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const ActionPair a(action(rng), action(rng));
    const AnglePair t(angle(rng), angle(rng));
    worst_res = std::max(worst_res, std::abs(homological_residual(a, t, reference_params())) /
                                        (1.0 + std::abs(coupling_v(a, t))));
  }
  report(7, worst_h1 <= kQuadratureTol && worst_h2 <= kQuadratureTol && worst_res <= kResidualTol,
         fmt("H1 quad %.1e, H2 quad %.1e (tol 1e-8); homological residual %.1e (tol 1e-12)",
             worst_h1, worst_h2, worst_res));
}

void criterion_8(const ComparisonTable& coarse_table) {
  const auto start = std::chrono::steady_clock::now();
  const std::array<double, 2> hbars = {1.0, 0.1};
  const HbarScan scan = hbar_scan(reference_params(), hbars, 20);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int bad_fine = 0, bad_coarse = 0;
  double worst_fine = 0.0;
  for (std::size_t i = 0; i < kTable.size(); ++i) {
    const double fine = scan.tables[1].rows[i].err_sc;
    const double r = rel(fine, kTable[i].err_sc_h01);
    worst_fine = std::max(worst_fine, r);
    if (r > kFineHbarRel) {
      ++bad_fine;
      note(fmt("hbar=0.1 rank %g: computed %.7e printed %.7e", static_cast<double>(i + 1), fine,
               kTable[i].err_sc_h01) +
           fmt(" (rel %.3f)", r));
    }
    const double coarse = scan.tables[0].rows[i].err_sc;
    if (coarse != coarse_table.rows[i].err_sc || rel(coarse, kTable[i].err_sc_h1) > kQuotientRel) {
      ++bad_coarse;
    }
    if (i != kOffDiagonalRow && rel(coarse, kTable[i].err_sc) > kQuotientRel) ++bad_coarse;
  }
  note("hbar=0.1 errors are compared by energy rank; row labels in the printed table follow hbar=1");
  report(8, bad_fine == 0 && bad_coarse == 0,
         fmt("hbar=0.1 column %g/20 within 5%% (max rel %.3f); hbar=1 column mismatches: %g", 20 - bad_fine,
             worst_fine, bad_coarse) +
             fmt(", %.2f s", seconds));
}

void criterion_9() {
  std::vector<std::string> broken;
  const ModelParams p = reference_params();

  std::vector<double> previous;
  for (int n_max : basis_schedule({})) {
    if (n_max > 39) break;
    auto e = diagonalize_truncated(build_basis(n_max), p, false).energies();
    e.resize(100);
    if (!previous.empty()) {
      for (std::size_t k = 0; k < 100; ++k) {
        if (e[k] > previous[k] + 1e-12) broken.push_back("interlacing");
      }
    }
    previous = e;
  }

  for (int n_max = 0; n_max <= 10; ++n_max) {
    const BasisSpec basis = build_basis(n_max);
    const auto whole = symmetric_eigenvalues(assemble_hamiltonian(basis, p), false).values;
    const auto blocks = diagonalize_truncated(basis, p, false).energies();
    for (std::size_t i = 0; i < whole.size(); ++i) {
      if (std::abs(whole[i] - blocks[i]) > 1e-12 * std::max(1.0, std::abs(whole[i]))) {
        broken.push_back("parity blocks at n_max " + std::to_string(n_max));
        break;
      }
    }
  }

  ModelParams free = p;
  free.g = 0.0;
  const ConvergenceReport harmonic = converged_levels(free, 100, 8);
  std::vector<double> analytic;
  for (int n1 = 0; n1 < 60; ++n1) {
    for (int n2 = 0; n2 < 60; ++n2) analytic.push_back(e0_quantum({n1, n2}, free));
  }
  std::sort(analytic.begin(), analytic.end());
  for (std::size_t i = 0; i < harmonic.levels.size(); ++i) {
    if (std::abs(harmonic.levels[i].energy - analytic[i]) > 1e-12) {
      broken.push_back("g=0 spectrum");
      break;
    }
  }

  double worst_gram = 0.0;
  const TruncatedSpectrum s = diagonalize_truncated(build_basis(34), p, true);
  for (const auto& eig : s.block_eigen) {
    const DenseMatrix& v = *eig.vectors;
    for (std::size_t a = 0; a < v.size(); ++a) {
      for (std::size_t b = a; b < v.size(); ++b) {
        double dot = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) dot += v(i, a) * v(i, b);
        worst_gram = std::max(worst_gram, std::abs(dot - (a == b ? 1.0 : 0.0)));
      }
    }
  }
  if (worst_gram >= 1e-10) broken.push_back("orthonormality");

  const ModelParams q{.omega1 = 0.9, .omega2 = 1.7, .g = 0.2, .hbar = 0.6};
  const ModelParams qs{.omega1 = q.omega2, .omega2 = q.omega1, .g = q.g, .hbar = q.hbar};
  for (int n1 = 0; n1 < 12; ++n1) {
    for (int n2 = 0; n2 < 12; ++n2) {
      const auto sc = semiclassical_series({n1, n2}, q), sc_s = semiclassical_series({n2, n1}, qs);
      const auto qp = qp_series({n1, n2}, q), qp_s = qp_series({n2, n1}, qs);
      const bool ok = rel(sc.e0, sc_s.e0) < 1e-14 && rel(sc.e1, sc_s.e1) < 1e-14 &&
                      rel(sc.e2, sc_s.e2) < 1e-12 && rel(qp.e0, qp_s.e0) < 1e-14 &&
                      rel(qp.e1, qp_s.e1) < 1e-14 && rel(qp.e2, qp_s.e2) < 1e-12;
      if (!ok) broken.push_back("exchange symmetry");
    }
  }

  for (const auto& b : broken) note("broken: " + b);
  report(9, broken.empty(),
         fmt("interlacing, parity blocks, g=0 spectrum, Gram defect %.1e, exchange symmetry",
             worst_gram));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  const ComparisonTable table = criterion_3();
  criterion_4(table);
  criteria_5_6();
  criterion_7();
  criterion_8(table);
  criterion_9();
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
