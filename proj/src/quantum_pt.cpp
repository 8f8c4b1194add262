#include "anharm/quantum_pt.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "anharm/classical_pt.hpp"

namespace anharm {

double quadrature_squared_element(int bra, int ket) {
  const double n = ket;
  if (bra == ket) return 2.0 * n + 1.0;
  if (bra == ket - 2) return std::sqrt(n * (n - 1.0));
  if (bra == ket + 2) return std::sqrt((n + 1.0) * (n + 2.0));
  return 0.0;
}

namespace {

// |<bra|q^2|ket>|^2 without the square roots.
double squared_element_squared(int bra, int ket) {
  const double n = ket;
  if (bra == ket) return (2.0 * n + 1.0) * (2.0 * n + 1.0);
  if (bra == ket - 2) return n * (n - 1.0);
  if (bra == ket + 2) return (n + 1.0) * (n + 2.0);
  return 0.0;
}

}  // namespace

double v_matrix_element(const MatrixElementKey& key, double hbar) {
  return 0.25 * hbar * hbar * quadrature_squared_element(key.bra.n1(), key.ket.n1()) *
         quadrature_squared_element(key.bra.n2(), key.ket.n2());
}

double e0_quantum(const QuantumNumbers& n, const ModelParams& params) {
  validate(params);
  return params.hbar * (params.omega1 * (n.n1() + 0.5) + params.omega2 * (n.n2() + 0.5));
}

double e1_quantum(const QuantumNumbers& n, double hbar) {
  return hbar * hbar * (n.n1() + 0.5) * (n.n2() + 0.5);
}

double e2_quantum_closed(const QuantumNumbers& n, const ModelParams& params) {
  validate(params);
  const double n1 = n.n1();
  const double n2 = n.n2();
  const double w1 = params.omega1;
  const double w2 = params.omega2;

  const double down1 = n1 * (n1 - 1.0);
  const double up1 = (n1 + 1.0) * (n1 + 2.0);
  const double down2 = n2 * (n2 - 1.0);
  const double up2 = (n2 + 1.0) * (n2 + 2.0);
  const double diag1 = (2.0 * n1 + 1.0) * (2.0 * n1 + 1.0);
  const double diag2 = (2.0 * n2 + 1.0) * (2.0 * n2 + 1.0);

  // Pair the two terms sharing a denominator so the integer numerators cancel
  // exactly; the four quotients still cancel strongly near resonance, so they
  // are formed and added in extended precision, smallest magnitude first.
  using ld = long double;
  std::array<ld, 4> terms = {
      (down1 * down2 - up1 * up2) / (static_cast<ld>(w1) + w2),
      (down1 * up2 - up1 * down2) / (static_cast<ld>(w1) - w2),
      (down1 - up1) * diag2 / static_cast<ld>(w1),
      diag1 * (down2 - up2) / static_cast<ld>(w2),
  };
  std::sort(terms.begin(), terms.end(),
            [](ld a, ld b) { return std::abs(a) < std::abs(b); });
  ld sum = 0.0L;
  for (ld t : terms) sum += t;
  const double h = params.hbar;
  return h * h * h / 32.0 * static_cast<double>(sum);
}

std::vector<IntermediateTerm> intermediate_terms(const QuantumNumbers& n,
                                                 const ModelParams& params) {
  validate(params);
  std::vector<IntermediateTerm> terms;
  terms.reserve(8);
  for (int d1 : {-2, 0, 2}) {
    for (int d2 : {-2, 0, 2}) {
      if (d1 == 0 && d2 == 0) continue;
      const int m1 = n.n1() + d1;
      const int m2 = n.n2() + d2;
      if (m1 < 0 || m2 < 0) continue;
      const QuantumNumbers state(m1, m2);
      const double h2 = params.hbar * params.hbar;
      terms.push_back({.state = state,
                       .coupling_squared = h2 * h2 / 16.0 *
                                           squared_element_squared(m1, n.n1()) *
                                           squared_element_squared(m2, n.n2()),
                       .denominator = params.hbar * (params.omega1 * -d1 + params.omega2 * -d2)});
    }
  }
  return terms;
}

double e2_quantum_sum(const QuantumNumbers& n, const ModelParams& params) {
  // Mirrored states share |denominator| and nearly cancel near resonance, so
  // the exact integer element products are divided by the bare frequency
  // combinations in extended precision and the hbar scale applied once.
  validate(params);
  long double sum = 0.0L;
  for (const auto& term : intermediate_terms(n, params)) {
    const long double product =
        static_cast<long double>(squared_element_squared(term.state.n1(), n.n1())) *
        squared_element_squared(term.state.n2(), n.n2());
    const long double frequency =
        static_cast<long double>(params.omega1) * (n.n1() - term.state.n1()) +
        static_cast<long double>(params.omega2) * (n.n2() - term.state.n2());
    sum += product / frequency;
  }
  const double h = params.hbar;
  sum *= static_cast<long double>(h) * h * h / 16.0L;
  return static_cast<double>(sum);
}

double q2_correction(const QuantumNumbers& n, const ModelParams& params) {
  validate(params);
  const double h = params.hbar;
  const double w1 = params.omega1;
  const double w2 = params.omega2;
  using ld = long double;
  const ld bracket = (n.n1() - n.n2()) / (static_cast<ld>(w1) - w2) +
                     (n.n1() + n.n2() + 1.0L) / (static_cast<ld>(w1) + w2);
  return static_cast<double>(-3.0L / 32.0L * h * bracket);
}

PerturbationSeries qp_series(const QuantumNumbers& n, const ModelParams& params) {
  return {.e0 = e0_quantum(n, params),
          .e1 = e1_quantum(n, params.hbar),
          .e2 = e2_quantum_closed(n, params)};
}

EnergyDecomposition decompose_e2(const QuantumNumbers& n, const ModelParams& params) {
  return {.e_semiclassical_2 = h2_actions(ebk_actions(n, params.hbar), params),
          .q2 = q2_correction(n, params),
          .e2_total = e2_quantum_closed(n, params)};
}

}  // namespace anharm
