#pragma once

// Rayleigh-Schroedinger perturbation theory through second order in g in the
// occupation-number basis |n1 n2>, plus the split of the second-order energy
// into the torus-quantized classical term and an explicit hbar^2 correction.

#include <vector>

#include "anharm/model.hpp"

namespace anharm {

struct MatrixElementKey {
  QuantumNumbers bra;
  QuantumNumbers ket;
};

/// Single-mode element <bra|(a + a^+)^2|ket>: sqrt(n(n-1)) for bra = n-2,
/// sqrt((n+1)(n+2)) for bra = n+2, 2n+1 on the diagonal, otherwise 0.
double quadrature_squared_element(int bra, int ket);

/// <bra|V|ket> with V = hbar^2/4 (a1 + a1^+)^2 (a2 + a2^+)^2.
double v_matrix_element(const MatrixElementKey& key, double hbar);

/// hbar [w1 (n1 + 1/2) + w2 (n2 + 1/2)].
double e0_quantum(const QuantumNumbers& n, const ModelParams& params);

/// <n|V|n> = hbar^2 (n1 + 1/2)(n2 + 1/2).
double e1_quantum(const QuantumNumbers& n, double hbar);

/// Eight-term closed form of the second-order energy.
double e2_quantum_closed(const QuantumNumbers& n, const ModelParams& params);

/// One contribution to the second-order sum over intermediate states.
struct IntermediateTerm {
  QuantumNumbers state;
  double coupling_squared = 0.0;  ///< |<state|V|n>|^2
  double denominator = 0.0;       ///< E0(n) - E0(state)

  double value() const noexcept { return coupling_squared / denominator; }
};

/// Intermediate states reached from `n` by shifts in {-2, 0, +2}^2 minus the
/// origin; shifts that would produce a negative occupation are skipped.
std::vector<IntermediateTerm> intermediate_terms(const QuantumNumbers& n,
                                                 const ModelParams& params);

/// Second-order energy by direct summation over intermediate_terms().
double e2_quantum_sum(const QuantumNumbers& n, const ModelParams& params);

/// Quantum correction per unit g^2 hbar^2:
///   -3/32 [ (n1 - n2) hbar / (w1 - w2) + (n1 + n2 + 1) hbar / (w1 + w2) ].
double q2_correction(const QuantumNumbers& n, const ModelParams& params);

/// (E0, E1, E2) with E2 from the closed form.
PerturbationSeries qp_series(const QuantumNumbers& n, const ModelParams& params);

struct EnergyDecomposition {
  double e_semiclassical_2 = 0.0;  ///< H2 at the EBK actions
  double q2 = 0.0;                 ///< q2_correction
  double e2_total = 0.0;           ///< e2_quantum_closed

  /// e2_total - e_semiclassical_2 - hbar^2 q2, zero up to rounding.
  double identity_residual(double hbar) const noexcept {
    return e2_total - e_semiclassical_2 - hbar * hbar * q2;
  }
};

EnergyDecomposition decompose_e2(const QuantumNumbers& n, const ModelParams& params);

}  // namespace anharm
