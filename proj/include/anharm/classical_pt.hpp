#pragma once

// Classical canonical perturbation theory through second order in g for the
// quartic-coupled oscillator pair, and its EBK torus quantization.

#include <functional>

#include "anharm/model.hpp"

namespace anharm {

/// Action variables (I1, I2), both non-negative.
class ActionPair {
 public:
  constexpr ActionPair() = default;
  ActionPair(double i1, double i2);

  constexpr double i1() const noexcept { return i1_; }
  constexpr double i2() const noexcept { return i2_; }

 private:
  double i1_ = 0.0;
  double i2_ = 0.0;
};

/// Angle variables, reduced to [0, 2pi) on construction.
class AnglePair {
 public:
  constexpr AnglePair() = default;
  AnglePair(double theta1, double theta2);

  constexpr double theta1() const noexcept { return theta1_; }
  constexpr double theta2() const noexcept { return theta2_; }

 private:
  double theta1_ = 0.0;
  double theta2_ = 0.0;
};

struct PhasePoint {
  double q1 = 0.0;
  double p1 = 0.0;
  double q2 = 0.0;
  double p2 = 0.0;
};

/// Derivative pair with respect to (x1, x2); used for both action and angle partials.
struct Gradient2 {
  double d1 = 0.0;
  double d2 = 0.0;
};

/// q_k = sqrt(2 I_k) cos(theta_k), p_k = sqrt(2 I_k) sin(theta_k).
PhasePoint action_angle_to_cartesian(const ActionPair& actions, const AnglePair& angles);

/// Inverse map, I_k = (q_k^2 + p_k^2) / 2.
ActionPair cartesian_to_actions(const PhasePoint& point);

/// Coupling in action-angle form: 4 I1 I2 cos^2(theta1) cos^2(theta2) = q1^2 q2^2.
double coupling_v(const ActionPair& actions, const AnglePair& angles);

/// (dV/dI1, dV/dI2).
Gradient2 coupling_v_action_gradient(const ActionPair& actions, const AnglePair& angles);

/// Unperturbed energy w1 I1 + w2 I2.
double h0_actions(const ActionPair& actions, const ModelParams& params);

/// First-order normal form: the angle average of V, which is I1 I2.
double h1_actions(const ActionPair& actions);

/// Second-order normal form
///   -1/8 I1 I2 [ 4 (I1/w2 + I2/w1) - (I1 - I2)/(w1 - w2) + (I1 + I2)/(w1 + w2) ].
double h2_actions(const ActionPair& actions, const ModelParams& params);

/// First-order generator S1, a pure sine series in 2 theta1, 2 theta2,
/// 2(theta1 - theta2) and 2(theta1 + theta2).
double s1_generator(const ActionPair& actions, const AnglePair& angles, const ModelParams& params);

/// Analytic (dS1/dtheta1, dS1/dtheta2).
Gradient2 s1_angle_gradient(const ActionPair& actions, const AnglePair& angles,
                            const ModelParams& params);

/// w1 dS1/dtheta1 + w2 dS1/dtheta2 + V - H1. Identically zero up to rounding.
double homological_residual(const ActionPair& actions, const AnglePair& angles,
                            const ModelParams& params);

/// dV/dI1 dS1/dtheta1 + dV/dI2 dS1/dtheta2, whose angle average is H2.
double second_order_integrand(const ActionPair& actions, const AnglePair& angles,
                              const ModelParams& params);

using AngleField = std::function<double(double theta1, double theta2)>;

inline constexpr int kDefaultQuadratureN = 64;

/// Mean of `fn` over the torus [0, 2pi)^2 on a uniform quadrature_n x quadrature_n
/// grid (periodic trapezoid rule). Exact to rounding for trigonometric
/// polynomials of degree below quadrature_n. Requires quadrature_n >= 8.
double angle_average(const AngleField& fn, int quadrature_n = kDefaultQuadratureN);

/// EBK actions I_k = (n_k + 1/2) hbar.
ActionPair ebk_actions(const QuantumNumbers& n, double hbar);

/// (H0, H1, H2) evaluated at the EBK actions of `n`.
PerturbationSeries semiclassical_series(const QuantumNumbers& n, const ModelParams& params);

}  // namespace anharm
