#include "anharm/classical_pt.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace anharm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace

ActionPair::ActionPair(double i1, double i2) : i1_(i1), i2_(i2) {
  if (!(i1 >= 0.0) || !(i2 >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "actions must be non-negative");
  }
}

AnglePair::AnglePair(double theta1, double theta2)
    : theta1_(reduce_angle(theta1)), theta2_(reduce_angle(theta2)) {}

PhasePoint action_angle_to_cartesian(const ActionPair& actions, const AnglePair& angles) {
  const double r1 = std::sqrt(2.0 * actions.i1());
  const double r2 = std::sqrt(2.0 * actions.i2());
  return {.q1 = r1 * std::cos(angles.theta1()),
          .p1 = r1 * std::sin(angles.theta1()),
          .q2 = r2 * std::cos(angles.theta2()),
          .p2 = r2 * std::sin(angles.theta2())};
}

ActionPair cartesian_to_actions(const PhasePoint& point) {
  return {0.5 * (point.q1 * point.q1 + point.p1 * point.p1),
          0.5 * (point.q2 * point.q2 + point.p2 * point.p2)};
}

double coupling_v(const ActionPair& actions, const AnglePair& angles) {
  const double c1 = std::cos(angles.theta1());
  const double c2 = std::cos(angles.theta2());
  return 4.0 * actions.i1() * actions.i2() * c1 * c1 * c2 * c2;
}

Gradient2 coupling_v_action_gradient(const ActionPair& actions, const AnglePair& angles) {
  const double c1 = std::cos(angles.theta1());
  const double c2 = std::cos(angles.theta2());
  const double angular = 4.0 * c1 * c1 * c2 * c2;
  return {.d1 = angular * actions.i2(), .d2 = angular * actions.i1()};
}

double h0_actions(const ActionPair& actions, const ModelParams& params) {
  validate(params);
  return params.omega1 * actions.i1() + params.omega2 * actions.i2();
}

double h1_actions(const ActionPair& actions) { return actions.i1() * actions.i2(); }

double h2_actions(const ActionPair& actions, const ModelParams& params) {
  validate(params);
  const double i1 = actions.i1();
  const double i2 = actions.i2();
  const double w1 = params.omega1;
  const double w2 = params.omega2;
  // Extended precision: near resonance the difference term dominates and
  // cancels against the others.
  using ld = long double;
  const ld l1 = i1, l2 = i2;
  const ld bracket = 4.0L * (l1 / w2 + l2 / w1) - (l1 - l2) / (static_cast<ld>(w1) - w2) +
                     (l1 + l2) / (static_cast<ld>(w1) + w2);
  return static_cast<double>(-0.125L * l1 * l2 * bracket);
}

double s1_generator(const ActionPair& actions, const AnglePair& angles, const ModelParams& params) {
  validate(params);
  const double t1 = angles.theta1();
  const double t2 = angles.theta2();
  const double w1 = params.omega1;
  const double w2 = params.omega2;
  const double series = 2.0 / w1 * std::sin(2.0 * t1) + 2.0 / w2 * std::sin(2.0 * t2) +
                        std::sin(2.0 * (t1 - t2)) / (w1 - w2) +
                        std::sin(2.0 * (t1 + t2)) / (w1 + w2);
  return -0.25 * actions.i1() * actions.i2() * series;
}

Gradient2 s1_angle_gradient(const ActionPair& actions, const AnglePair& angles,
                            const ModelParams& params) {
  validate(params);
  const double t1 = angles.theta1();
  const double t2 = angles.theta2();
  const double w1 = params.omega1;
  const double w2 = params.omega2;
  const double minus = 2.0 * std::cos(2.0 * (t1 - t2)) / (w1 - w2);
  const double plus = 2.0 * std::cos(2.0 * (t1 + t2)) / (w1 + w2);
  const double prefactor = -0.25 * actions.i1() * actions.i2();
  return {.d1 = prefactor * (4.0 / w1 * std::cos(2.0 * t1) + minus + plus),
          .d2 = prefactor * (4.0 / w2 * std::cos(2.0 * t2) - minus + plus)};
}

double homological_residual(const ActionPair& actions, const AnglePair& angles,
                            const ModelParams& params) {
  const Gradient2 ds = s1_angle_gradient(actions, angles, params);
  return params.omega1 * ds.d1 + params.omega2 * ds.d2 + coupling_v(actions, angles) -
         h1_actions(actions);
}

double second_order_integrand(const ActionPair& actions, const AnglePair& angles,
                              const ModelParams& params) {
  const Gradient2 dv = coupling_v_action_gradient(actions, angles);
  const Gradient2 ds = s1_angle_gradient(actions, angles, params);
  return dv.d1 * ds.d1 + dv.d2 * ds.d2;
}

double angle_average(const AngleField& fn, int quadrature_n) {
  if (quadrature_n < 8) {
    throw Error(ErrorCode::InvalidArgument, "angle_average needs quadrature_n >= 8");
  }
  const double h = kTwoPi / quadrature_n;
  // Row sums in fixed order, then combined in row index order.
  std::vector<double> rows(static_cast<std::size_t>(quadrature_n), 0.0);
  for (int i = 0; i < quadrature_n; ++i) {
    const double t1 = i * h;
    double sum = 0.0;
    for (int j = 0; j < quadrature_n; ++j) sum += fn(t1, j * h);
    rows[static_cast<std::size_t>(i)] = sum;
  }
  double total = 0.0;
  for (double r : rows) total += r;
  return total / (static_cast<double>(quadrature_n) * quadrature_n);
}

ActionPair ebk_actions(const QuantumNumbers& n, double hbar) {
  if (!(hbar > 0.0)) {
    throw Error(ErrorCode::NonPositiveParameter, "hbar must be positive", "hbar");
  }
  return {(n.n1() + 0.5) * hbar, (n.n2() + 0.5) * hbar};
}

PerturbationSeries semiclassical_series(const QuantumNumbers& n, const ModelParams& params) {
  validate(params);
  const ActionPair actions = ebk_actions(n, params.hbar);
  return {.e0 = h0_actions(actions, params),
          .e1 = h1_actions(actions),
          .e2 = h2_actions(actions, params)};
}

}  // namespace anharm
