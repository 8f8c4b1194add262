#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace anharm {

/// Frequencies closer than this are treated as resonant and rejected.
inline constexpr double kResonanceTolerance = 1e-6;

enum class ErrorCode {
  ResonantFrequencies,
  NonPositiveParameter,
  NegativeCoupling,
  InvalidArgument,
  ConvergenceFailure,
  BudgetExceeded,
  InsufficientLevels,
  Io,
};

const char* to_string(ErrorCode code);

/// Library-wide exception. `field` names the offending parameter when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

/// Physical parameters of H = w1/2 (p1^2+q1^2) + w2/2 (p2^2+q2^2) + g q1^2 q2^2,
/// in dimensionless model units.
struct ModelParams {
  double omega1 = 1.0;
  double omega2 = 1.0;
  double g = 0.0;
  double hbar = 1.0;

  bool operator==(const ModelParams&) const = default;
};

/// The configuration used throughout the reference tables:
/// omega1 = 1, omega2 = sqrt(2), g = 0.1, hbar = 1.
ModelParams reference_params();

/// Single validation authority for parameter sets. Returns the input unchanged
/// or throws Error with ResonantFrequencies, NonPositiveParameter or
/// NegativeCoupling.
const ModelParams& validate(const ModelParams& params);

/// Level label (n1, n2); both components non-negative.
class QuantumNumbers {
 public:
  constexpr QuantumNumbers() = default;
  QuantumNumbers(int n1, int n2);

  constexpr int n1() const noexcept { return n1_; }
  constexpr int n2() const noexcept { return n2_; }

  /// (n2, n1)
  QuantumNumbers swapped() const { return {n2_, n1_}; }

  auto operator<=>(const QuantumNumbers&) const = default;

 private:
  int n1_ = 0;
  int n2_ = 0;
};

std::string to_string(const QuantumNumbers& n);

/// e0 + g e1 + g^2 e2.
struct PerturbationSeries {
  double e0 = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;

  double total(double g) const noexcept { return e0 + g * (e1 + g * e2); }
};

}  // namespace anharm
