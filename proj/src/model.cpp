#include "anharm/model.hpp"

#include <cmath>
#include <numbers>

namespace anharm {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ResonantFrequencies: return "ResonantFrequencies";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::NegativeCoupling: return "NegativeCoupling";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InsufficientLevels: return "InsufficientLevels";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::string field)
    : std::runtime_error(message), code_(code), field_(std::move(field)) {}

ModelParams reference_params() {
  return {.omega1 = 1.0, .omega2 = std::numbers::sqrt2, .g = 0.1, .hbar = 1.0};
}

namespace {

void require_positive(double value, const char* name) {
  // Negated comparison so NaN is rejected as well.
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::NonPositiveParameter,
                std::string(name) + " must be a finite positive number", name);
  }
}

}  // namespace

const ModelParams& validate(const ModelParams& params) {
  require_positive(params.omega1, "omega1");
  require_positive(params.omega2, "omega2");
  require_positive(params.hbar, "hbar");
  if (!(params.g >= 0.0) || !std::isfinite(params.g)) {
    throw Error(ErrorCode::NegativeCoupling, "g must be a finite non-negative number", "g");
  }
  if (std::abs(params.omega1 - params.omega2) < kResonanceTolerance) {
    throw Error(ErrorCode::ResonantFrequencies,
                "omega1 and omega2 are resonant (|omega1 - omega2| < 1e-6); "
                "the perturbation series has a vanishing denominator",
                "omega2");
  }
  return params;
}

QuantumNumbers::QuantumNumbers(int n1, int n2) : n1_(n1), n2_(n2) {
  if (n1 < 0 || n2 < 0) {
    throw Error(ErrorCode::InvalidArgument, "quantum numbers must be non-negative");
  }
}

std::string to_string(const QuantumNumbers& n) {
  return "(" + std::to_string(n.n1()) + "," + std::to_string(n.n2()) + ")";
}

}  // namespace anharm
