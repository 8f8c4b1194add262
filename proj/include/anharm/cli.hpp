#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace anharm::cli {

enum ExitCode : int {
  kOk = 0,
  kBadInput = 2,
  kBudgetExceeded = 3,
  kIoFailure = 4,
};

/// Parses "sqrt2" (exact sqrt(2)) or a decimal number.
std::optional<double> parse_real(const std::string& text);

/// Entry point behind the `anharm` executable. Results go to `out` unless
/// --out is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace anharm::cli
