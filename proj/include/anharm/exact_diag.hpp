#pragma once

// Numerically exact spectrum: the Hamiltonian truncated to the square
// occupation-number basis n1, n2 <= n_max, diagonalized per parity block, with
// a driver that enlarges the basis until the lowest levels stop moving.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "anharm/model.hpp"
#include "anharm/symmetric_eigen.hpp"

namespace anharm {

/// All (n1, n2) with 0 <= n1, n2 <= n_max in lexicographic order.
class BasisSpec {
 public:
  explicit BasisSpec(int n_max);

  int n_max() const noexcept { return n_max_; }
  std::size_t dimension() const noexcept { return states_.size(); }
  const std::vector<QuantumNumbers>& states() const noexcept { return states_; }
  const QuantumNumbers& state(std::size_t index) const { return states_[index]; }

  bool contains(int n1, int n2) const noexcept {
    return n1 >= 0 && n2 >= 0 && n1 <= n_max_ && n2 <= n_max_;
  }
  std::size_t index_of(int n1, int n2) const noexcept {
    return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n_max_ + 1) +
           static_cast<std::size_t>(n2);
  }

 private:
  int n_max_;
  std::vector<QuantumNumbers> states_;
};

BasisSpec build_basis(int n_max);

enum class Parity { Even, Odd };

/// States sharing (n1 mod 2, n2 mod 2). H never couples different blocks.
struct ParityBlock {
  Parity parity1 = Parity::Even;
  Parity parity2 = Parity::Even;
  std::vector<std::size_t> members;  ///< ascending indices into the parent basis
};

/// Blocks in the order (even, even), (even, odd), (odd, even), (odd, odd).
/// Blocks may be empty when n_max = 0.
std::array<ParityBlock, 4> split_parity_blocks(const BasisSpec& basis);

/// Full truncated Hamiltonian H0 + g V in the parent basis ordering.
DenseMatrix assemble_hamiltonian(const BasisSpec& basis, const ModelParams& params);

/// Restriction of the Hamiltonian to one parity block, in member order.
DenseMatrix assemble_block(const BasisSpec& basis, const ParityBlock& block,
                           const ModelParams& params);

/// Nonzero entries as "row col value" lines, 0-based, 17 significant digits.
void write_matrix_triplets(const DenseMatrix& matrix, std::ostream& out);

/// One eigenpair of a parity block, located by block and column.
struct BlockLevel {
  double energy = 0.0;
  std::size_t block = 0;
  std::size_t column = 0;
};

/// Spectrum of the truncated Hamiltonian assembled from its four blocks.
struct TruncatedSpectrum {
  BasisSpec basis{0};
  std::array<ParityBlock, 4> blocks;
  std::array<EigenDecomposition, 4> block_eigen;
  std::vector<BlockLevel> levels;  ///< merged, ascending in energy

  std::vector<double> energies() const;
  bool has_vectors() const;
};

/// Diagonalizes each parity block, concurrently when `parallel` is set; the
/// result does not depend on the setting.
TruncatedSpectrum diagonalize_truncated(const BasisSpec& basis, const ModelParams& params,
                                        bool want_vectors, bool parallel = true);

struct SpectrumLevel {
  int rank = 0;  ///< 1-based, ascending energy
  double energy = 0.0;
  QuantumNumbers assigned;
  double overlap_weight = 0.0;  ///< squared eigenvector component on `assigned`
  bool ambiguous = false;       ///< overlap_weight below kAmbiguousWeight
};

inline constexpr double kAmbiguousWeight = 0.4;

/// Labels the lowest `count` levels by their dominant basis state. Two levels
/// never share a label: levels are served in order of decreasing dominant
/// weight and each takes its heaviest unclaimed state. Requires eigenvectors.
std::vector<SpectrumLevel> assign_quantum_numbers(const TruncatedSpectrum& spectrum,
                                                  std::size_t count);

struct ConvergenceOptions {
  int first_n_max = 14;
  int n_max_step = 5;
  int n_max_cap = 80;
  bool parallel_blocks = true;
};

struct ConvergenceStep {
  int n_max = 0;
  std::size_t dimension = 0;
  /// |E_k(n_max) - E_k(previous n_max)| for the lowest k levels; empty on the first step.
  std::vector<double> changes;
};

struct ConvergenceReport {
  int final_n_max = 0;
  std::size_t final_dimension = 0;
  int digits = 0;
  std::vector<SpectrumLevel> levels;
  std::vector<ConvergenceStep> history;
};

/// |dE| < 0.5 * 10^-digits * max(1, |E|).
double convergence_threshold(double energy, int digits);

/// Schedule first_n_max, first_n_max + step, ... clipped to n_max_cap, with the
/// cap itself as the final entry.
std::vector<int> basis_schedule(const ConvergenceOptions& options);

/// Grows the basis along basis_schedule() until the lowest k levels move by
/// less than convergence_threshold() between consecutive steps, then labels
/// the levels of the final basis. Throws Error(BudgetExceeded) if the cap is
/// reached first.
ConvergenceReport converged_levels(const ModelParams& params, int k, int digits,
                                   const ConvergenceOptions& options = {});

}  // namespace anharm
