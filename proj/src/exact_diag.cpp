#include "anharm/exact_diag.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <ostream>

#include "anharm/quantum_pt.hpp"

namespace anharm {

BasisSpec::BasisSpec(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be non-negative");
  states_.reserve(static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(n_max + 1));
  for (int n1 = 0; n1 <= n_max; ++n1) {
    for (int n2 = 0; n2 <= n_max; ++n2) states_.emplace_back(n1, n2);
  }
}

BasisSpec build_basis(int n_max) { return BasisSpec(n_max); }

std::array<ParityBlock, 4> split_parity_blocks(const BasisSpec& basis) {
  std::array<ParityBlock, 4> blocks;
  for (std::size_t b = 0; b < 4; ++b) {
    blocks[b].parity1 = (b & 2U) ? Parity::Odd : Parity::Even;
    blocks[b].parity2 = (b & 1U) ? Parity::Odd : Parity::Even;
  }
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    const auto& s = basis.state(i);
    const std::size_t b = static_cast<std::size_t>((s.n1() % 2) * 2 + (s.n2() % 2));
    blocks[b].members.push_back(i);
  }
  return blocks;
}

namespace {

// Calls visit(bra_index, element) for every nonzero <bra|H|ket> with bra >= ket.
template <typename Visit>
void for_each_lower_element(const BasisSpec& basis, std::size_t ket_index,
                            const ModelParams& params, Visit&& visit) {
  const QuantumNumbers& ket = basis.state(ket_index);
  for (int d1 : {0, 2}) {
    for (int d2 : {-2, 0, 2}) {
      if (d1 == 0 && d2 < 0) continue;  // that bra precedes ket lexicographically
      const int m1 = ket.n1() + d1;
      const int m2 = ket.n2() + d2;
      if (!basis.contains(m1, m2)) continue;
      const QuantumNumbers bra(m1, m2);
      double element = params.g * v_matrix_element({.bra = bra, .ket = ket}, params.hbar);
      if (d1 == 0 && d2 == 0) element += e0_quantum(ket, params);
      if (element != 0.0) visit(basis.index_of(m1, m2), element);
    }
  }
}

}  // namespace

DenseMatrix assemble_hamiltonian(const BasisSpec& basis, const ModelParams& params) {
  validate(params);
  DenseMatrix h(basis.dimension());
  for (std::size_t ket = 0; ket < basis.dimension(); ++ket) {
    for_each_lower_element(basis, ket, params, [&](std::size_t bra, double value) {
      h(bra, ket) = value;
      h(ket, bra) = value;
    });
  }
  return h;
}

DenseMatrix assemble_block(const BasisSpec& basis, const ParityBlock& block,
                           const ModelParams& params) {
  validate(params);
  constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> local(basis.dimension(), kAbsent);
  for (std::size_t i = 0; i < block.members.size(); ++i) local[block.members[i]] = i;

  DenseMatrix h(block.members.size());
  for (std::size_t j = 0; j < block.members.size(); ++j) {
    for_each_lower_element(basis, block.members[j], params, [&](std::size_t bra, double value) {
      const std::size_t i = local[bra];
      if (i == kAbsent) {
        throw Error(ErrorCode::InvalidArgument, "block is not closed under the Hamiltonian");
      }
      h(i, j) = value;
      h(j, i) = value;
    });
  }
  return h;
}

void write_matrix_triplets(const DenseMatrix& matrix, std::ostream& out) {
  char buf[64];
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      const double v = matrix(i, j);
      if (v == 0.0) continue;
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << i << ' ' << j << ' ' << buf << '\n';
    }
  }
}

std::vector<double> TruncatedSpectrum::energies() const {
  std::vector<double> out;
  out.reserve(levels.size());
  for (const auto& l : levels) out.push_back(l.energy);
  return out;
}

bool TruncatedSpectrum::has_vectors() const {
  return std::all_of(block_eigen.begin(), block_eigen.end(),
                     [](const EigenDecomposition& e) { return e.vectors.has_value(); });
}

TruncatedSpectrum diagonalize_truncated(const BasisSpec& basis, const ModelParams& params,
                                        bool want_vectors, bool parallel) {
  validate(params);
  TruncatedSpectrum out{.basis = basis, .blocks = split_parity_blocks(basis), .block_eigen = {}, .levels = {}};

  auto solve = [&](std::size_t b) {
    return symmetric_eigenvalues(assemble_block(basis, out.blocks[b], params), want_vectors);
  };
  if (parallel) {
    std::array<std::future<EigenDecomposition>, 4> pending;
    for (std::size_t b = 0; b < 4; ++b) pending[b] = std::async(std::launch::async, solve, b);
    for (std::size_t b = 0; b < 4; ++b) out.block_eigen[b] = pending[b].get();
  } else {
    for (std::size_t b = 0; b < 4; ++b) out.block_eigen[b] = solve(b);
  }

  for (std::size_t b = 0; b < 4; ++b) {
    const auto& values = out.block_eigen[b].values;
    for (std::size_t c = 0; c < values.size(); ++c) {
      out.levels.push_back({.energy = values[c], .block = b, .column = c});
    }
  }
  std::sort(out.levels.begin(), out.levels.end(), [](const BlockLevel& a, const BlockLevel& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    if (a.block != b.block) return a.block < b.block;
    return a.column < b.column;
  });
  return out;
}

std::vector<SpectrumLevel> assign_quantum_numbers(const TruncatedSpectrum& spectrum,
                                                  std::size_t count) {
  if (!spectrum.has_vectors()) {
    throw Error(ErrorCode::InvalidArgument, "quantum-number assignment needs eigenvectors");
  }
  if (count > spectrum.levels.size()) {
    throw Error(ErrorCode::InsufficientLevels, "fewer levels than requested for assignment");
  }

  // Candidate (weight, parent index) pairs per level, heaviest first.
  struct Candidate {
    double weight;
    std::size_t state;
  };
  std::vector<std::vector<Candidate>> candidates(count);
  for (std::size_t r = 0; r < count; ++r) {
    const BlockLevel& level = spectrum.levels[r];
    const ParityBlock& block = spectrum.blocks[level.block];
    const DenseMatrix& vec = *spectrum.block_eigen[level.block].vectors;
    auto& list = candidates[r];
    list.reserve(block.members.size());
    for (std::size_t i = 0; i < block.members.size(); ++i) {
      const double c = vec(i, level.column);
      list.push_back({c * c, block.members[i]});
    }
    std::sort(list.begin(), list.end(), [](const Candidate& a, const Candidate& b) {
      if (a.weight != b.weight) return a.weight > b.weight;
      return a.state < b.state;
    });
  }

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].front().weight > candidates[b].front().weight;
  });

  std::vector<bool> claimed(spectrum.basis.dimension(), false);
  std::vector<SpectrumLevel> out(count);
  for (std::size_t r : order) {
    for (const Candidate& c : candidates[r]) {
      if (claimed[c.state]) continue;
      claimed[c.state] = true;
      out[r] = {.rank = static_cast<int>(r) + 1,
                .energy = spectrum.levels[r].energy,
                .assigned = spectrum.basis.state(c.state),
                .overlap_weight = c.weight,
                .ambiguous = c.weight < kAmbiguousWeight};
      break;
    }
  }
  return out;
}

double convergence_threshold(double energy, int digits) {
  return 0.5 * std::pow(10.0, -digits) * std::max(1.0, std::abs(energy));
}

std::vector<int> basis_schedule(const ConvergenceOptions& options) {
  if (options.first_n_max < 0 || options.n_max_step < 1 ||
      options.n_max_cap < options.first_n_max) {
    throw Error(ErrorCode::InvalidArgument, "invalid basis schedule");
  }
  std::vector<int> schedule;
  for (int n = options.first_n_max; n < options.n_max_cap; n += options.n_max_step) {
    schedule.push_back(n);
  }
  schedule.push_back(options.n_max_cap);
  return schedule;
}

ConvergenceReport converged_levels(const ModelParams& params, int k, int digits,
                                   const ConvergenceOptions& options) {
  validate(params);
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1", "k");
  if (digits < 1 || digits > 15) {
    throw Error(ErrorCode::InvalidArgument, "digits must lie in [1, 15]", "digits");
  }
  const auto want = static_cast<std::size_t>(k);

  ConvergenceReport report;
  report.digits = digits;
  std::vector<double> previous;
  for (int n_max : basis_schedule(options)) {
    const BasisSpec basis(n_max);
    if (basis.dimension() < want) continue;
    std::vector<double> current =
        diagonalize_truncated(basis, params, false, options.parallel_blocks).energies();
    current.resize(want);

    ConvergenceStep step;
    step.n_max = n_max;
    step.dimension = basis.dimension();
    bool converged = false;
    if (!previous.empty()) {
      converged = true;
      step.changes.resize(want);
      for (std::size_t i = 0; i < want; ++i) {
        step.changes[i] = std::abs(current[i] - previous[i]);
        if (!(step.changes[i] < convergence_threshold(current[i], digits))) converged = false;
      }
    }
    report.history.push_back(std::move(step));

    if (converged) {
      const TruncatedSpectrum final_spectrum =
          diagonalize_truncated(basis, params, true, options.parallel_blocks);
      report.final_n_max = n_max;
      report.final_dimension = basis.dimension();
      report.levels = assign_quantum_numbers(final_spectrum, want);
      return report;
    }
    previous = std::move(current);
  }
  throw Error(ErrorCode::BudgetExceeded,
              "lowest " + std::to_string(k) + " levels did not converge to " +
                  std::to_string(digits) + " digits by n_max = " +
                  std::to_string(options.n_max_cap));
}

}  // namespace anharm
