#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace anharm {

/// Square dense matrix, row-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  double& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

  std::span<const double> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }

  /// Largest absolute entry.
  double max_abs() const;
  /// Frobenius norm; an upper bound on the spectral norm.
  double frobenius_norm() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct EigenDecomposition {
  std::vector<double> values;          ///< ascending
  std::optional<DenseMatrix> vectors;  ///< column k pairs with values[k]
};

/// Full spectrum of a real symmetric matrix by Householder reduction to
/// tridiagonal form followed by implicit-shift QL iteration. Deterministic.
/// Throws Error(InvalidArgument) on non-symmetric or non-finite input and
/// Error(ConvergenceFailure) if an eigenvalue needs more than 60 sweeps.
EigenDecomposition symmetric_eigenvalues(const DenseMatrix& matrix, bool want_vectors);

/// max_k ||A v_k - lambda_k v_k||_2.
double max_eigen_residual(const DenseMatrix& matrix, const EigenDecomposition& eig);

}  // namespace anharm
