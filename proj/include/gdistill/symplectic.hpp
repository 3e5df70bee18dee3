// Copyright 2026 The gdistill Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace gdistill {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Default absolute entrywise tolerance for S^T J S = J and basis pairings.
inline constexpr double kSymplecticTol = 1e-9;

/// J = J_1 ⊕ ... ⊕ J_1 with J_1 = [[0, -1], [1, 0]], coordinates ordered
/// (q_1, p_1, q_2, p_2, ...).
class SymplecticForm {
 public:
  explicit SymplecticForm(int modes);

  int modes() const noexcept { return modes_; }
  const Matrix& matrix() const noexcept { return matrix_; }

 private:
  int modes_;
  Matrix matrix_;
};

SymplecticForm make_form(int modes);

/// Shorthand for make_form(modes).matrix().
Matrix form_matrix(int modes);

/// True iff max |S^T J S - J| <= tol entrywise. Odd or non-square input
/// raises kInvalidShape.
bool is_symplectic(const Matrix& s, double tol = kSymplecticTol);

/// Real 2n x 2n matrix with S^T J S = J, checked on construction.
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Matrix entries, double tol = kSymplecticTol);

  static SymplecticMatrix identity(int modes);

  int modes() const noexcept { return static_cast<int>(entries_.rows() / 2); }
  const Matrix& matrix() const noexcept { return entries_; }

  /// S^{-1} = J^T S^T J, exact up to rounding.
  SymplecticMatrix inverse() const;
  SymplecticMatrix transpose() const;
  SymplecticMatrix operator*(const SymplecticMatrix& rhs) const;

 private:
  struct Unchecked {};
  SymplecticMatrix(Matrix entries, Unchecked) : entries_(std::move(entries)) {}

  Matrix entries_;
};

/// Block-diagonal S_A ⊕ S_B acting on (A modes, B modes).
SymplecticMatrix direct_sum(const SymplecticMatrix& a, const SymplecticMatrix& b);

/// Symplectic eigenvalues of a symmetric positive-definite 2n x 2n matrix,
/// sorted ascending. Computed as the positive half of the spectrum of the
/// Hermitian matrix i L^T J L, where gamma = L L^T (Cholesky). That matrix is
/// similar to i J gamma, whose eigenvalues come in +/- pairs.
std::vector<double> symplectic_eigenvalues(const Matrix& gamma);

/// A full symplectic basis stored column-wise.
///
/// Pairing convention (1-based column indices): for all k, l
///   f_{2k}^T J f_{2l-1} = delta_kl,   f_{2k-1}^T J f_{2l-1} = 0,
///   f_{2k}^T J f_{2l} = 0,
/// which is exactly the statement that the column matrix S satisfies
/// S^T J S = J. Equivalently, f_{2k-1}^T J f_{2k} = -1 = J_{2k-1, 2k}.
class SymplecticBasis {
 public:
  explicit SymplecticBasis(Matrix columns) : columns_(std::move(columns)) {}

  int modes() const noexcept { return static_cast<int>(columns_.cols() / 2); }
  const Matrix& columns() const noexcept { return columns_; }
  /// Zero-based column access.
  Vector vector(int k) const { return columns_.col(k); }

  /// The matrix S with S e_k = f_k.
  SymplecticMatrix as_matrix(double tol = kSymplecticTol) const {
    return SymplecticMatrix(columns_, tol);
  }

 private:
  Matrix columns_;
};

/// Completes the pair (f1, f2) to a symplectic basis by symplectic
/// Gram-Schmidt over the standard basis vectors. Requires f2^T J f1 = 1
/// (the first pair in the convention above) within `tol`.
///
/// Each remaining pair is built from standard basis candidates after
/// subtracting their skew projections on the pairs fixed so far: the
/// candidate with the largest residual (norm at least 1e-8) becomes f_{2k-1}
/// after normalization, and the candidate whose residual has the largest skew
/// product with it becomes f_{2k}, rescaled so the pairing equals one.
SymplecticBasis extend_to_symplectic_basis(const Vector& f1, const Vector& f2,
                                           double tol = kSymplecticTol);

/// exp(J H) for a symmetric H drawn from a seeded generator. Entries of H are
/// uniform in [-strength, strength] / sqrt(2n), which keeps the condition
/// number of the result moderate for strength of order one.
SymplecticMatrix random_symplectic(int modes, std::uint64_t seed,
                                   double strength = 0.5);

}  // namespace gdistill
