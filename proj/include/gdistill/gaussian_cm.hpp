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

#include <span>
#include <vector>

#include "gdistill/symplectic.hpp"

namespace gdistill {

/// Default threshold for every boolean verdict. Verdicts also carry the raw
/// margins so callers can apply their own threshold.
inline constexpr double kVerdictTol = 1e-9;

/// Matrices whose condition number exceeds this are rejected where an inverse
/// is needed.
inline constexpr double kMaxConditionNumber = 1e12;

/// Real symmetric positive-definite correlation matrix of a bipartite state.
///
/// Modes are ordered A first, then B; coordinates are interleaved
/// (q_1, p_1, q_2, p_2, ...). The vacuum has gamma = identity (hbar = 1,
/// characteristic function exp(-x^T gamma x / 4)). Either side may be empty,
/// but not both.
class CorrelationMatrix {
 public:
  /// Checks shape, symmetry (within 1e-9 relative) and positive definiteness;
  /// the stored matrix is the exact symmetric part of `entries`.
  CorrelationMatrix(const Matrix& entries, int modes_a, int modes_b);

  const Matrix& matrix() const noexcept { return entries_; }
  int modes_a() const noexcept { return modes_a_; }
  int modes_b() const noexcept { return modes_b_; }
  int modes() const noexcept { return modes_a_ + modes_b_; }
  Eigen::Index dim() const noexcept { return entries_.rows(); }

  double operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }

 private:
  Matrix entries_;
  int modes_a_;
  int modes_b_;
};

struct GaussianState {
  GaussianState(CorrelationMatrix gamma_in, Vector displacement_in);
  explicit GaussianState(CorrelationMatrix gamma_in);

  CorrelationMatrix gamma;
  /// Carried for I/O only; no entanglement test depends on it.
  Vector displacement;
};

struct PhysicalityVerdict {
  bool physical = false;
  double min_symplectic_eigenvalue = 0.0;
  /// Smallest eigenvalue of gamma - J^T gamma^{-1} J.
  double margin = 0.0;
  /// Whether the margin test and the symplectic eigenvalue test agree at the
  /// verdict tolerance. They can only disagree inside the boundary band.
  bool criteria_agree = true;
};

struct NptVerdict {
  bool npt = false;
  /// Smallest eigenvalue of the Hermitian matrix gamma - i J~, clipped at 0.
  double margin = 0.0;
  double min_pt_symplectic_eigenvalue = 0.0;
  bool criteria_agree = true;
};

/// J~ = J_A ⊕ (-J_B).
Matrix partially_transposed_form(int modes_a, int modes_b);

std::vector<double> symplectic_eigenvalues(const CorrelationMatrix& gamma);

/// Physical iff gamma >= J^T gamma^{-1} J, i.e. all symplectic eigenvalues
/// are at least one. `physical` follows the symplectic eigenvalues.
PhysicalityVerdict validate_physical(const CorrelationMatrix& gamma,
                                     double tol = kVerdictTol);

/// Lambda_B gamma Lambda_B, flipping the sign of every B-side momentum.
CorrelationMatrix partial_transpose(const CorrelationMatrix& gamma);

/// NPT test. Raises kPrecondition for unphysical input.
NptVerdict is_npt(const CorrelationMatrix& gamma, double tol = kVerdictTol);

/// J^T gamma^{-1} J with the same partition.
CorrelationMatrix wigner_cm(const CorrelationMatrix& gamma);

/// Principal submatrix on the listed modes. Indices are zero-based within
/// each side.
CorrelationMatrix reduce_to_modes(const CorrelationMatrix& gamma,
                                  std::span<const int> keep_a,
                                  std::span<const int> keep_b);

/// Conditional CM after an ideal homodyne measurement of X on
/// `measured_mode` (zero-based, global index), the remaining modes keeping
/// their side. Schur complement Gamma - sigma (pi g_m pi)^+ sigma^T with
/// pi = diag(1, 0); the result does not depend on the outcome.
CorrelationMatrix condition_on_x_measurement(const CorrelationMatrix& gamma,
                                             int measured_mode);

/// (S_A ⊕ S_B)^T gamma (S_A ⊕ S_B).
CorrelationMatrix apply_local(const CorrelationMatrix& gamma,
                              const SymplecticMatrix& s_a,
                              const SymplecticMatrix& s_b);

/// S^T gamma S for a global symplectic S.
CorrelationMatrix apply_symplectic(const CorrelationMatrix& gamma,
                                   const SymplecticMatrix& s);

/// gamma_1 ⊕ gamma_2 with A modes of both first, then B modes of both.
CorrelationMatrix direct_sum(const CorrelationMatrix& first,
                             const CorrelationMatrix& second);

}  // namespace gdistill
