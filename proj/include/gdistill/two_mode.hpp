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

#include "gdistill/gaussian_cm.hpp"

namespace gdistill {

/// (n_a, n_b, k_x, k_p) of the 1x1 standard form
///   A = n_a I, B = n_b I, C = diag(k_x, k_p), with k_x >= |k_p|.
struct StdFormParams {
  double n_a = 1.0;
  double n_b = 1.0;
  double k_x = 0.0;
  double k_p = 0.0;
};

/// Standard-form parameters of a Wigner CM; same ordering convention.
struct WignerParams {
  double n_a = 1.0;
  double n_b = 1.0;
  double k_x = 0.0;
  double k_p = 0.0;

  double d_x() const { return n_a * n_b - k_x * k_x; }
  double d_p() const { return n_a * n_b - k_p * k_p; }
};

struct StandardFormResult {
  SymplecticMatrix s_a;
  SymplecticMatrix s_b;
  CorrelationMatrix gamma_std;
  StdFormParams params;
};

struct PhysicalCheck {
  bool physical = false;
  /// LHS - RHS of (n_a n_b - k_x^2)(n_a n_b - k_p^2) + 1 >= n_a^2 + n_b^2 + 2 k_x k_p.
  double residual_det = 0.0;
  /// n_a n_b - k_x^2 - 1.
  double residual_x = 0.0;
};

struct InequalityCheck {
  bool holds = false;
  double residual = 0.0;
};

struct RcWitnessResult {
  double r = 0.0;
  /// 2 det(gamma_A + gamma_A,psi)^{-1/2} - 4 det(gamma + gamma_psi)^{-1/2};
  /// negative values certify distillability.
  double value = 0.0;
  /// (n - k_x)(n + k_p) - 1, the large-r limit of the sign of `value` for
  /// symmetric states; n is the mean of n_a and n_b.
  double asymptotic_value = 0.0;
};

/// Parameters of a physical 1x1 CM. Raises kPrecondition for unphysical or
/// non-1x1 input and kNumericalInconsistency if the result does not reproduce
/// det C and det gamma.
StdFormParams standard_form_params(const CorrelationMatrix& gamma);

/// Local symplectic maps bringing a physical 1x1 CM to standard form.
StandardFormResult standard_form_transform(const CorrelationMatrix& gamma);

/// Same construction for any positive-definite 1x1 CM, physical or not
/// (used on Wigner CMs).
StandardFormResult standard_form_transform_unchecked(const CorrelationMatrix& gamma);

WignerParams wigner_params(const CorrelationMatrix& gamma);

/// Builds the standard-form CM with the given parameters (no checks).
CorrelationMatrix standard_form_cm(const StdFormParams& p);
CorrelationMatrix standard_form_cm(const WignerParams& p);

PhysicalCheck check_physical(const StdFormParams& p, double tol = kVerdictTol);

/// Inseparability of a physical state: residual = RHS - LHS of
/// (n_a n_b - k_x^2)(n_a n_b - k_p^2) + 1 < n_a^2 + n_b^2 - 2 k_x k_p.
InequalityCheck check_inseparable(const StdFormParams& p, double tol = kVerdictTol);

/// The same residual evaluated from LLBT-invariant determinants of any 1x1
/// matrix: det A + det B - 2 det C - det gamma - 1. Applies verbatim to
/// Wigner CMs.
double inseparability_residual(const Matrix& two_mode);

bool is_symmetric(const StdFormParams& p, double tol = 1e-8);

/// |n^2 - k_x k_p - 1| < n (k_x - k_p); residual = RHS - LHS.
InequalityCheck check_symmetric_inseparable(double n, double k_x, double k_p,
                                            double tol = kVerdictTol);

/// Two-mode squeezed vacuum: n_a = n_b = cosh 2r, k_x = -k_p = sinh 2r.
CorrelationMatrix tmss_cm(double r);

/// Reduction-criterion expression for the TMSS probe of squeezing r.
RcWitnessResult rc_value(const CorrelationMatrix& gamma_rho, double r);

}  // namespace gdistill
