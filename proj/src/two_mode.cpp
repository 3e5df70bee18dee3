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
#include "gdistill/two_mode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gdistill/errors.hpp"

namespace gdistill {

namespace {

using Mat2 = Eigen::Matrix2d;

void require_one_by_one(const CorrelationMatrix& gamma, const char* what) {
  if (gamma.modes_a() != 1 || gamma.modes_b() != 1) {
    std::ostringstream os;
    os << what << ": expected a 1x1 state, got partition (" << gamma.modes_a() << ", "
       << gamma.modes_b() << ")";
    throw Error(ErrorKind::kInvalidShape, os.str());
  }
}

// Symmetric determinant-one matrix M with M A M = sqrt(det A) I.
Mat2 normalizing_squeeze(const Mat2& block) {
  const Eigen::SelfAdjointEigenSolver<Mat2> solver(block);
  return std::pow(block.determinant(), 0.25) * solver.operatorInverseSqrt();
}

SymplecticMatrix as_symplectic(const Mat2& m) { return SymplecticMatrix(Matrix(m)); }

// Checks the recovered parameters against the invariant determinants.
void check_determinants(const Matrix& gamma, double n_a, double n_b, double k_x,
                        double k_p) {
  const double det_c = gamma.topRightCorner(2, 2).determinant();
  const double det_g = gamma.determinant();
  const double nn = n_a * n_b;
  const double scale = std::max(1.0, nn * nn);
  const double err_c = std::abs(k_x * k_p - det_c);
  const double err_g = std::abs((nn - k_x * k_x) * (nn - k_p * k_p) - det_g);
  if (err_c > 1e-6 * scale || err_g > 1e-6 * scale) {
    std::ostringstream os;
    os << "standard form parameters inconsistent with determinants (|dC| = " << err_c
       << ", |dG| = " << err_g << ")";
    throw Error(ErrorKind::kNumericalInconsistency, os.str());
  }
}

}  // namespace

StandardFormResult standard_form_transform_unchecked(const CorrelationMatrix& gamma) {
  require_one_by_one(gamma, "standard_form_transform");
  const Matrix& g = gamma.matrix();
  const Mat2 a = g.topLeftCorner(2, 2);
  const Mat2 b = g.bottomRightCorner(2, 2);
  const Mat2 c = g.topRightCorner(2, 2);

  // Step 1: A -> n_a I, B -> n_b I.
  const Mat2 m_a = normalizing_squeeze(a);
  const Mat2 m_b = normalizing_squeeze(b);
  const Mat2 c_norm = m_a * c * m_b;

  // Step 2: rotations diagonalizing the cross block (SVD with det +1 factors).
  const Eigen::JacobiSVD<Mat2> svd(c_norm, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat2 u = svd.matrixU();
  Mat2 v = svd.matrixV();
  if (u.determinant() < 0) u.col(1) *= -1.0;
  if (v.determinant() < 0) v.col(1) *= -1.0;
  Mat2 s_a = m_a * u;
  Mat2 s_b = m_b * v;
  Mat2 d = u.transpose() * c_norm * v;

  // Step 3: k_x >= |k_p|. Rotations by pi on B flip both signs; rotation by
  // pi/2 on both sides swaps the q and p entries.
  if (d(0, 0) < 0) {
    s_b *= -1.0;
    d *= -1.0;
  }
  if (std::abs(d(1, 1)) > d(0, 0)) {
    Mat2 quarter;
    quarter << 0.0, -1.0, 1.0, 0.0;
    s_a = s_a * quarter;
    s_b = s_b * quarter;
    d = quarter.transpose() * d * quarter;
    if (d(0, 0) < 0) {
      s_b *= -1.0;
      d *= -1.0;
    }
  }

  StandardFormResult out{as_symplectic(s_a), as_symplectic(s_b), gamma, {}};
  out.gamma_std = apply_local(gamma, out.s_a, out.s_b);
  out.params.n_a = std::sqrt(a.determinant());
  out.params.n_b = std::sqrt(b.determinant());
  out.params.k_x = d(0, 0);
  out.params.k_p = d(1, 1);
  check_determinants(g, out.params.n_a, out.params.n_b, out.params.k_x, out.params.k_p);
  return out;
}

StandardFormResult standard_form_transform(const CorrelationMatrix& gamma) {
  require_one_by_one(gamma, "standard_form_transform");
  if (!validate_physical(gamma).physical) {
    throw Error(ErrorKind::kPrecondition, "standard_form_transform: state is not physical");
  }
  return standard_form_transform_unchecked(gamma);
}

StdFormParams standard_form_params(const CorrelationMatrix& gamma) {
  return standard_form_transform(gamma).params;
}

WignerParams wigner_params(const CorrelationMatrix& gamma) {
  const StdFormParams p = standard_form_transform_unchecked(wigner_cm(gamma)).params;
  return WignerParams{p.n_a, p.n_b, p.k_x, p.k_p};
}

CorrelationMatrix standard_form_cm(const StdFormParams& p) {
  Matrix g = Matrix::Zero(4, 4);
  g(0, 0) = g(1, 1) = p.n_a;
  g(2, 2) = g(3, 3) = p.n_b;
  g(0, 2) = g(2, 0) = p.k_x;
  g(1, 3) = g(3, 1) = p.k_p;
  return CorrelationMatrix(g, 1, 1);
}

CorrelationMatrix standard_form_cm(const WignerParams& p) {
  return standard_form_cm(StdFormParams{p.n_a, p.n_b, p.k_x, p.k_p});
}

PhysicalCheck check_physical(const StdFormParams& p, double tol) {
  const double nn = p.n_a * p.n_b;
  PhysicalCheck out;
  out.residual_det = (nn - p.k_x * p.k_x) * (nn - p.k_p * p.k_p) + 1.0 -
                     (p.n_a * p.n_a + p.n_b * p.n_b + 2.0 * p.k_x * p.k_p);
  out.residual_x = nn - p.k_x * p.k_x - 1.0;
  out.physical = out.residual_det >= -tol && out.residual_x >= -tol;
  return out;
}

InequalityCheck check_inseparable(const StdFormParams& p, double tol) {
  if (!check_physical(p, tol).physical) {
    throw Error(ErrorKind::kPrecondition, "check_inseparable: parameters are not physical");
  }
  const double nn = p.n_a * p.n_b;
  InequalityCheck out;
  out.residual = p.n_a * p.n_a + p.n_b * p.n_b - 2.0 * p.k_x * p.k_p -
                 ((nn - p.k_x * p.k_x) * (nn - p.k_p * p.k_p) + 1.0);
  out.holds = out.residual > tol;
  return out;
}

double inseparability_residual(const Matrix& two_mode) {
  if (two_mode.rows() != 4 || two_mode.cols() != 4) {
    throw Error(ErrorKind::kInvalidShape, "inseparability_residual: expected a 4x4 matrix");
  }
  return two_mode.topLeftCorner(2, 2).determinant() +
         two_mode.bottomRightCorner(2, 2).determinant() -
         2.0 * two_mode.topRightCorner(2, 2).determinant() - two_mode.determinant() - 1.0;
}

bool is_symmetric(const StdFormParams& p, double tol) { return std::abs(p.n_a - p.n_b) <= tol; }

InequalityCheck check_symmetric_inseparable(double n, double k_x, double k_p, double tol) {
  InequalityCheck out;
  out.residual = n * (k_x - k_p) - std::abs(n * n - k_x * k_p - 1.0);
  out.holds = out.residual > tol;
  return out;
}

CorrelationMatrix tmss_cm(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::kInvalidArgument, "tmss_cm: squeezing must be finite and >= 0");
  }
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  return standard_form_cm(StdFormParams{ch, ch, sh, -sh});
}

RcWitnessResult rc_value(const CorrelationMatrix& gamma_rho, double r) {
  require_one_by_one(gamma_rho, "rc_value");
  const StdFormParams p = standard_form_params(gamma_rho);
  const Matrix rho = standard_form_cm(p).matrix();
  const Matrix psi = tmss_cm(r).matrix();

  const double det_local = (rho.topLeftCorner(2, 2) + psi.topLeftCorner(2, 2)).determinant();
  const double det_joint = (rho + psi).determinant();

  RcWitnessResult out;
  out.r = r;
  out.value = 2.0 / std::sqrt(det_local) - 4.0 / std::sqrt(det_joint);
  const double n = 0.5 * (p.n_a + p.n_b);
  out.asymptotic_value = (n - p.k_x) * (n + p.k_p) - 1.0;
  return out;
}

}  // namespace gdistill
