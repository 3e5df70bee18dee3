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
#include "gdistill/gaussian_cm.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "gdistill/errors.hpp"

namespace gdistill {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double min_eigenvalue(const Matrix& symmetric) {
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

void require_well_conditioned(const Matrix& gamma, const char* what) {
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(gamma, Eigen::EigenvaluesOnly);
  const Vector& ev = solver.eigenvalues();
  const double cond = ev(ev.size() - 1) / ev(0);
  if (!(ev(0) > 0.0) || cond > kMaxConditionNumber) {
    std::ostringstream os;
    os << what << ": condition number " << cond << " exceeds " << kMaxConditionNumber;
    throw Error(ErrorKind::kIllConditioned, os.str());
  }
}

// J^T gamma^{-1} J for any positive-definite gamma.
Matrix conjugated_inverse(const Matrix& gamma, const Matrix& form) {
  const Matrix inv = gamma.llt().solve(Matrix::Identity(gamma.rows(), gamma.cols()));
  const Matrix out = form.transpose() * inv * form;
  return 0.5 * (out + out.transpose());
}

std::vector<Eigen::Index> mode_coordinates(std::span<const int> modes, int offset) {
  std::vector<Eigen::Index> idx;
  idx.reserve(modes.size() * 2);
  for (int m : modes) {
    idx.push_back(2 * (offset + m));
    idx.push_back(2 * (offset + m) + 1);
  }
  return idx;
}

}  // namespace

CorrelationMatrix::CorrelationMatrix(const Matrix& entries, int modes_a, int modes_b)
    : modes_a_(modes_a), modes_b_(modes_b) {
  if (modes_a < 0 || modes_b < 0 || modes_a + modes_b == 0) {
    std::ostringstream os;
    os << "invalid partition (" << modes_a << ", " << modes_b << ")";
    throw Error(ErrorKind::kInvalidArgument, os.str());
  }
  const Eigen::Index dim = 2 * (modes_a + modes_b);
  if (entries.rows() != dim || entries.cols() != dim) {
    std::ostringstream os;
    os << "correlation matrix for partition (" << modes_a << ", " << modes_b
       << ") must be " << dim << "x" << dim << ", got " << entries.rows() << "x"
       << entries.cols();
    throw Error(ErrorKind::kInvalidShape, os.str());
  }
  if (!entries.allFinite()) {
    throw Error(ErrorKind::kDomain, "correlation matrix has non-finite entries");
  }
  const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
  const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * scale) {
    std::ostringstream os;
    os << "correlation matrix is not symmetric (max asymmetry " << asym << ")";
    throw Error(ErrorKind::kDomain, os.str());
  }
  entries_ = 0.5 * (entries + entries.transpose());
  if (entries_.llt().info() != Eigen::Success) {
    throw Error(ErrorKind::kDomain, "correlation matrix is not positive definite");
  }
}

GaussianState::GaussianState(CorrelationMatrix gamma_in, Vector displacement_in)
    : gamma(std::move(gamma_in)), displacement(std::move(displacement_in)) {
  if (displacement.size() != gamma.dim()) {
    throw Error(ErrorKind::kInvalidShape, "displacement length does not match the CM");
  }
}

GaussianState::GaussianState(CorrelationMatrix gamma_in)
    : gamma(std::move(gamma_in)), displacement(Vector::Zero(gamma.dim())) {}

Matrix partially_transposed_form(int modes_a, int modes_b) {
  Matrix form = form_matrix(modes_a + modes_b);
  form.bottomRightCorner(2 * modes_b, 2 * modes_b) *= -1.0;
  return form;
}

std::vector<double> symplectic_eigenvalues(const CorrelationMatrix& gamma) {
  return symplectic_eigenvalues(gamma.matrix());
}

PhysicalityVerdict validate_physical(const CorrelationMatrix& gamma, double tol) {
  require_well_conditioned(gamma.matrix(), "validate_physical");
  const Matrix form = form_matrix(gamma.modes());
  PhysicalityVerdict verdict;
  verdict.margin = min_eigenvalue(gamma.matrix() - conjugated_inverse(gamma.matrix(), form));
  verdict.min_symplectic_eigenvalue = symplectic_eigenvalues(gamma).front();
  verdict.physical = verdict.min_symplectic_eigenvalue >= 1.0 - tol;
  verdict.criteria_agree = (verdict.margin >= -tol) == verdict.physical;
  return verdict;
}

CorrelationMatrix partial_transpose(const CorrelationMatrix& gamma) {
  Matrix out = gamma.matrix();
  for (int k = 0; k < gamma.modes_b(); ++k) {
    const Eigen::Index p = 2 * (gamma.modes_a() + k) + 1;
    out.row(p) *= -1.0;
    out.col(p) *= -1.0;
  }
  return CorrelationMatrix(out, gamma.modes_a(), gamma.modes_b());
}

NptVerdict is_npt(const CorrelationMatrix& gamma, double tol) {
  const PhysicalityVerdict phys = validate_physical(gamma, tol);
  if (!phys.physical) {
    std::ostringstream os;
    os << "is_npt: state is not physical (min symplectic eigenvalue "
       << phys.min_symplectic_eigenvalue << ")";
    throw Error(ErrorKind::kPrecondition, os.str());
  }
  const Matrix pt_form = partially_transposed_form(gamma.modes_a(), gamma.modes_b());
  const ComplexMatrix hermitian =
      gamma.matrix().cast<std::complex<double>>() - kI * pt_form.cast<std::complex<double>>();
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues()(0);

  NptVerdict verdict;
  verdict.margin = std::min(lowest, 0.0);
  verdict.min_pt_symplectic_eigenvalue = symplectic_eigenvalues(partial_transpose(gamma)).front();
  verdict.npt = verdict.min_pt_symplectic_eigenvalue < 1.0 - tol;

  const double inverse_form =
      min_eigenvalue(gamma.matrix() - conjugated_inverse(gamma.matrix(), pt_form));
  verdict.criteria_agree =
      ((lowest < -tol) == verdict.npt) && ((inverse_form < -tol) == verdict.npt);
  return verdict;
}

CorrelationMatrix wigner_cm(const CorrelationMatrix& gamma) {
  require_well_conditioned(gamma.matrix(), "wigner_cm");
  return CorrelationMatrix(conjugated_inverse(gamma.matrix(), form_matrix(gamma.modes())),
                           gamma.modes_a(), gamma.modes_b());
}

CorrelationMatrix reduce_to_modes(const CorrelationMatrix& gamma,
                                  std::span<const int> keep_a,
                                  std::span<const int> keep_b) {
  if (keep_a.empty() && keep_b.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "reduce_to_modes: nothing to keep");
  }
  auto check = [](std::span<const int> keep, int limit, const char* side) {
    std::set<int> seen;
    for (int m : keep) {
      if (m < 0 || m >= limit || !seen.insert(m).second) {
        std::ostringstream os;
        os << "reduce_to_modes: invalid or repeated " << side << " mode index " << m;
        throw Error(ErrorKind::kInvalidArgument, os.str());
      }
    }
  };
  check(keep_a, gamma.modes_a(), "A");
  check(keep_b, gamma.modes_b(), "B");

  std::vector<Eigen::Index> idx = mode_coordinates(keep_a, 0);
  const std::vector<Eigen::Index> idx_b = mode_coordinates(keep_b, gamma.modes_a());
  idx.insert(idx.end(), idx_b.begin(), idx_b.end());
  return CorrelationMatrix(gamma.matrix()(idx, idx), static_cast<int>(keep_a.size()),
                           static_cast<int>(keep_b.size()));
}

CorrelationMatrix condition_on_x_measurement(const CorrelationMatrix& gamma,
                                             int measured_mode) {
  if (measured_mode < 0 || measured_mode >= gamma.modes()) {
    throw Error(ErrorKind::kInvalidArgument,
                "condition_on_x_measurement: mode index out of range");
  }
  if (gamma.modes() < 2) {
    throw Error(ErrorKind::kInvalidArgument,
                "condition_on_x_measurement: no mode left after measurement");
  }
  if (!validate_physical(gamma).physical) {
    throw Error(ErrorKind::kPrecondition, "condition_on_x_measurement: state is not physical");
  }
  const Eigen::Index q = 2 * measured_mode;
  if (gamma(q, q) < 1e-12) {
    throw Error(ErrorKind::kDegenerateMeasurement,
                "condition_on_x_measurement: measured quadrature has vanishing variance");
  }

  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < gamma.dim(); ++i) {
    if (i / 2 != measured_mode) kept.push_back(i);
  }
  const std::vector<Eigen::Index> measured{q, q + 1};
  const Matrix block = gamma.matrix()(kept, kept);
  const Matrix cross = gamma.matrix()(kept, measured);

  Matrix projected = gamma.matrix()(measured, measured);
  projected.row(1).setZero();
  projected.col(1).setZero();
  const Eigen::JacobiSVD<Matrix> svd(projected, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  Vector inv_sv = Vector::Zero(sv.size());
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > 1e-12 * sv(0)) inv_sv(k) = 1.0 / sv(k);
  }
  const Matrix pinv = svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();

  const bool on_a = measured_mode < gamma.modes_a();
  return CorrelationMatrix(block - cross * pinv * cross.transpose(),
                           gamma.modes_a() - (on_a ? 1 : 0),
                           gamma.modes_b() - (on_a ? 0 : 1));
}

CorrelationMatrix apply_local(const CorrelationMatrix& gamma, const SymplecticMatrix& s_a,
                              const SymplecticMatrix& s_b) {
  if (s_a.modes() != gamma.modes_a() || s_b.modes() != gamma.modes_b()) {
    throw Error(ErrorKind::kInvalidShape, "apply_local: transformation does not match partition");
  }
  return apply_symplectic(gamma, direct_sum(s_a, s_b));
}

CorrelationMatrix apply_symplectic(const CorrelationMatrix& gamma, const SymplecticMatrix& s) {
  if (s.matrix().rows() != gamma.dim()) {
    throw Error(ErrorKind::kInvalidShape, "apply_symplectic: dimension mismatch");
  }
  return CorrelationMatrix(s.matrix().transpose() * gamma.matrix() * s.matrix(),
                           gamma.modes_a(), gamma.modes_b());
}

CorrelationMatrix direct_sum(const CorrelationMatrix& first, const CorrelationMatrix& second) {
  const Eigen::Index d1 = first.dim();
  const Eigen::Index d2 = second.dim();
  Matrix stacked = Matrix::Zero(d1 + d2, d1 + d2);
  stacked.topLeftCorner(d1, d1) = first.matrix();
  stacked.bottomRightCorner(d2, d2) = second.matrix();

  // Reorder (A1, B1, A2, B2) -> (A1, A2, B1, B2).
  std::vector<Eigen::Index> order;
  auto append = [&order](Eigen::Index start, int modes) {
    for (Eigen::Index i = 0; i < 2 * modes; ++i) order.push_back(start + i);
  };
  append(0, first.modes_a());
  append(d1, second.modes_a());
  append(2 * first.modes_a(), first.modes_b());
  append(d1 + 2 * second.modes_a(), second.modes_b());
  return CorrelationMatrix(stacked(order, order), first.modes_a() + second.modes_a(),
                           first.modes_b() + second.modes_b());
}

}  // namespace gdistill
