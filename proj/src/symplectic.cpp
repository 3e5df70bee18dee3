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
#include "gdistill/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "gdistill/errors.hpp"

namespace gdistill {

namespace {

void require_even_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a square matrix of even dimension, got "
       << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::kInvalidShape, os.str());
  }
}

// Rounding in S^T J S grows with the square of the entries of S.
double scaled_tol(const Matrix& s, double tol) {
  const double scale = s.cwiseAbs().maxCoeff();
  return tol * std::max(1.0, scale * scale);
}

double skew(const Matrix& form, const Vector& u, const Vector& v) {
  return u.dot(form * v);
}

}  // namespace

SymplecticForm::SymplecticForm(int modes) : modes_(modes) {
  if (modes < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "symplectic form needs at least one mode, got " +
                    std::to_string(modes));
  }
  matrix_ = Matrix::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    matrix_(2 * k, 2 * k + 1) = -1.0;
    matrix_(2 * k + 1, 2 * k) = 1.0;
  }
}

SymplecticForm make_form(int modes) { return SymplecticForm(modes); }

Matrix form_matrix(int modes) { return SymplecticForm(modes).matrix(); }

bool is_symplectic(const Matrix& s, double tol) {
  require_even_square(s, "is_symplectic");
  const Matrix j = form_matrix(static_cast<int>(s.rows() / 2));
  return (s.transpose() * j * s - j).cwiseAbs().maxCoeff() <= tol;
}

SymplecticMatrix::SymplecticMatrix(Matrix entries, double tol)
    : entries_(std::move(entries)) {
  require_even_square(entries_, "SymplecticMatrix");
  if (!is_symplectic(entries_, scaled_tol(entries_, tol))) {
    const Matrix j = form_matrix(modes());
    std::ostringstream os;
    os << "matrix is not symplectic: max |S^T J S - J| = "
       << (entries_.transpose() * j * entries_ - j).cwiseAbs().maxCoeff();
    throw Error(ErrorKind::kPrecondition, os.str());
  }
}

SymplecticMatrix SymplecticMatrix::identity(int modes) {
  if (modes < 1) {
    throw Error(ErrorKind::kInvalidArgument, "identity needs at least one mode");
  }
  return SymplecticMatrix(Matrix::Identity(2 * modes, 2 * modes), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const Matrix j = form_matrix(modes());
  return SymplecticMatrix(Matrix(j.transpose() * entries_.transpose() * j),
                          Unchecked{});
}

SymplecticMatrix SymplecticMatrix::transpose() const {
  return SymplecticMatrix(Matrix(entries_.transpose()), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& rhs) const {
  if (rhs.modes() != modes()) {
    throw Error(ErrorKind::kInvalidShape, "mode count mismatch in product");
  }
  return SymplecticMatrix(Matrix(entries_ * rhs.entries_), Unchecked{});
}

SymplecticMatrix direct_sum(const SymplecticMatrix& a, const SymplecticMatrix& b) {
  const Eigen::Index da = a.matrix().rows();
  const Eigen::Index db = b.matrix().rows();
  Matrix out = Matrix::Zero(da + db, da + db);
  out.topLeftCorner(da, da) = a.matrix();
  out.bottomRightCorner(db, db) = b.matrix();
  return SymplecticMatrix(std::move(out));
}

std::vector<double> symplectic_eigenvalues(const Matrix& gamma) {
  require_even_square(gamma, "symplectic_eigenvalues");
  const Eigen::Index dim = gamma.rows();
  if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() >
      1e-9 * std::max(1.0, gamma.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::kDomain, "symplectic_eigenvalues: matrix is not symmetric");
  }
  const Eigen::LLT<Matrix> llt(gamma);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::kDomain,
                "symplectic_eigenvalues: matrix is not positive definite");
  }
  const Matrix lower = llt.matrixL();
  const Matrix skew_part = lower.transpose() * form_matrix(static_cast<int>(dim / 2)) * lower;
  const ComplexMatrix hermitian = std::complex<double>(0.0, 1.0) * skew_part.cast<std::complex<double>>();
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  const Vector& spectrum = solver.eigenvalues();  // ascending
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(dim / 2));
  for (Eigen::Index k = dim / 2; k < dim; ++k) out.push_back(spectrum(k));
  return out;
}

SymplecticBasis extend_to_symplectic_basis(const Vector& f1, const Vector& f2,
                                           double tol) {
  if (f1.size() != f2.size() || f1.size() % 2 != 0 || f1.size() == 0) {
    throw Error(ErrorKind::kInvalidShape,
                "extend_to_symplectic_basis: vectors must share an even length");
  }
  const int modes = static_cast<int>(f1.size() / 2);
  const Matrix j = form_matrix(modes);
  const double pairing = skew(j, f2, f1);
  if (std::abs(pairing - 1.0) > tol) {
    std::ostringstream os;
    os << "extend_to_symplectic_basis: need f2^T J f1 = 1, got " << pairing;
    throw Error(ErrorKind::kPrecondition, os.str());
  }

  constexpr double kResidualFloor = 1e-8;
  Matrix basis = Matrix::Zero(2 * modes, 2 * modes);
  basis.col(0) = f1;
  basis.col(1) = f2;

  // Removes the skew projections on the first `pairs` pairs. With
  // v^T J u = 1 the update w - (v^T J w) u + (u^T J w) v is skew-orthogonal
  // to both u and v. Two sweeps keep the rounding at the level of one.
  auto project = [&](Vector w, int pairs) {
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (int k = 0; k < pairs; ++k) {
        const Vector u = basis.col(2 * k);
        const Vector v = basis.col(2 * k + 1);
        const double a = skew(j, v, w);
        const double b = skew(j, u, w);
        w += -a * u + b * v;
      }
    }
    return w;
  };

  for (int pairs = 1; pairs < modes; ++pairs) {
    Vector best_u;
    double best_norm = 0.0;
    for (int c = 0; c < 2 * modes; ++c) {
      Vector w = project(Vector::Unit(2 * modes, c), pairs);
      const double norm = w.norm();
      if (norm >= kResidualFloor && norm > best_norm) {
        best_norm = norm;
        best_u = std::move(w);
      }
    }
    if (best_norm == 0.0) {
      throw Error(ErrorKind::kDegeneracy,
                  "extend_to_symplectic_basis: no candidate survives projection");
    }
    const Vector u = best_u / best_norm;

    Vector best_v;
    double best_pair = 0.0;
    for (int c = 0; c < 2 * modes; ++c) {
      Vector w = project(Vector::Unit(2 * modes, c), pairs);
      if (w.norm() < kResidualFloor) continue;
      const double s = skew(j, w, u);
      if (std::abs(s) >= kResidualFloor && std::abs(s) > std::abs(best_pair)) {
        best_pair = s;
        best_v = std::move(w);
      }
    }
    if (best_pair == 0.0) {
      throw Error(ErrorKind::kDegeneracy,
                  "extend_to_symplectic_basis: no candidate pairs with the new vector");
    }
    basis.col(2 * pairs) = u;
    basis.col(2 * pairs + 1) = best_v / best_pair;
  }

  if (!is_symplectic(basis, scaled_tol(basis, tol))) {
    throw Error(ErrorKind::kDegeneracy,
                "extend_to_symplectic_basis: completed basis violates the pairing relations");
  }
  return SymplecticBasis(std::move(basis));
}

SymplecticMatrix random_symplectic(int modes, std::uint64_t seed, double strength) {
  if (modes < 1) {
    throw Error(ErrorKind::kInvalidArgument, "random_symplectic needs at least one mode");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  const int dim = 2 * modes;
  const double scale = strength / std::sqrt(static_cast<double>(dim));
  Matrix h(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = r; c < dim; ++c) {
      h(r, c) = h(c, r) = scale * uniform(rng);
    }
  }
  const Matrix generator = form_matrix(modes) * h;
  return SymplecticMatrix(Matrix(generator.exp()));
}

}  // namespace gdistill
