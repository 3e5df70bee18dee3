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
#include "gdistill/distill.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gdistill/errors.hpp"

namespace gdistill {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

ComplexMatrix witness_operator(const CorrelationMatrix& gamma) {
  const Matrix pt_form = partially_transposed_form(gamma.modes_a(), gamma.modes_b());
  return gamma.matrix().cast<std::complex<double>>() - kI * pt_form.cast<std::complex<double>>();
}

double quadratic_form(const ComplexMatrix& op, const ComplexVector& z) {
  return (z.adjoint() * op * z)(0, 0).real();
}

double side_skew(const ComplexVector& z, Eigen::Index start, int modes) {
  if (modes == 0) return 0.0;
  const Vector re = z.segment(start, 2 * modes).real();
  const Vector im = z.segment(start, 2 * modes).imag();
  return re.dot(form_matrix(modes) * im);
}

NptWitness describe(const ComplexVector& raw, const ComplexMatrix& op, int modes_a,
                    int modes_b, int attempt) {
  NptWitness w;
  w.z = raw.normalized();
  w.modes_a = modes_a;
  w.modes_b = modes_b;
  w.margin = quadratic_form(op, w.z);
  w.skew_a = side_skew(w.z, 0, modes_a);
  w.skew_b = side_skew(w.z, 2 * modes_a, modes_b);
  w.attempt = attempt;
  return w;
}

// Deterministic unit vector for perturbation number `index`.
ComplexVector perturbation_direction(Eigen::Index dim, std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), 0x5eedu};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  ComplexVector u(dim);
  for (Eigen::Index k = 0; k < dim; ++k) u(k) = {normal(rng), normal(rng)};
  return u.normalized();
}

constexpr double kSkewFloor = 1e-8;

SymplecticMatrix side_transform(const ComplexVector& z, Eigen::Index start, int modes,
                                double skew) {
  const Vector re = z.segment(start, 2 * modes).real();
  const Vector im = z.segment(start, 2 * modes).imag();
  return extend_to_symplectic_basis(re, -im / skew).as_matrix();
}

Matrix characteristic_from_wigner(const Matrix& w) {
  const int modes = static_cast<int>(w.rows() / 2);
  const Matrix form = form_matrix(modes);
  const Matrix out = form.transpose() * w.inverse() * form;
  return 0.5 * (out + out.transpose());
}

// Exchanges the A and B modes of a 1x1 matrix.
Matrix swap_sides(const Matrix& m) {
  const std::vector<Eigen::Index> order{2, 3, 0, 1};
  return m(order, order);
}

template <typename Fn>
auto run_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e);
  }
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kDistillable: return "DISTILLABLE";
    case Verdict::kNotDistillable: return "NOT_DISTILLABLE";
    case Verdict::kInconclusive: return "INCONCLUSIVE_BOUNDARY";
  }
  return "UNKNOWN";
}

NptWitness find_npt_witness(const CorrelationMatrix& gamma, int attempt, std::uint64_t seed,
                            double tol) {
  if (!is_npt(gamma, tol).npt) {
    throw Error(ErrorKind::kPrecondition, "find_npt_witness: state has positive partial transpose");
  }
  const ComplexMatrix op = witness_operator(gamma);
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op);
  const double epsilon = -solver.eigenvalues()(0);
  const ComplexVector base = solver.eigenvectors().col(0);

  auto admissible = [&](const NptWitness& w) {
    return w.margin < -0.5 * epsilon && std::abs(w.skew_a) > kSkewFloor &&
           std::abs(w.skew_b) > kSkewFloor;
  };

  if (attempt == 0) {
    NptWitness w = describe(base, op, gamma.modes_a(), gamma.modes_b(), 0);
    if (admissible(w)) return w;
  }
  const int first = std::max(attempt, 1);
  for (int k = first; k < first + kMaxWitnessRetries; ++k) {
    const double delta = 1e-4 * base.norm();
    const ComplexVector z = base + delta * perturbation_direction(base.size(), seed, k);
    NptWitness w = describe(z, op, gamma.modes_a(), gamma.modes_b(), k);
    if (admissible(w)) return w;
  }
  std::ostringstream os;
  const NptWitness w = describe(base, op, gamma.modes_a(), gamma.modes_b(), 0);
  os << "find_npt_witness: no admissible witness after " << kMaxWitnessRetries
     << " perturbations (margin " << w.margin << ", skews " << w.skew_a << ", " << w.skew_b
     << ")";
  throw Error(ErrorKind::kDegeneracy, os.str());
}

ConcentrationResult concentrate(const CorrelationMatrix& gamma, const NptWitness& witness,
                                double tol) {
  if (witness.z.size() != gamma.dim() || witness.modes_a != gamma.modes_a() ||
      witness.modes_b != gamma.modes_b()) {
    throw Error(ErrorKind::kInvalidShape, "concentrate: witness does not match the state");
  }
  if (gamma.modes_a() < 1 || gamma.modes_b() < 1) {
    throw Error(ErrorKind::kInvalidArgument, "concentrate: both sides need at least one mode");
  }
  const double floor = kSkewFloor * witness.z.squaredNorm();
  if (!(witness.margin < 0.0) || std::abs(witness.skew_a) <= floor ||
      std::abs(witness.skew_b) <= floor) {
    throw Error(ErrorKind::kPrecondition,
                "concentrate: witness has non-negative margin or skew-orthogonal parts");
  }

  const int na = gamma.modes_a();
  const int nb = gamma.modes_b();
  SymplecticMatrix s_a = side_transform(witness.z, 0, na, witness.skew_a);
  SymplecticMatrix s_b = side_transform(witness.z, 2 * na, nb, witness.skew_b);
  const CorrelationMatrix transformed = apply_local(gamma, s_a, s_b);

  const Matrix inverse = direct_sum(s_a.inverse(), s_b.inverse()).matrix();
  const ComplexVector z_hat = inverse.cast<std::complex<double>>() * witness.z;

  const std::vector<Eigen::Index> kept{0, 1, 2 * na, 2 * na + 1};
  ComplexVector outside = z_hat;
  for (Eigen::Index k : kept) outside(k) = 0.0;
  const ComplexVector z_red = z_hat(kept);

  const int first_mode[] = {0};
  CorrelationMatrix reduced = reduce_to_modes(transformed, first_mode, first_mode);

  ConcentrationResult out{std::move(s_a), std::move(s_b), reduced, z_hat, 0.0, 0.0, 0.0};
  out.support_leakage = outside.norm() / z_hat.norm();
  out.form_full = quadratic_form(witness_operator(transformed), z_hat);
  out.form_reduced = quadratic_form(witness_operator(reduced), z_red);

  if (out.support_leakage > 1e-6) {
    std::ostringstream os;
    os << "concentrate: witness support leaks outside the first modes (" << out.support_leakage
       << ")";
    throw Error(ErrorKind::kConcentrationFailure, os.str());
  }
  if (!is_npt(reduced, tol).npt) {
    throw Error(ErrorKind::kConcentrationFailure, "concentrate: reduced 1x1 state is PPT");
  }
  return out;
}

ConcentrationStage concentrate_with_retry(const CorrelationMatrix& gamma, int max_retries,
                                          std::uint64_t seed, double tol) {
  for (int attempt = 0;; ++attempt) {
    NptWitness witness = find_npt_witness(gamma, attempt, seed, tol);
    try {
      ConcentrationResult result = concentrate(gamma, witness, tol);
      return ConcentrationStage{std::move(witness), std::move(result), attempt};
    } catch (const Error& e) {
      const bool retryable = e.kind() == ErrorKind::kConcentrationFailure ||
                             e.kind() == ErrorKind::kDegeneracy;
      if (!retryable || attempt >= max_retries) throw;
    }
  }
}

Matrix post_measurement_wigner_cm(const WignerParams& w, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double nu = s * s * w.n_b + c * c;
  const double dx = w.d_x();

  Matrix out = Matrix::Zero(4, 4);
  out(0, 0) = (c * c * w.n_a + s * s * dx) / nu;
  out(1, 1) = (c * c * w.n_a + s * s * w.n_a * w.n_b) / nu;
  out(2, 2) = w.n_b / nu;
  out(3, 3) = c * c * w.n_b + s * s;
  out(0, 2) = out(2, 0) = c * w.k_x / nu;
  out(1, 3) = out(3, 1) = c * w.k_p;
  return out;
}

Matrix post_measurement_wigner_cm_oracle(const WignerParams& w, double theta) {
  const CorrelationMatrix state = wigner_cm(standard_form_cm(w));
  const CorrelationMatrix ancilla(Matrix::Identity(2, 2), 0, 1);
  const CorrelationMatrix joint = direct_sum(state, ancilla);

  // Beam splitter between B (mode 1) and the ancilla (mode 2).
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix bs = Matrix::Identity(6, 6);
  for (int quadrature = 0; quadrature < 2; ++quadrature) {
    const int b = 2 + quadrature;
    const int anc = 4 + quadrature;
    bs(b, b) = c;
    bs(b, anc) = s;
    bs(anc, b) = -s;
    bs(anc, anc) = c;
  }
  const CorrelationMatrix mixed = apply_symplectic(joint, SymplecticMatrix(bs));
  const CorrelationMatrix conditioned = condition_on_x_measurement(mixed, 2);
  return wigner_cm(conditioned).matrix();
}

double symmetrizing_angle(const WignerParams& w) {
  const double numerator = w.n_a * w.n_a - w.n_b * w.n_b;
  const double denominator = w.n_b - w.d_x() * w.n_a;
  if (!(numerator > 0.0) || !(denominator > 0.0)) {
    std::ostringstream os;
    os << "symmetrizing_angle: tan^2 theta = " << numerator << " / " << denominator
       << " is not positive";
    throw Error(ErrorKind::kInternalConsistency, os.str());
  }
  return std::atan(std::sqrt(numerator / denominator));
}

SymmetrizationReport symmetrize(const CorrelationMatrix& gamma, double tol) {
  if (gamma.modes_a() != 1 || gamma.modes_b() != 1) {
    throw Error(ErrorKind::kInvalidShape, "symmetrize: expected a 1x1 state");
  }
  if (!is_npt(gamma, tol).npt) {
    throw Error(ErrorKind::kPrecondition, "symmetrize: state has positive partial transpose");
  }

  const StdFormParams sf = standard_form_transform_unchecked(wigner_cm(gamma)).params;
  WignerParams w{sf.n_a, sf.n_b, sf.k_x, sf.k_p};
  const Matrix wigner_std = standard_form_cm(w).matrix();

  SymmetrizationReport report{0.0, false, gamma, w, wigner_std, 0.0, 0.0, 1.0};
  report.insep_residual_in = inseparability_residual(wigner_std);

  Matrix wigner_out = wigner_std;
  if (std::abs(w.n_a - w.n_b) > 1e-12 * std::max(1.0, w.n_a)) {
    // The ancilla couples to the hotter side, which has the smaller Wigner
    // parameter; relabel so that it is B.
    if (w.n_a < w.n_b) {
      std::swap(w.n_a, w.n_b);
      report.swapped_sides = true;
    }
    report.theta = symmetrizing_angle(w);
    report.wigner_in = w;
    report.wigner_out = post_measurement_wigner_cm(w, report.theta);
    const double t = std::tan(report.theta);
    report.scale_factor = 1.0 / (w.n_b * t * t + 1.0);
    wigner_out = report.swapped_sides ? swap_sides(report.wigner_out) : report.wigner_out;
  }
  report.insep_residual_out = inseparability_residual(report.wigner_out);
  report.gamma_out = CorrelationMatrix(characteristic_from_wigner(wigner_out), 1, 1);

  const StdFormParams out = standard_form_params(report.gamma_out);
  if (!is_symmetric(out, 1e-8 * std::max(1.0, out.n_a))) {
    std::ostringstream os;
    os << "symmetrize: output is not symmetric (n_a = " << out.n_a << ", n_b = " << out.n_b
       << ")";
    throw Error(ErrorKind::kInternalConsistency, os.str());
  }
  if (!is_npt(report.gamma_out, tol).npt) {
    throw Error(ErrorKind::kInternalConsistency, "symmetrize: output lost its NPT property");
  }
  const double expected = report.insep_residual_in * report.scale_factor;
  if (std::abs(report.insep_residual_out - expected) >
      1e-8 * std::max(1.0, std::abs(expected))) {
    std::ostringstream os;
    os << "symmetrize: inseparability residual " << report.insep_residual_out
       << " does not match the scaled input " << expected;
    throw Error(ErrorKind::kInternalConsistency, os.str());
  }
  return report;
}

PipelineReport distill_pipeline(const CorrelationMatrix& gamma, const PipelineOptions& options) {
  PipelineReport report;
  report.modes_a = gamma.modes_a();
  report.modes_b = gamma.modes_b();

  report.npt = run_stage("npt_check", [&] {
    const PhysicalityVerdict phys = validate_physical(gamma, options.tol);
    if (!phys.physical) {
      std::ostringstream os;
      os << "state is not physical (min symplectic eigenvalue "
         << phys.min_symplectic_eigenvalue << ")";
      throw Error(ErrorKind::kPrecondition, os.str());
    }
    return is_npt(gamma, options.tol);
  });

  const double distance = report.npt.min_pt_symplectic_eigenvalue - 1.0;
  if (!report.npt.npt) {
    report.verdict = Verdict::kNotDistillable;
    return report;
  }
  // NPT at the verdict tolerance but too close to the threshold to trust.
  if (-distance < options.boundary_band) {
    report.verdict = Verdict::kInconclusive;
    return report;
  }

  // Witness and concentration are retried together; failures of the witness
  // search itself are reported under "witness".
  for (int attempt = 0;; ++attempt) {
    NptWitness witness = run_stage("witness", [&] {
      return find_npt_witness(gamma, attempt, options.seed, options.tol);
    });
    try {
      report.concentration = concentrate(gamma, witness, options.tol);
      report.witness = std::move(witness);
      report.witness_retries = attempt;
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kConcentrationFailure || attempt >= options.max_witness_retries) {
        throw StageError("concentrate", e);
      }
    }
  }

  report.standard_form = run_stage("standard_form", [&] {
    StandardFormResult sf = standard_form_transform(report.concentration->gamma_red);
    if (!is_npt(sf.gamma_std, options.tol).npt) {
      throw Error(ErrorKind::kInternalConsistency, "standard form lost the NPT property");
    }
    return sf;
  });

  report.symmetrization =
      run_stage("symmetrize", [&] { return symmetrize(report.standard_form->gamma_std, options.tol); });

  run_stage("rc_witness", [&] {
    const CorrelationMatrix& sym = report.symmetrization->gamma_out;
    report.final_params = standard_form_params(sym);
    for (int r = 1; r <= options.r_max; ++r) {
      report.rc_sweep.push_back(rc_value(sym, static_cast<double>(r)));
      if (report.rc_sweep.back().value < 0.0) report.rc_certified = true;
    }
    if (!report.rc_sweep.empty()) report.rc = report.rc_sweep.back();
    const double n = 0.5 * (report.final_params->n_a + report.final_params->n_b);
    const double limit =
        (n - report.final_params->k_x) * (n + report.final_params->k_p) - 1.0;
    if (!(limit < options.tol)) {
      std::ostringstream os;
      os << "symmetric NPT state violates (n - k_x)(n + k_p) < 1: value " << limit + 1.0;
      throw Error(ErrorKind::kInternalConsistency, os.str());
    }
    return 0;
  });

  report.verdict = Verdict::kDistillable;
  return report;
}

}  // namespace gdistill
