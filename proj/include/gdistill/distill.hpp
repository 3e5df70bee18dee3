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

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gdistill/gaussian_cm.hpp"
#include "gdistill/two_mode.hpp"

namespace gdistill {

/// Largest number of witness perturbations tried before giving up.
inline constexpr int kMaxWitnessRetries = 32;

/// States whose partially transposed minimum symplectic eigenvalue lies
/// within this distance of one are reported as inconclusive.
inline constexpr double kBoundaryBand = 1e-7;

/// Complex vector z with z^dagger (gamma - i J~) z < 0, split z = z_A ⊕ z_B.
struct NptWitness {
  ComplexVector z;
  int modes_a = 0;
  int modes_b = 0;
  /// z^dagger (gamma - i J~) z for the unit-norm z.
  double margin = 0.0;
  /// Re(z_A)^T J Im(z_A) and the same for B.
  double skew_a = 0.0;
  double skew_b = 0.0;
  /// 0 for the raw eigenvector, otherwise the perturbation schedule index.
  int attempt = 0;
};

struct ConcentrationResult {
  SymplecticMatrix s_a;
  SymplecticMatrix s_b;
  CorrelationMatrix gamma_red;
  /// (S_A^{-1} ⊕ S_B^{-1}) z; supported on the first mode of each side.
  ComplexVector z_hat;
  /// Norm of z_hat outside the kept modes relative to |z_hat|.
  double support_leakage = 0.0;
  /// Witness quadratic form on the full transformed CM and on gamma_red.
  double form_full = 0.0;
  double form_reduced = 0.0;
};

struct SymmetrizationReport {
  double theta = 0.0;
  bool swapped_sides = false;
  CorrelationMatrix gamma_out;
  /// Wigner standard form parameters before the measurement, in the labels
  /// used for the computation (after any side swap).
  WignerParams wigner_in;
  /// Closed-form post-measurement Wigner CM, same labels as `wigner_in`.
  Matrix wigner_out;
  double insep_residual_in = 0.0;
  double insep_residual_out = 0.0;
  /// (N_b tan^2 theta + 1)^{-1}.
  double scale_factor = 1.0;
};

enum class Verdict { kDistillable, kNotDistillable, kInconclusive };

std::string_view to_string(Verdict v);

struct PipelineOptions {
  double tol = kVerdictTol;
  double boundary_band = kBoundaryBand;
  int r_max = 8;
  std::uint64_t seed = 0;
  int max_witness_retries = kMaxWitnessRetries;
};

struct ConcentrationStage {
  NptWitness witness;
  ConcentrationResult result;
  int retries = 0;
};

struct PipelineReport {
  int modes_a = 0;
  int modes_b = 0;
  NptVerdict npt;
  Verdict verdict = Verdict::kNotDistillable;
  std::optional<NptWitness> witness;
  std::optional<ConcentrationResult> concentration;
  int witness_retries = 0;
  std::optional<StandardFormResult> standard_form;
  std::optional<SymmetrizationReport> symmetrization;
  std::optional<StdFormParams> final_params;
  /// Reduction-criterion values for r = 1, ..., r_max.
  std::vector<RcWitnessResult> rc_sweep;
  /// Value at r = r_max.
  std::optional<RcWitnessResult> rc;
  /// True if some r in the sweep gives a negative value.
  bool rc_certified = false;
};

/// Eigenvector of gamma - i J~ for its lowest eigenvalue, perturbed when a
/// per-side skew product falls below 1e-8 |z|^2. `attempt` > 0 forces the
/// perturbation with that schedule index. Raises kPrecondition for PPT input
/// and kDegeneracy when no admissible perturbation is found.
NptWitness find_npt_witness(const CorrelationMatrix& gamma, int attempt = 0,
                            std::uint64_t seed = 0, double tol = kVerdictTol);

/// Local symplectic maps sending the witness onto the first mode of each
/// side, followed by discarding all other modes.
ConcentrationResult concentrate(const CorrelationMatrix& gamma, const NptWitness& witness,
                                double tol = kVerdictTol);

/// find_npt_witness + concentrate, retrying with fresh perturbations on
/// concentration failure.
ConcentrationStage concentrate_with_retry(const CorrelationMatrix& gamma,
                                          int max_retries = kMaxWitnessRetries,
                                          std::uint64_t seed = 0, double tol = kVerdictTol);

/// Post-measurement Wigner CM for a state in Wigner standard form whose B
/// mode is mixed with a vacuum ancilla at transmittivity cos^2 theta, after
/// the ancilla's X quadrature is measured.
Matrix post_measurement_wigner_cm(const WignerParams& w, double theta);

/// The same quantity computed by the generic route: characteristic CM of
/// the state ⊕ vacuum ancilla, beam splitter, condition_on_x_measurement,
/// back to the Wigner picture.
Matrix post_measurement_wigner_cm_oracle(const WignerParams& w, double theta);

/// Beam-splitter angle in (0, pi/2) equalizing the local determinants;
/// requires n_b < n_a. Raises kInternalConsistency if the ratio is not
/// positive.
double symmetrizing_angle(const WignerParams& w);

/// Symmetrizes a 1x1 NPT state by the ancilla, beam splitter and homodyne
/// construction applied to the hotter side.
SymmetrizationReport symmetrize(const CorrelationMatrix& gamma, double tol = kVerdictTol);

/// Full decision procedure. Raises StageError tagged with the stage label.
PipelineReport distill_pipeline(const CorrelationMatrix& gamma,
                                const PipelineOptions& options = {});

}  // namespace gdistill
