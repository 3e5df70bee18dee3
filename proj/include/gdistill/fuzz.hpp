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
#include <string>
#include <vector>

#include "gdistill/json_io.hpp"

namespace gdistill {

struct FuzzTolerances {
  double verdict = kVerdictTol;
  /// Symplectic eigenvalues and standard-form parameters under conjugation.
  double invariance = 1e-8;
  double involution = 1e-10;
  /// Closed form vs oracle and witness restriction identity.
  double agreement = 1e-10;
  double symmetry = 1e-8;
  double boundary = kBoundaryBand;
};

struct FuzzConfig {
  std::uint64_t seed = 0;
  int trials = 1000;
  int max_modes_a = 4;
  int max_modes_b = 4;
  /// Probability that a trial draws an "entangled" state instead of a
  /// "thermal" one.
  double npt_fraction_target = 0.5;
  FuzzTolerances tolerances;
};

struct InvariantStats {
  std::string name;
  int checked = 0;
  int skipped = 0;
  int violations = 0;
};

struct Violation {
  std::string invariant;
  int trial = 0;
  std::uint64_t trial_seed = 0;
  std::string detail;
  Json state;
};

struct FuzzSummary {
  FuzzConfig config;
  std::vector<InvariantStats> invariants;
  std::vector<Violation> violations;
  int npt_states = 0;
  int distillable = 0;
  int inconclusive = 0;
  double seconds = 0.0;

  bool ok() const { return violations.empty(); }
};

/// Missing keys keep their defaults; unknown keys are rejected.
FuzzConfig parse_fuzz_config(const Json& j);
Json to_json(const FuzzConfig& config);

/// Per-trial seed: trial t always sees the same state regardless of how
/// the campaign is scheduled.
std::uint64_t trial_seed(std::uint64_t master, int trial);

FuzzSummary run_fuzz(const FuzzConfig& config);

Json to_json(const FuzzSummary& summary);

}  // namespace gdistill
