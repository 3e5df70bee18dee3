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

#include "gdistill/gaussian_cm.hpp"

namespace gdistill {

/// thermal: thermal state of a random quadratic Hamiltonian, gamma = S^T D S
///   with a global random symplectic S; may or may not be NPT.
/// entangled: a noisy two-mode squeezed pair between the first A and first B
///   mode, thermal padding, then weak global and strong local scrambling.
/// boundary: a symmetric 1x1 core whose partially transposed symplectic
///   eigenvalue is within 1e-3 of one, padded and locally scrambled.
enum class StateKind { kThermal, kEntangled, kBoundary };

std::string_view to_string(StateKind kind);
std::optional<StateKind> parse_state_kind(std::string_view name);

/// Deterministic in (modes_a, modes_b, seed, kind); always physical.
GaussianState random_state(int modes_a, int modes_b, std::uint64_t seed, StateKind kind);

/// Two-mode squeezer on A mode 0 and B mode 0 of an (n_a, n_b) system.
SymplecticMatrix two_mode_squeezer(int modes_a, int modes_b, double r);

/// Local random symplectic S_A ⊕ S_B.
SymplecticMatrix random_local_symplectic(int modes_a, int modes_b, std::uint64_t seed,
                                         double strength = 1.0);

/// SplitMix64 step; used to derive per-trial seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace gdistill
