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
#include "gdistill/random_states.hpp"

#include <cmath>
#include <random>

#include "gdistill/errors.hpp"

namespace gdistill {

namespace {

Matrix thermal_diagonal(const std::vector<double>& nu) {
  Matrix d = Matrix::Zero(2 * static_cast<Eigen::Index>(nu.size()),
                          2 * static_cast<Eigen::Index>(nu.size()));
  for (std::size_t k = 0; k < nu.size(); ++k) {
    d(2 * k, 2 * k) = d(2 * k + 1, 2 * k + 1) = nu[k];
  }
  return d;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string_view to_string(StateKind kind) {
  switch (kind) {
    case StateKind::kThermal: return "thermal";
    case StateKind::kEntangled: return "entangled";
    case StateKind::kBoundary: return "boundary";
  }
  return "unknown";
}

std::optional<StateKind> parse_state_kind(std::string_view name) {
  if (name == "thermal") return StateKind::kThermal;
  if (name == "entangled") return StateKind::kEntangled;
  if (name == "boundary") return StateKind::kBoundary;
  return std::nullopt;
}

SymplecticMatrix two_mode_squeezer(int modes_a, int modes_b, double r) {
  if (modes_a < 1 || modes_b < 1) {
    throw Error(ErrorKind::kInvalidArgument, "two_mode_squeezer needs a mode on each side");
  }
  const int b0 = 2 * modes_a;
  Matrix s = Matrix::Identity(2 * (modes_a + modes_b), 2 * (modes_a + modes_b));
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  s(0, 0) = s(1, 1) = s(b0, b0) = s(b0 + 1, b0 + 1) = ch;
  s(0, b0) = s(b0, 0) = sh;
  s(1, b0 + 1) = s(b0 + 1, 1) = -sh;
  return SymplecticMatrix(std::move(s));
}

SymplecticMatrix random_local_symplectic(int modes_a, int modes_b, std::uint64_t seed,
                                         double strength) {
  const std::uint64_t seed_a = mix_seed(seed ^ 0xa11ceULL);
  const std::uint64_t seed_b = mix_seed(seed ^ 0xb0bULL);
  if (modes_b == 0) return random_symplectic(modes_a, seed_a, strength);
  if (modes_a == 0) return random_symplectic(modes_b, seed_b, strength);
  return direct_sum(random_symplectic(modes_a, seed_a, strength),
                    random_symplectic(modes_b, seed_b, strength));
}

GaussianState random_state(int modes_a, int modes_b, std::uint64_t seed, StateKind kind) {
  if (modes_a < 0 || modes_b < 0 || modes_a + modes_b == 0) {
    throw Error(ErrorKind::kInvalidArgument, "random_state: invalid partition");
  }
  const int modes = modes_a + modes_b;
  std::mt19937_64 rng(mix_seed(seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> nu(static_cast<std::size_t>(modes));
  Matrix gamma;
  switch (kind) {
    case StateKind::kThermal: {
      for (double& v : nu) v = 1.0 + 2.0 * unit(rng);
      const SymplecticMatrix s = random_symplectic(modes, mix_seed(seed + 1), 0.7);
      gamma = s.matrix().transpose() * thermal_diagonal(nu) * s.matrix();
      break;
    }
    case StateKind::kEntangled: {
      if (modes_a < 1 || modes_b < 1) {
        throw Error(ErrorKind::kInvalidArgument, "entangled states need a mode on each side");
      }
      for (double& v : nu) v = 1.0 + 0.5 * unit(rng);
      const double r = 0.3 + 0.7 * unit(rng);
      const Matrix squeeze = two_mode_squeezer(modes_a, modes_b, r).matrix();
      const Matrix global = random_symplectic(modes, mix_seed(seed + 2), 0.3).matrix();
      const Matrix local = random_local_symplectic(modes_a, modes_b, mix_seed(seed + 3)).matrix();
      const Matrix s = squeeze * global * local;
      gamma = s.transpose() * thermal_diagonal(nu) * s;
      break;
    }
    case StateKind::kBoundary: {
      if (modes_a < 1 || modes_b < 1) {
        throw Error(ErrorKind::kInvalidArgument, "boundary states need a mode on each side");
      }
      const double k = 0.5 + 1.5 * unit(rng);
      const double delta = 2e-3 * (unit(rng) - 0.5);
      const double n = 1.0 + delta + k;
      for (double& v : nu) v = 1.0 + unit(rng);
      gamma = thermal_diagonal(nu);
      const int b0 = 2 * modes_a;
      gamma(0, 0) = gamma(1, 1) = gamma(b0, b0) = gamma(b0 + 1, b0 + 1) = n;
      gamma(0, b0) = gamma(b0, 0) = k;
      gamma(1, b0 + 1) = gamma(b0 + 1, 1) = -k;
      const Matrix local = random_local_symplectic(modes_a, modes_b, mix_seed(seed + 4)).matrix();
      gamma = local.transpose() * gamma * local;
      break;
    }
  }
  return GaussianState(CorrelationMatrix(gamma, modes_a, modes_b));
}

}  // namespace gdistill
