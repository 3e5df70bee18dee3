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

#include <random>

#include <gtest/gtest.h>

#include "gdistill/random_states.hpp"
#include "gdistill/two_mode.hpp"
#include "test_oracles.hpp"
#include "test_support.hpp"

namespace gdistill {
namespace {

CorrelationMatrix cm(const Matrix& m, int na, int nb) { return CorrelationMatrix(m, na, nb); }

CorrelationMatrix tmss(double r) { return cm(oracle::tmss(r), 1, 1); }

double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

TEST(CorrelationMatrix, RejectsBadInput) {
  EXPECT_EQ(kind_of([] { cm(Matrix::Identity(4, 4), 1, 2); }), ErrorKind::kInvalidShape);
  EXPECT_EQ(kind_of([] { cm(Matrix::Identity(2, 2), 0, 0); }), ErrorKind::kInvalidArgument);
  Matrix asym = Matrix::Identity(2, 2);
  asym(0, 1) = 0.5;
  EXPECT_EQ(kind_of([&] { cm(asym, 1, 0); }), ErrorKind::kDomain);
  EXPECT_EQ(kind_of([] { cm(Matrix(-Matrix::Identity(2, 2)), 1, 0); }), ErrorKind::kDomain);
}

TEST(CorrelationMatrix, SymmetrizesWithinTolerance) {
  Matrix m = 2.0 * Matrix::Identity(2, 2);
  m(0, 1) = 0.1;
  m(1, 0) = 0.1 + 1e-12;
  const CorrelationMatrix g = cm(m, 1, 0);
  EXPECT_EQ(g(0, 1), g(1, 0));
}

TEST(ValidatePhysical, Examples) {
  for (auto [na, nb] : {std::pair{1, 0}, std::pair{1, 1}, std::pair{2, 3}}) {
    const PhysicalityVerdict v = validate_physical(cm(Matrix::Identity(2 * (na + nb), 2 * (na + nb)), na, nb));
    EXPECT_TRUE(v.physical);
    EXPECT_NEAR(v.min_symplectic_eigenvalue, 1.0, 1e-12);
    EXPECT_TRUE(v.criteria_agree);
  }
  const PhysicalityVerdict half = validate_physical(cm(0.5 * Matrix::Identity(4, 4), 1, 1));
  EXPECT_FALSE(half.physical);
  EXPECT_NEAR(half.min_symplectic_eigenvalue, 0.5, 1e-12);
  // 0.5 - 2 on every direction.
  EXPECT_NEAR(half.margin, -1.5, 1e-12);
  EXPECT_TRUE(half.criteria_agree);

  const PhysicalityVerdict pure = validate_physical(tmss(0.5));
  EXPECT_TRUE(pure.physical);
  EXPECT_NEAR(pure.min_symplectic_eigenvalue, 1.0, 1e-10);
  EXPECT_NEAR(pure.margin, 0.0, 1e-9);
  const StdFormParams p = standard_form_params(tmss(0.5));
  EXPECT_NEAR(check_physical(p).residual_det, 0.0, 1e-10);
}

TEST(ValidatePhysical, IllConditionedRejected) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 0) = 1e7;
  m(1, 1) = 1e-7;
  EXPECT_EQ(kind_of([&] { validate_physical(cm(m, 1, 0)); }), ErrorKind::kIllConditioned);
}

TEST(ValidatePhysical, CriteriaAgreeOnRandomStates) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> scale(0.3, 1.0);
  int agreed = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int na = 1 + static_cast<int>(seed % 3);
    const int nb = 1 + static_cast<int>((seed / 3) % 3);
    const GaussianState s = random_state(na, nb, seed, StateKind::kThermal);
    const Matrix g = (seed % 2 == 0 ? 1.0 : scale(rng)) * s.gamma.matrix();
    const PhysicalityVerdict v = validate_physical(cm(g, na, nb));
    const double nu = oracle::symplectic_spectrum(g).front();
    if (std::abs(nu - 1.0) < 1e-7) continue;
    ++total;
    EXPECT_EQ(v.physical, nu >= 1.0) << "seed " << seed;
    if (v.criteria_agree && ((v.margin >= -1e-9) == v.physical)) ++agreed;
  }
  EXPECT_EQ(agreed, total);
  EXPECT_GT(total, 900);
}

TEST(PartialTranspose, Examples) {
  Matrix block = Matrix::Identity(4, 4);
  block.diagonal() << 2, 3, 4, 5;
  block(0, 1) = block(1, 0) = 0.3;
  const CorrelationMatrix product = cm(block, 1, 1);
  EXPECT_EQ(partial_transpose(product).matrix(), block);

  const Matrix pt = partial_transpose(tmss(0.5)).matrix();
  EXPECT_NEAR(pt(0, 2), oracle::kSinh1, 1e-15);
  EXPECT_NEAR(pt(1, 3), oracle::kSinh1, 1e-15);
  EXPECT_EQ(pt.block(0, 0, 2, 2), oracle::tmss(0.5).block(0, 0, 2, 2));
}

TEST(PartialTranspose, IsExactInvolution) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GaussianState s = random_state(2, 2, seed, StateKind::kEntangled);
    EXPECT_EQ(partial_transpose(partial_transpose(s.gamma)).matrix(), s.gamma.matrix());
  }
}

TEST(IsNpt, Examples) {
  Matrix a = Matrix::Identity(2, 2) * 2.0;
  a(0, 1) = a(1, 0) = 0.5;
  const CorrelationMatrix product = cm(oracle::block_diag(a, 3.0 * Matrix::Identity(4, 4)), 1, 2);
  EXPECT_FALSE(is_npt(product).npt);
  EXPECT_EQ(is_npt(product).margin, 0.0);

  const NptVerdict t = is_npt(tmss(0.5));
  EXPECT_TRUE(t.npt);
  EXPECT_LT(t.margin, 0.0);
  // The smaller PT symplectic eigenvalue of a TMSS is e^{-2r}.
  EXPECT_NEAR(t.min_pt_symplectic_eigenvalue, std::exp(-1.0), 1e-12);
  EXPECT_TRUE(t.criteria_agree);

  EXPECT_FALSE(is_npt(tmss(0.0)).npt);
}

TEST(IsNpt, UnphysicalIsPrecondition) {
  EXPECT_EQ(kind_of([] { is_npt(cm(0.5 * Matrix::Identity(4, 4), 1, 1)); }),
            ErrorKind::kPrecondition);
}

TEST(IsNpt, MatchesPartialTransposeSpectrum) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int na = 1 + static_cast<int>(seed % 3);
    const int nb = 1 + static_cast<int>((seed / 3) % 2);
    const StateKind kind = seed % 2 ? StateKind::kEntangled : StateKind::kThermal;
    const GaussianState s = random_state(na, nb, seed, kind);
    Matrix flip = Matrix::Identity(s.gamma.dim(), s.gamma.dim());
    for (int k = 0; k < nb; ++k) flip(2 * (na + k) + 1, 2 * (na + k) + 1) = -1.0;
    const double nu = oracle::symplectic_spectrum(flip * s.gamma.matrix() * flip).front();
    if (std::abs(nu - 1.0) < 1e-7) continue;
    const NptVerdict v = is_npt(s.gamma);
    EXPECT_EQ(v.npt, nu < 1.0) << "seed " << seed;
    EXPECT_EQ(v.npt, v.margin < -1e-9) << "seed " << seed;
    EXPECT_TRUE(v.criteria_agree);
  }
}

TEST(IsNpt, LocalSymplecticInvariance) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const StateKind kind = seed % 2 ? StateKind::kEntangled : StateKind::kThermal;
    const GaussianState s = random_state(2, 2, seed, kind);
    const SymplecticMatrix local = random_local_symplectic(2, 2, seed + 1000);
    const CorrelationMatrix moved = apply_symplectic(s.gamma, local);
    const NptVerdict a = is_npt(s.gamma);
    if (std::abs(a.min_pt_symplectic_eigenvalue - 1.0) < 1e-7) continue;
    EXPECT_EQ(a.npt, is_npt(moved).npt) << "seed " << seed;
  }
}

TEST(WignerCm, Examples) {
  EXPECT_LT(max_diff(wigner_cm(cm(Matrix::Identity(4, 4), 1, 1)).matrix(), Matrix::Identity(4, 4)),
            1e-15);
  const Matrix w = wigner_cm(cm(3.0 * Matrix::Identity(2, 2), 1, 0)).matrix();
  EXPECT_LT(max_diff(w, Matrix::Identity(2, 2) / 3.0), 1e-15);
  EXPECT_LT(max_diff(wigner_cm(tmss(0.5)).matrix(), oracle::tmss(0.5)), 1e-12);
}

TEST(WignerCm, MatchesDefinitionAndInvolution) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GaussianState s = random_state(2, 1, seed, StateKind::kThermal);
    const Matrix g = s.gamma.matrix();
    const Matrix j = oracle::form(3);
    const Matrix want = j.transpose() * g.inverse() * j;
    const CorrelationMatrix w = wigner_cm(s.gamma);
    EXPECT_LT(max_diff(w.matrix(), want), 1e-10 * want.cwiseAbs().maxCoeff());
    EXPECT_LT(max_diff(wigner_cm(w).matrix(), g), 1e-10 * g.cwiseAbs().maxCoeff());
    EXPECT_EQ(w.modes_a(), 2);
    EXPECT_EQ(w.modes_b(), 1);
  }
}

TEST(WignerCm, PureIffFixedPoint) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const SymplecticMatrix s = random_symplectic(3, seed);
    const Matrix pure = s.matrix().transpose() * s.matrix();
    const CorrelationMatrix g = cm(pure, 1, 2);
    EXPECT_LT(max_diff(wigner_cm(g).matrix(), pure), 1e-8 * pure.cwiseAbs().maxCoeff());
    const GaussianState mixed = random_state(1, 2, seed, StateKind::kThermal);
    const double nu_max = symplectic_eigenvalues(mixed.gamma).back();
    if (nu_max > 1.0 + 1e-6) {
      EXPECT_GT(max_diff(wigner_cm(mixed.gamma).matrix(), mixed.gamma.matrix()), 1e-8);
    }
  }
}

TEST(ReduceToModes, Examples) {
  const GaussianState s = random_state(2, 2, 9, StateKind::kThermal);
  const int all_a[] = {0, 1};
  const int all_b[] = {0, 1};
  EXPECT_EQ(reduce_to_modes(s.gamma, all_a, all_b).matrix(), s.gamma.matrix());

  // TMSS on (A1, B1), vacuum on (A2, B2).
  const CorrelationMatrix padded =
      direct_sum(tmss(0.5), cm(Matrix::Identity(4, 4), 1, 1));
  const int first[] = {0};
  const CorrelationMatrix r = reduce_to_modes(padded, first, first);
  EXPECT_EQ(r.matrix(), oracle::tmss(0.5));
  EXPECT_EQ(r.modes_a(), 1);
  EXPECT_EQ(r.modes_b(), 1);
}

TEST(ReduceToModes, PreservesPhysicality) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GaussianState s = random_state(2, 2, seed, StateKind::kEntangled);
    const int a[] = {static_cast<int>(seed % 2)};
    const int b[] = {static_cast<int>((seed / 2) % 2)};
    EXPECT_TRUE(validate_physical(reduce_to_modes(s.gamma, a, b)).physical);
  }
}

TEST(ReduceToModes, BadIndices) {
  const CorrelationMatrix g = tmss(0.5);
  const int none[] = {0};
  EXPECT_EQ(kind_of([&] { reduce_to_modes(g, std::span<const int>(), std::span<const int>()); }),
            ErrorKind::kInvalidArgument);
  const int out_of_range[] = {1};
  EXPECT_EQ(kind_of([&] { reduce_to_modes(g, none, out_of_range); }), ErrorKind::kInvalidArgument);
}

TEST(ConditionOnX, Examples) {
  Matrix a = 2.0 * Matrix::Identity(2, 2);
  a(0, 1) = a(1, 0) = 0.4;
  const CorrelationMatrix product = cm(oracle::block_diag(a, 3.0 * Matrix::Identity(2, 2)), 1, 1);
  EXPECT_LT(max_diff(condition_on_x_measurement(product, 1).matrix(), a), 1e-15);

  const CorrelationMatrix vac = cm(Matrix::Identity(4, 4), 1, 1);
  EXPECT_LT(max_diff(condition_on_x_measurement(vac, 1).matrix(), Matrix::Identity(2, 2)), 1e-15);

  const Matrix t = condition_on_x_measurement(tmss(0.5), 1).matrix();
  EXPECT_NEAR(t(0, 0), 1.0 / oracle::kCosh1, 1e-12);
  EXPECT_NEAR(t(1, 1), oracle::kCosh1, 1e-12);
  EXPECT_NEAR(t(0, 1), 0.0, 1e-15);
}

TEST(ConditionOnX, MatchesRankOneSchurComplement) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const GaussianState s = random_state(2, 2, seed, StateKind::kEntangled);
    const int mode = static_cast<int>(seed % 4);
    const CorrelationMatrix c = condition_on_x_measurement(s.gamma, mode);
    const Matrix want = oracle::condition_x(s.gamma.matrix(), mode);
    EXPECT_LT(max_diff(c.matrix(), want), 1e-10 * want.cwiseAbs().maxCoeff());
    EXPECT_TRUE(validate_physical(c).physical) << "seed " << seed;
    EXPECT_EQ(c.modes_a() + c.modes_b(), 3);
    EXPECT_EQ(c.modes_a(), mode < 2 ? 1 : 2);
  }
}

TEST(ConditionOnX, Errors) {
  EXPECT_EQ(kind_of([] { condition_on_x_measurement(tmss(0.5), 2); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([] { condition_on_x_measurement(cm(0.5 * Matrix::Identity(4, 4), 1, 1), 0); }),
            ErrorKind::kPrecondition);
}

TEST(ApplyLocal, MatchesCongruence) {
  const GaussianState s = random_state(1, 2, 5, StateKind::kEntangled);
  const SymplecticMatrix a = random_symplectic(1, 1);
  const SymplecticMatrix b = random_symplectic(2, 2);
  const Matrix sab = oracle::block_diag(a.matrix(), b.matrix());
  const Matrix want = sab.transpose() * s.gamma.matrix() * sab;
  EXPECT_LT(max_diff(apply_local(s.gamma, a, b).matrix(), want), 1e-12 * want.cwiseAbs().maxCoeff());
  EXPECT_EQ(kind_of([&] { apply_local(s.gamma, b, a); }), ErrorKind::kInvalidShape);
}

TEST(DirectSum, OrdersModesBySide) {
  const CorrelationMatrix first = tmss(0.3);
  const CorrelationMatrix second = cm(2.0 * Matrix::Identity(4, 4), 1, 1);
  const CorrelationMatrix sum = direct_sum(first, second);
  EXPECT_EQ(sum.modes_a(), 2);
  EXPECT_EQ(sum.modes_b(), 2);
  // A1 <-> B1 correlation lands on rows 0 and 4.
  EXPECT_EQ(sum(0, 4), first(0, 2));
  EXPECT_EQ(sum(2, 2), 2.0);
  EXPECT_EQ(sum(0, 2), 0.0);
}

}  // namespace
}  // namespace gdistill
