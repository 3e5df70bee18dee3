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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "gdistill/distill.hpp"
#include "gdistill/errors.hpp"
#include "gdistill/random_states.hpp"
#include "gdistill/two_mode.hpp"
#include "test_oracles.hpp"

namespace gdistill {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << "  " << name << "  " << detail
            << std::endl;
}

std::string g(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Smallest symplectic eigenvalue of the partial transpose, computed without
// the library.
double pt_nu_min(const CorrelationMatrix& gamma) {
  Matrix flip = Matrix::Identity(gamma.dim(), gamma.dim());
  for (int k = 0; k < gamma.modes_b(); ++k) {
    const Eigen::Index p = 2 * (gamma.modes_a() + k) + 1;
    flip(p, p) = -1.0;
  }
  return oracle::symplectic_spectrum(flip * gamma.matrix() * flip).front();
}

constexpr double kBand = 1e-7;

void npt_verdict_equivalence() {
  const auto t0 = Clock::now();
  int compared = 0, boundary = 0, mismatches = 0, errors = 0, npt = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t seed = mix_seed(1000 + trial);
    const int na = 1 + static_cast<int>(seed % 4);
    const int nb = 1 + static_cast<int>((seed >> 8) % 4);
    const StateKind kind = trial % 5 < 2   ? StateKind::kThermal
                           : trial % 5 < 4 ? StateKind::kEntangled
                                           : StateKind::kBoundary;
    const GaussianState s = random_state(na, nb, seed, kind);
    const double nu = pt_nu_min(s.gamma);
    if (std::abs(nu - 1.0) < kBand) {
      ++boundary;
      continue;
    }
    ++compared;
    const bool npt_by_spectrum = nu < 1.0;
    if (npt_by_spectrum) ++npt;
    try {
      const PipelineReport r = distill_pipeline(s.gamma, PipelineOptions{.seed = seed});
      if ((r.verdict == Verdict::kDistillable) != npt_by_spectrum ||
          r.verdict == Verdict::kInconclusive) {
        ++mismatches;
      }
    } catch (const Error& e) {
      ++errors;
      std::cout << "  trial " << trial << ": " << e.what() << "\n";
    }
  }
  const double secs = seconds_since(t0);
  report(1, "npt_verdict_equivalence", mismatches == 0 && errors == 0 && secs < 120.0,
         std::to_string(compared) + " compared (" + std::to_string(npt) + " NPT, " +
             std::to_string(boundary) + " in boundary band), " + std::to_string(mismatches) +
             " mismatches, " + std::to_string(errors) + " errors, " + g(secs) +
             " s [limit 100% agreement, < 120 s]");
}

void one_by_one_equivalence() {
  int compared = 0, boundary = 0, mismatches = 0, npt = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t seed = mix_seed(5000 + trial);
    const StateKind kind = trial % 5 < 2   ? StateKind::kThermal
                           : trial % 5 < 4 ? StateKind::kEntangled
                                           : StateKind::kBoundary;
    const GaussianState s = random_state(1, 1, seed, kind);
    const NptVerdict v = is_npt(s.gamma);
    if (std::abs(pt_nu_min(s.gamma) - 1.0) < kBand) {
      ++boundary;
      continue;
    }
    ++compared;
    if (v.npt) ++npt;
    if (check_inseparable(standard_form_params(s.gamma)).holds != v.npt) ++mismatches;
  }
  report(2, "one_by_one_equivalence", mismatches == 0,
         std::to_string(compared) + " compared (" + std::to_string(npt) + " NPT, " +
             std::to_string(boundary) + " in boundary band), " + std::to_string(mismatches) +
             " disagreements [limit 0]");
}

void tmss_analytics() {
  double param_dev = 0.0, det_dev = 0.0, insep_dev = 0.0;
  for (double r : {0.25, 0.5, 1.0}) {
    const StdFormParams p = standard_form_params(tmss_cm(r));
    const double c = std::cosh(2 * r), s = std::sinh(2 * r);
    param_dev = std::max({param_dev, std::abs(p.n_a - c), std::abs(p.n_b - c),
                          std::abs(p.k_x - s), std::abs(p.k_p + s)});
    det_dev = std::max(det_dev, std::abs(check_physical(p).residual_det));
    insep_dev = std::max(insep_dev,
                         std::abs(check_inseparable(p).residual - (2 * std::cosh(4 * r) - 2)));
  }
  report(3, "tmss_analytics", param_dev <= 1e-12 && det_dev <= 1e-10 && insep_dev <= 1e-9,
         "params dev " + g(param_dev) + " [1e-12], physicality residual " + g(det_dev) +
             " [1e-10], inseparability residual dev " + g(insep_dev) + " [1e-9]");
}

void symmetrize_oracle_agreement() {
  int trials = 0, asym_fail = 0, npt_fail = 0, errors = 0;
  double max_dev = 0.0, max_asym = 0.0, max_scale_rel = 0.0;
  for (std::uint64_t seed = 0; trials < 500 && seed < 100000; ++seed) {
    const GaussianState s = random_state(1, 1, mix_seed(9000 + seed), StateKind::kEntangled);
    if (std::abs(pt_nu_min(s.gamma) - 1.0) < kBand || !is_npt(s.gamma).npt) continue;
    const StdFormParams in = standard_form_params(s.gamma);
    if (std::abs(in.n_a - in.n_b) < 1e-6) continue;
    ++trials;
    try {
      const SymmetrizationReport r = symmetrize(s.gamma);
      const Matrix closed = post_measurement_wigner_cm(r.wigner_in, r.theta);
      const Matrix measured = post_measurement_wigner_cm_oracle(r.wigner_in, r.theta);
      max_dev = std::max(max_dev, max_diff(closed, measured));

      const StdFormParams out = standard_form_params(r.gamma_out);
      const double asym = std::abs(out.n_a - out.n_b);
      max_asym = std::max(max_asym, asym);
      if (asym > 1e-8) ++asym_fail;
      if (!is_npt(r.gamma_out).npt) ++npt_fail;

      const WignerParams& w = r.wigner_in;
      const double tan2 = std::tan(r.theta) * std::tan(r.theta);
      const double factor = 1.0 / (w.n_b * tan2 + 1.0);
      const double res_in = oracle::insep_residual(standard_form_cm(w).matrix());
      const double res_out = oracle::insep_residual(closed);
      max_scale_rel = std::max(max_scale_rel, std::abs(res_out - res_in * factor) /
                                                  std::abs(res_in * factor));
    } catch (const Error& e) {
      ++errors;
      std::cout << "  seed " << seed << ": " << e.what() << "\n";
    }
  }
  report(4, "symmetrize_oracle_agreement",
         trials == 500 && max_dev <= 1e-10 && asym_fail == 0 && npt_fail == 0 && errors == 0 &&
             max_scale_rel <= 1e-8,
         std::to_string(trials) + " states, closed form vs measurement " + g(max_dev) +
             " [1e-10], max |n_a-n_b| " + g(max_asym) + " [1e-8], " + std::to_string(npt_fail) +
             " lost NPT, scaling rel dev " + g(max_scale_rel) + " [1e-8], " +
             std::to_string(errors) + " errors");
}

void concentration() {
  int trials = 0, failures_hard = 0, retried = 0, max_retries = 0;
  double max_leak = 0.0;
  for (std::uint64_t k = 0; trials < 500 && k < 100000; ++k) {
    const std::uint64_t seed = mix_seed(20000 + k);
    const int na = 1 + static_cast<int>(seed % 4);
    const int nb = 1 + static_cast<int>((seed >> 8) % 4);
    const GaussianState s = random_state(na, nb, seed, StateKind::kEntangled);
    if (pt_nu_min(s.gamma) > 1.0 - kBand) continue;
    ++trials;
    try {
      const ConcentrationStage st = concentrate_with_retry(s.gamma, kMaxWitnessRetries, seed);
      max_leak = std::max(max_leak, st.result.support_leakage);
      if (st.result.support_leakage > 1e-6 || !is_npt(st.result.gamma_red).npt ||
          st.result.gamma_red.modes_a() != 1 || st.result.gamma_red.modes_b() != 1) {
        ++failures_hard;
      }
      if (st.retries > 0) ++retried;
      max_retries = std::max(max_retries, st.retries);
    } catch (const Error& e) {
      ++failures_hard;
      std::cout << "  seed " << seed << ": " << e.what() << "\n";
    }
  }
  report(5, "concentration", trials == 500 && failures_hard == 0,
         std::to_string(trials) + " NPT states, max leakage " + g(max_leak) + " [1e-6], " +
             std::to_string(retried) + " needed retries (max " + std::to_string(max_retries) +
             ", limit 32), " + std::to_string(failures_hard) + " hard failures [limit 0]");
}

void rc_limit() {
  std::mt19937_64 rng(31);
  int trials = 0, mismatches = 0, negative = 0;
  for (std::uint64_t k = 0; trials < 200; ++k) {
    const oracle::Params p = oracle::random_physical_params(rng, true);
    const double asym = (p.n_a - p.k_x) * (p.n_a + p.k_p) - 1.0;
    if (std::abs(asym) < 1e-3) continue;
    // Alternate the sign of the limit so both branches are exercised.
    if ((asym < 0.0) != (trials % 2 == 1)) continue;
    const Matrix std_form = oracle::standard_form(p.n_a, p.n_b, p.k_x, p.k_p);
    const CorrelationMatrix gamma =
        apply_symplectic(CorrelationMatrix(std_form, 1, 1), random_local_symplectic(1, 1, k));
    ++trials;
    const RcWitnessResult rc = rc_value(gamma, 8.0);
    if (asym < 0.0) ++negative;
    if ((rc.value < 0.0) != (asym < 0.0) || std::abs(rc.asymptotic_value - asym) > 1e-8) {
      ++mismatches;
    }
  }
  report(6, "rc_limit", mismatches == 0,
         std::to_string(trials) + " symmetric states (" + std::to_string(negative) +
             " with negative limit), " + std::to_string(mismatches) + " sign mismatches at r=8 [limit 0]");
}

int run_cli_fuzz(double& secs) {
  const std::string cmd = std::string(GDISTILL_CLI_PATH) + " fuzz > /dev/null 2>&1";
  const auto t0 = Clock::now();
  const int status = std::system(cmd.c_str());
  secs = seconds_since(t0);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void structural_invariants() {
  double nu_dev = 0.0, wigner_dev = 0.0;
  int pt_fail = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t seed = mix_seed(40000 + trial);
    const int na = 1 + static_cast<int>(seed % 4);
    const int nb = 1 + static_cast<int>((seed >> 8) % 4);
    const StateKind kind = trial % 2 ? StateKind::kEntangled : StateKind::kThermal;
    const GaussianState s = random_state(na, nb, seed, kind);

    const SymplecticMatrix sym = random_symplectic(na + nb, mix_seed(seed + 1));
    const std::vector<double> before = symplectic_eigenvalues(s.gamma);
    const std::vector<double> after = symplectic_eigenvalues(apply_symplectic(s.gamma, sym));
    for (std::size_t k = 0; k < before.size(); ++k) {
      nu_dev = std::max(nu_dev, std::abs(before[k] - after[k]));
    }

    if (partial_transpose(partial_transpose(s.gamma)).matrix() != s.gamma.matrix()) ++pt_fail;
    wigner_dev = std::max(wigner_dev, max_diff(wigner_cm(wigner_cm(s.gamma)).matrix(), s.gamma.matrix()));
  }
  double fuzz_secs = 0.0;
  const int fuzz_code = run_cli_fuzz(fuzz_secs);
  report(7, "structural_invariants",
         nu_dev <= 1e-8 && pt_fail == 0 && wigner_dev <= 1e-10 && fuzz_code == 0 &&
             fuzz_secs < 60.0,
         "symplectic eigenvalue dev " + g(nu_dev) + " [1e-8], partial transpose involution " +
             std::to_string(pt_fail) + " inexact [0], wigner involution dev " + g(wigner_dev) +
             " [1e-10], default fuzz exit " + std::to_string(fuzz_code) + " in " + g(fuzz_secs) +
             " s [0, < 60 s]");
}

}  // namespace
}  // namespace gdistill

int main() {
  using namespace gdistill;
  const auto run = [](const char* name, void (*fn)()) {
    try {
      fn();
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "FAIL  " << name << " aborted: " << e.what() << std::endl;
    }
  };
  run("criterion 1", npt_verdict_equivalence);
  run("criterion 2", one_by_one_equivalence);
  run("criterion 3", tmss_analytics);
  run("criterion 4", symmetrize_oracle_agreement);
  run("criterion 5", concentration);
  run("criterion 6", rc_limit);
  run("criterion 7", structural_invariants);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
