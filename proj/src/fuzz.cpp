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
#include "gdistill/fuzz.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "gdistill/errors.hpp"
#include "gdistill/random_states.hpp"

namespace gdistill {

namespace {

struct Outcome {
  enum Status { kPass, kSkip, kFail } status = kPass;
  std::string detail;

  static Outcome pass() { return {}; }
  static Outcome skip() { return {kSkip, {}}; }
  static Outcome fail(std::string why) { return {kFail, std::move(why)}; }
};

Outcome expect(bool ok, const std::string& why) { return ok ? Outcome::pass() : Outcome::fail(why); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

class Campaign {
 public:
  explicit Campaign(FuzzSummary& summary) : summary_(summary) {}

  void begin_trial(int trial, std::uint64_t seed, const GaussianState& state) {
    trial_ = trial;
    seed_ = seed;
    state_ = &state;
  }

  void check(const std::string& name, const std::function<Outcome()>& fn) {
    auto [it, inserted] = index_.try_emplace(name, summary_.invariants.size());
    if (inserted) summary_.invariants.push_back(InvariantStats{name});
    InvariantStats& stats = summary_.invariants[it->second];
    Outcome outcome;
    try {
      outcome = fn();
    } catch (const Error& e) {
      outcome = Outcome::fail(std::string(to_string(e.kind())) + " error: " + e.what());
    } catch (const std::exception& e) {
      outcome = Outcome::fail(std::string("exception: ") + e.what());
    }
    switch (outcome.status) {
      case Outcome::kPass: ++stats.checked; break;
      case Outcome::kSkip: ++stats.skipped; break;
      case Outcome::kFail:
        ++stats.checked;
        ++stats.violations;
        summary_.violations.push_back(
            Violation{name, trial_, seed_, outcome.detail, state_to_json(*state_)});
        break;
    }
  }

 private:
  FuzzSummary& summary_;
  std::map<std::string, std::size_t> index_;
  int trial_ = 0;
  std::uint64_t seed_ = 0;
  const GaussianState* state_ = nullptr;
};

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

void run_trial(Campaign& campaign, FuzzSummary& summary, const FuzzConfig& config, int trial) {
  const FuzzTolerances& tol = config.tolerances;
  const std::uint64_t seed = trial_seed(config.seed, trial);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int na = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(config.max_modes_a));
  const int nb = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(config.max_modes_b));
  const StateKind kind =
      unit(rng) < config.npt_fraction_target ? StateKind::kEntangled : StateKind::kThermal;
  const GaussianState state = random_state(na, nb, seed, kind);
  const CorrelationMatrix& gamma = state.gamma;
  campaign.begin_trial(trial, seed, state);

  const double nu_min = symplectic_eigenvalues(gamma).front();
  const double pt_nu_min = symplectic_eigenvalues(partial_transpose(gamma)).front();
  const bool near_boundary = std::abs(pt_nu_min - 1.0) < tol.boundary;
  if (pt_nu_min < 1.0) ++summary.npt_states;

  campaign.check("generated_state_physical", [&] {
    return expect(validate_physical(gamma, tol.verdict).physical,
                  "min symplectic eigenvalue " + fmt(nu_min));
  });

  campaign.check("physicality_criteria_agree", [&] {
    const double scale = 0.3 + 0.7 * unit(rng);
    const CorrelationMatrix scaled(scale * gamma.matrix(), na, nb);
    for (const CorrelationMatrix* g : {&gamma, &scaled}) {
      const PhysicalityVerdict v = validate_physical(*g, tol.verdict);
      if (std::abs(v.min_symplectic_eigenvalue - 1.0) < tol.boundary) return Outcome::skip();
      if (!v.criteria_agree) {
        return Outcome::fail("margin " + fmt(v.margin) + " vs min symplectic eigenvalue " +
                             fmt(v.min_symplectic_eigenvalue));
      }
    }
    return Outcome::pass();
  });

  campaign.check("symplectic_eigenvalue_invariance", [&] {
    const SymplecticMatrix s = random_symplectic(gamma.modes(), mix_seed(seed + 11));
    const std::vector<double> before = symplectic_eigenvalues(gamma);
    const std::vector<double> after = symplectic_eigenvalues(apply_symplectic(gamma, s));
    for (std::size_t k = 0; k < before.size(); ++k) {
      if (std::abs(before[k] - after[k]) > tol.invariance * std::max(1.0, before[k])) {
        return Outcome::fail("eigenvalue " + std::to_string(k) + ": " + fmt(before[k]) +
                             " vs " + fmt(after[k]));
      }
    }
    return Outcome::pass();
  });

  campaign.check("partial_transpose_involution", [&] {
    return expect(partial_transpose(partial_transpose(gamma)).matrix() == gamma.matrix(),
                  "double partial transpose differs from input");
  });

  campaign.check("wigner_involution", [&] {
    const double scale = std::max(1.0, gamma.matrix().cwiseAbs().maxCoeff());
    const double err = max_abs_diff(wigner_cm(wigner_cm(gamma)).matrix(), gamma.matrix());
    return expect(err <= tol.involution * scale, "max deviation " + fmt(err));
  });

  campaign.check("npt_local_invariance", [&] {
    if (near_boundary) return Outcome::skip();
    const SymplecticMatrix local = random_local_symplectic(na, nb, mix_seed(seed + 12));
    const bool before = is_npt(gamma, tol.verdict).npt;
    const bool after = is_npt(apply_symplectic(gamma, local), tol.verdict).npt;
    return expect(before == after, "NPT verdict changed under a local symplectic map");
  });

  campaign.check("reduction_preserves_physicality", [&] {
    const int keep_a[] = {static_cast<int>(rng() % static_cast<std::uint64_t>(na))};
    const int keep_b[] = {static_cast<int>(rng() % static_cast<std::uint64_t>(nb))};
    return expect(validate_physical(reduce_to_modes(gamma, keep_a, keep_b), tol.verdict).physical,
                  "reduced state is unphysical");
  });

  campaign.check("conditioning_preserves_physicality", [&] {
    const int mode = static_cast<int>(rng() % static_cast<std::uint64_t>(gamma.modes()));
    return expect(
        validate_physical(condition_on_x_measurement(gamma, mode), tol.verdict).physical,
        "conditional state is unphysical");
  });

  // Two-mode checks on the first A and first B mode.
  const int first[] = {0};
  const CorrelationMatrix pair = reduce_to_modes(gamma, first, first);
  const double pair_pt_nu = symplectic_eigenvalues(partial_transpose(pair)).front();
  const bool pair_boundary = std::abs(pair_pt_nu - 1.0) < tol.boundary;

  campaign.check("params_llbt_invariance", [&] {
    const StdFormParams p = standard_form_params(pair);
    const CorrelationMatrix moved =
        apply_symplectic(pair, random_local_symplectic(1, 1, mix_seed(seed + 13)));
    const StdFormParams q = standard_form_params(moved);
    const double scale = std::max(1.0, p.n_a + p.n_b);
    const double err = std::max({std::abs(p.n_a - q.n_a), std::abs(p.n_b - q.n_b),
                                 std::abs(p.k_x - q.k_x), std::abs(p.k_p - q.k_p)});
    return expect(err <= tol.invariance * scale, "parameter drift " + fmt(err));
  });

  campaign.check("inseparable_iff_npt_1x1", [&] {
    if (pair_boundary) return Outcome::skip();
    const InequalityCheck insep = check_inseparable(standard_form_params(pair), tol.verdict);
    if (std::abs(insep.residual) < tol.boundary) return Outcome::skip();
    return expect(insep.holds == is_npt(pair, tol.verdict).npt,
                  "inseparability residual " + fmt(insep.residual) + " vs PT eigenvalue " +
                      fmt(pair_pt_nu));
  });

  campaign.check("kxkp_negative_when_inseparable", [&] {
    const StdFormParams p = standard_form_params(pair);
    const InequalityCheck insep = check_inseparable(p, tol.verdict);
    if (!insep.holds) return Outcome::skip();
    return expect(p.k_x * p.k_p < 0.0, "k_x k_p = " + fmt(p.k_x * p.k_p));
  });

  campaign.check("wigner_duality", [&] {
    const WignerParams w = wigner_params(pair);
    const StdFormParams as_std{w.n_a, w.n_b, w.k_x, w.k_p};
    const PhysicalCheck c = check_physical(as_std, tol.verdict);
    return expect(c.residual_det >= -tol.verdict * std::max(1.0, w.n_a * w.n_a * w.n_b * w.n_b) &&
                      w.d_x() <= 1.0 + tol.verdict,
                  "determinant residual " + fmt(c.residual_det) + ", D_x = " + fmt(w.d_x()));
  });

  campaign.check("rc_implies_npt", [&] {
    bool negative = false;
    for (int r = 1; r <= 8; ++r) negative = negative || rc_value(pair, r).value < 0.0;
    if (!negative) return Outcome::skip();
    return expect(pair_pt_nu < 1.0, "reduction criterion fired on a PPT state");
  });

  // Pipeline and the stage-level identities.
  PipelineOptions options;
  options.tol = tol.verdict;
  options.boundary_band = tol.boundary;
  options.seed = seed;
  std::optional<PipelineReport> report;
  campaign.check("npt_verdict_equivalence", [&] {
    report = distill_pipeline(gamma, options);
    if (report->verdict == Verdict::kInconclusive) {
      ++summary.inconclusive;
      return Outcome::skip();
    }
    if (report->verdict == Verdict::kDistillable) ++summary.distillable;
    return expect((report->verdict == Verdict::kDistillable) == (pt_nu_min < 1.0),
                  std::string("verdict ") + std::string(to_string(report->verdict)) +
                      " but PT eigenvalue " + fmt(pt_nu_min));
  });
  if (!report || report->verdict != Verdict::kDistillable) return;

  campaign.check("concentration_support", [&] {
    return expect(report->concentration->support_leakage <= 1e-6,
                  "leakage " + fmt(report->concentration->support_leakage));
  });

  campaign.check("witness_restriction_identity", [&] {
    const ConcentrationResult& c = *report->concentration;
    const double scale = std::max(1.0, std::abs(c.form_full));
    return expect(std::abs(c.form_full - c.form_reduced) <= tol.agreement * scale,
                  fmt(c.form_full) + " vs " + fmt(c.form_reduced));
  });

  campaign.check("symmetrization_scaling", [&] {
    const SymmetrizationReport& s = *report->symmetrization;
    const double expected = s.insep_residual_in * s.scale_factor;
    return expect(std::abs(s.insep_residual_out - expected) <=
                      tol.invariance * std::max(std::abs(expected), 1e-300),
                  fmt(s.insep_residual_out) + " vs " + fmt(expected));
  });

  campaign.check("closed_form_matches_measurement", [&] {
    const SymmetrizationReport& s = *report->symmetrization;
    if (s.theta == 0.0) return Outcome::skip();
    const Matrix oracle = post_measurement_wigner_cm_oracle(s.wigner_in, s.theta);
    const double err = max_abs_diff(oracle, s.wigner_out);
    return expect(err <= tol.agreement * std::max(1.0, s.wigner_out.cwiseAbs().maxCoeff()),
                  "max deviation " + fmt(err));
  });

  campaign.check("symmetrized_output", [&] {
    const StdFormParams& p = *report->final_params;
    return expect(is_symmetric(p, tol.symmetry * std::max(1.0, p.n_a)),
                  "n_a = " + fmt(p.n_a) + ", n_b = " + fmt(p.n_b));
  });

  campaign.check("symmetric_specialization", [&] {
    const StdFormParams& p = *report->final_params;
    const InequalityCheck general = check_inseparable(p, tol.verdict);
    const InequalityCheck special =
        check_symmetric_inseparable(0.5 * (p.n_a + p.n_b), p.k_x, p.k_p, tol.verdict);
    if (std::abs(general.residual) < tol.boundary || std::abs(special.residual) < tol.boundary) {
      return Outcome::skip();
    }
    return expect(general.holds == special.holds,
                  fmt(general.residual) + " vs " + fmt(special.residual));
  });

  campaign.check("rc_limit_sign", [&] {
    if (!report->rc) return Outcome::skip();
    const RcWitnessResult& rc = *report->rc;
    if (std::abs(rc.asymptotic_value) < 1e-3) return Outcome::skip();
    return expect((rc.value < 0.0) == (rc.asymptotic_value < 0.0),
                  "value " + fmt(rc.value) + " vs limit " + fmt(rc.asymptotic_value));
  });
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, int trial) {
  return mix_seed(master ^ mix_seed(static_cast<std::uint64_t>(trial)));
}

FuzzConfig parse_fuzz_config(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::kParse, "fuzz config: expected an object");
  FuzzConfig c;
  for (const auto& [key, value] : j.items()) {
    auto number = [&, &key = key, &value = value]() {
      if (!value.is_number()) throw Error(ErrorKind::kParse, "fuzz config: " + key + " must be a number");
      return value.get<double>();
    };
    auto count = [&, &key = key, &value = value]() {
      if (!value.is_number_integer() || value.get<long long>() < 1) {
        throw Error(ErrorKind::kParse, "fuzz config: " + key + " must be a positive integer");
      }
      return value.get<int>();
    };
    if (key == "seed") {
      if (!value.is_number_unsigned() && !value.is_number_integer()) {
        throw Error(ErrorKind::kParse, "fuzz config: seed must be an integer");
      }
      c.seed = value.get<std::uint64_t>();
    } else if (key == "trials") {
      c.trials = count();
    } else if (key == "max_modes_a") {
      c.max_modes_a = count();
    } else if (key == "max_modes_b") {
      c.max_modes_b = count();
    } else if (key == "npt_fraction_target") {
      c.npt_fraction_target = number();
      if (c.npt_fraction_target < 0.0 || c.npt_fraction_target > 1.0) {
        throw Error(ErrorKind::kParse, "fuzz config: npt_fraction_target must lie in [0, 1]");
      }
    } else if (key == "tolerances") {
      if (!value.is_object()) throw Error(ErrorKind::kParse, "fuzz config: tolerances must be an object");
      for (const auto& [tk, tv] : value.items()) {
        if (!tv.is_number() || tv.get<double>() < 0.0) {
          throw Error(ErrorKind::kParse, "fuzz config: tolerances." + tk + " must be >= 0");
        }
        const double v = tv.get<double>();
        if (tk == "verdict") c.tolerances.verdict = v;
        else if (tk == "invariance") c.tolerances.invariance = v;
        else if (tk == "involution") c.tolerances.involution = v;
        else if (tk == "agreement") c.tolerances.agreement = v;
        else if (tk == "symmetry") c.tolerances.symmetry = v;
        else if (tk == "boundary") c.tolerances.boundary = v;
        else throw Error(ErrorKind::kParse, "fuzz config: unknown tolerance \"" + tk + "\"");
      }
    } else {
      throw Error(ErrorKind::kParse, "fuzz config: unknown key \"" + key + "\"");
    }
  }
  return c;
}

Json to_json(const FuzzConfig& c) {
  return Json{{"seed", c.seed},
              {"trials", c.trials},
              {"max_modes_a", c.max_modes_a},
              {"max_modes_b", c.max_modes_b},
              {"npt_fraction_target", c.npt_fraction_target},
              {"tolerances",
               {{"verdict", c.tolerances.verdict},
                {"invariance", c.tolerances.invariance},
                {"involution", c.tolerances.involution},
                {"agreement", c.tolerances.agreement},
                {"symmetry", c.tolerances.symmetry},
                {"boundary", c.tolerances.boundary}}}};
}

FuzzSummary run_fuzz(const FuzzConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  FuzzSummary summary;
  summary.config = config;
  Campaign campaign(summary);
  for (int trial = 0; trial < config.trials; ++trial) {
    try {
      run_trial(campaign, summary, config, trial);
    } catch (const std::exception& e) {
      // Generation itself failed; record it against the trial.
      summary.violations.push_back(Violation{"trial_setup", trial,
                                             trial_seed(config.seed, trial), e.what(), Json()});
    }
  }
  summary.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

Json to_json(const FuzzSummary& summary) {
  Json invariants = Json::object();
  for (const InvariantStats& s : summary.invariants) {
    invariants[s.name] = Json{{"checked", s.checked}, {"skipped", s.skipped},
                              {"violations", s.violations}};
  }
  Json violations = Json::array();
  for (const Violation& v : summary.violations) {
    violations.push_back(Json{{"invariant", v.invariant},
                              {"trial", v.trial},
                              {"trial_seed", v.trial_seed},
                              {"detail", v.detail},
                              {"state", v.state}});
  }
  return Json{{"ok", summary.ok()},
              {"config", to_json(summary.config)},
              {"trials", summary.config.trials},
              {"npt_states", summary.npt_states},
              {"distillable", summary.distillable},
              {"inconclusive", summary.inconclusive},
              {"violation_count", static_cast<int>(summary.violations.size())},
              {"invariants", std::move(invariants)},
              {"violations", std::move(violations)}};
}

}  // namespace gdistill
