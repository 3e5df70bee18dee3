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
// gdistill: command-line front end for the Gaussian distillability toolkit.
//
// Exit codes
//   validate:  0 physical, 2 unphysical, 1 parse/I-O error
//   pipeline:  0 DISTILLABLE, 3 NOT_DISTILLABLE, 4 inconclusive (boundary),
//              5 stage failure, 1 parse/I-O error
//   fuzz:      0 no violations, 2 violations, 1 config error
//   random, standard-form, symmetrize, concentrate:
//              0 success, 5 stage failure, 1 parse/I-O or flag error

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gdistill/distill.hpp"
#include "gdistill/errors.hpp"
#include "gdistill/fuzz.hpp"
#include "gdistill/json_io.hpp"
#include "gdistill/random_states.hpp"

namespace {

using gdistill::Json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitUnphysical = 2;
constexpr int kExitNotDistillable = 3;
constexpr int kExitInconclusive = 4;
constexpr int kExitStage = 5;
constexpr int kExitViolations = 2;

double default_tolerance() {
  if (const char* env = std::getenv("GDISTILL_TOL")) {
    try {
      const double v = std::stod(env);
      if (v >= 0.0) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid GDISTILL_TOL=" << env << "\n";
  }
  return gdistill::kVerdictTol;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int report_error(const gdistill::Error& e) {
  Json err{{"error", std::string(gdistill::to_string(e.kind()))}, {"message", e.what()}};
  if (const auto* stage = dynamic_cast<const gdistill::StageError*>(&e)) {
    err["stage"] = stage->stage();
  }
  std::cerr << err.dump() << "\n";
  return e.kind() == gdistill::ErrorKind::kParse ? kExitParse : kExitStage;
}

int cmd_validate(const std::string& path, double tol) {
  const gdistill::StateFile file = gdistill::read_state_file(path);
  const gdistill::CorrelationMatrix& gamma = file.state.gamma;
  const gdistill::PhysicalityVerdict phys = gdistill::validate_physical(gamma, tol);
  Json out{{"physical", phys.physical},
           {"npt", nullptr},
           {"partition", Json::array({gamma.modes_a(), gamma.modes_b()})},
           {"min_symplectic_eigenvalue", phys.min_symplectic_eigenvalue},
           {"physical_margin", phys.margin},
           {"criteria_agree", phys.criteria_agree}};
  if (phys.physical) {
    const gdistill::NptVerdict npt = gdistill::is_npt(gamma, tol);
    out["npt"] = npt.npt;
    out["npt_margin"] = npt.margin;
    out["min_pt_symplectic_eigenvalue"] = npt.min_pt_symplectic_eigenvalue;
    out["criteria_agree"] = phys.criteria_agree && npt.criteria_agree;
  }
  emit(out);
  return phys.physical ? kExitOk : kExitUnphysical;
}

int cmd_pipeline(const std::string& path, bool json, int r_max, std::uint64_t seed, double tol) {
  const gdistill::StateFile file = gdistill::read_state_file(path);
  gdistill::PipelineOptions options;
  options.tol = tol;
  options.r_max = r_max;
  options.seed = seed;
  const gdistill::PipelineReport report = gdistill::distill_pipeline(file.state.gamma, options);
  if (json) {
    emit(gdistill::to_json(report));
  } else {
    std::cout << "partition: " << report.modes_a << "x" << report.modes_b << "\n"
              << "min PT symplectic eigenvalue: " << report.npt.min_pt_symplectic_eigenvalue
              << "\n"
              << "verdict: " << gdistill::to_string(report.verdict) << "\n";
    if (report.symmetrization) {
      std::cout << "witness retries: " << report.witness_retries << "\n"
                << "symmetrization angle: " << report.symmetrization->theta
                << (report.symmetrization->swapped_sides ? " (ancilla on A)" : "") << "\n";
    }
    if (report.rc) {
      std::cout << "reduction criterion at r=" << report.rc->r << ": " << report.rc->value
                << (report.rc_certified ? " (certified)" : "") << "\n";
    }
  }
  switch (report.verdict) {
    case gdistill::Verdict::kDistillable: return kExitOk;
    case gdistill::Verdict::kNotDistillable: return kExitNotDistillable;
    case gdistill::Verdict::kInconclusive: return kExitInconclusive;
  }
  return kExitStage;
}

int cmd_random(int modes_a, int modes_b, std::uint64_t seed, const std::string& kind_name) {
  const auto kind = gdistill::parse_state_kind(kind_name);
  if (!kind) {
    std::cerr << "unknown kind \"" << kind_name << "\" (thermal, entangled, boundary)\n";
    return kExitParse;
  }
  gdistill::StateFile file{gdistill::kStateSchemaVersion,
                           gdistill::random_state(modes_a, modes_b, seed, *kind),
                           {{"generator", "gdistill random"},
                            {"kind", std::string(gdistill::to_string(*kind))},
                            {"seed", std::to_string(seed)}}};
  emit(gdistill::state_file_to_json(file));
  return kExitOk;
}

int cmd_fuzz(const std::string& path, double tol) {
  gdistill::FuzzConfig config;
  config.tolerances.verdict = tol;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) {
      std::cerr << path << ": cannot open file\n";
      return kExitParse;
    }
    try {
      Json j = Json::parse(in);
      if (!j.contains("tolerances") || !j["tolerances"].contains("verdict")) {
        j["tolerances"]["verdict"] = tol;
      }
      config = gdistill::parse_fuzz_config(j);
    } catch (const Json::parse_error& e) {
      std::cerr << path << ": " << e.what() << "\n";
      return kExitParse;
    }
  }
  const gdistill::FuzzSummary summary = gdistill::run_fuzz(config);
  emit(gdistill::to_json(summary));
  std::cerr << "fuzz: " << config.trials << " trials, " << summary.violations.size()
            << " violations, " << summary.seconds << " s\n";
  return summary.ok() ? kExitOk : kExitViolations;
}

int cmd_standard_form(const std::string& path) {
  const gdistill::StateFile file = gdistill::read_state_file(path);
  emit(gdistill::to_json(gdistill::standard_form_transform(file.state.gamma)));
  return kExitOk;
}

int cmd_symmetrize(const std::string& path, double tol) {
  const gdistill::StateFile file = gdistill::read_state_file(path);
  const gdistill::SymmetrizationReport report = gdistill::symmetrize(file.state.gamma, tol);
  Json out = gdistill::to_json(report);
  out["params_out"] = gdistill::to_json(gdistill::standard_form_params(report.gamma_out));
  emit(out);
  return kExitOk;
}

int cmd_concentrate(const std::string& path, std::uint64_t seed, double tol) {
  const gdistill::StateFile file = gdistill::read_state_file(path);
  const gdistill::ConcentrationStage stage =
      gdistill::concentrate_with_retry(file.state.gamma, gdistill::kMaxWitnessRetries, seed, tol);
  Json out{{"witness", gdistill::to_json(stage.witness)},
           {"retries", stage.retries},
           {"concentration", gdistill::to_json(stage.result)}};
  emit(out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distillability analysis of bipartite Gaussian states"};
  app.require_subcommand(1);
  double tol = default_tolerance();
  app.add_option("--tol", tol, "verdict tolerance (default 1e-9, or $GDISTILL_TOL)")
      ->check(CLI::NonNegativeNumber);

  std::string path;
  bool json = false;
  int r_max = 8;
  std::uint64_t seed = 0;
  int modes_a = 1;
  int modes_b = 1;
  std::string kind = "thermal";

  auto* validate = app.add_subcommand("validate", "check physicality and NPT of a state file");
  validate->add_option("path", path, "state file")->required();

  auto* pipeline = app.add_subcommand("pipeline", "run the full distillability pipeline");
  pipeline->add_option("path", path, "state file")->required();
  pipeline->add_flag("--json", json, "print the full report as JSON");
  pipeline->add_option("--r-max", r_max, "largest probe squeezing in the RC sweep")
      ->check(CLI::PositiveNumber);
  pipeline->add_option("--seed", seed, "seed for witness perturbations");

  auto* random = app.add_subcommand("random", "print a random physical state file");
  random->add_option("--modes-a", modes_a, "modes on side A")->check(CLI::NonNegativeNumber);
  random->add_option("--modes-b", modes_b, "modes on side B")->check(CLI::NonNegativeNumber);
  random->add_option("--seed", seed, "generator seed");
  random->add_option("--kind", kind, "thermal | entangled | boundary");

  auto* fuzz = app.add_subcommand("fuzz", "run the invariant campaign");
  fuzz->add_option("config", path, "fuzz config JSON (defaults if omitted)");

  auto* standard_form = app.add_subcommand("standard-form", "bring a 1x1 state to standard form");
  standard_form->add_option("path", path, "state file")->required();

  auto* symmetrize = app.add_subcommand("symmetrize", "symmetrize a 1x1 NPT state");
  symmetrize->add_option("path", path, "state file")->required();

  auto* concentrate = app.add_subcommand("concentrate", "concentrate an NxM NPT state to 1x1");
  concentrate->add_option("path", path, "state file")->required();
  concentrate->add_option("--seed", seed, "seed for witness perturbations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*validate) return cmd_validate(path, tol);
    if (*pipeline) return cmd_pipeline(path, json, r_max, seed, tol);
    if (*random) return cmd_random(modes_a, modes_b, seed, kind);
    if (*fuzz) return cmd_fuzz(path, tol);
    if (*standard_form) return cmd_standard_form(path);
    if (*symmetrize) return cmd_symmetrize(path, tol);
    if (*concentrate) return cmd_concentrate(path, seed, tol);
  } catch (const gdistill::Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return kExitStage;
  }
  return kExitParse;
}
