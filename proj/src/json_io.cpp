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
#include "gdistill/json_io.hpp"

#include <fstream>
#include <sstream>

#include "gdistill/errors.hpp"

namespace gdistill {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::kParse, where + ": " + what);
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) parse_fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

int parse_count(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    parse_fail(where, "expected a non-negative integer");
  }
  return j.get<int>();
}

double parse_real(const Json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where, "expected a number");
  return j.get<double>();
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Json complex_vector_to_json(const ComplexVector& v) {
  return Json{{"re", vector_to_json(v.real())}, {"im", vector_to_json(v.imag())}};
}

Json state_to_json(const GaussianState& state) {
  return Json{{"n_a", state.gamma.modes_a()},
              {"n_b", state.gamma.modes_b()},
              {"gamma", matrix_to_json(state.gamma.matrix())},
              {"d", vector_to_json(state.displacement)}};
}

GaussianState state_from_json(const Json& j) {
  const int n_a = parse_count(require(j, "n_a", "state"), "state.n_a");
  const int n_b = parse_count(require(j, "n_b", "state"), "state.n_b");
  if (n_a + n_b == 0) parse_fail("state", "partition has no modes");
  const Eigen::Index dim = 2 * (n_a + n_b);

  const Json& rows = require(j, "gamma", "state");
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
    parse_fail("state.gamma", "expected " + std::to_string(dim) + " rows");
  }
  Matrix gamma(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const std::string where = "state.gamma[" + std::to_string(r) + "]";
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      parse_fail(where, "expected " + std::to_string(dim) + " entries");
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      gamma(r, c) = parse_real(row[static_cast<std::size_t>(c)],
                               where + "[" + std::to_string(c) + "]");
    }
  }

  Vector d = Vector::Zero(dim);
  if (const auto it = j.find("d"); it != j.end() && !it->is_null()) {
    if (!it->is_array() || static_cast<Eigen::Index>(it->size()) != dim) {
      parse_fail("state.d", "expected " + std::to_string(dim) + " entries");
    }
    for (Eigen::Index k = 0; k < dim; ++k) {
      d(k) = parse_real((*it)[static_cast<std::size_t>(k)], "state.d[" + std::to_string(k) + "]");
    }
  }

  try {
    return GaussianState(CorrelationMatrix(gamma, n_a, n_b), d);
  } catch (const Error& e) {
    parse_fail("state.gamma", e.what());
  }
}

Json state_file_to_json(const StateFile& file) {
  Json meta = Json::object();
  for (const auto& [k, v] : file.metadata) meta[k] = v;
  return Json{{"schema_version", file.schema_version},
              {"state", state_to_json(file.state)},
              {"metadata", std::move(meta)}};
}

StateFile state_file_from_json(const Json& j) {
  if (!j.is_object()) parse_fail("<root>", "expected an object");
  if (!j.contains("state")) {
    return StateFile{kStateSchemaVersion, state_from_json(j), {}};
  }
  int version = kStateSchemaVersion;
  if (const auto it = j.find("schema_version"); it != j.end()) {
    version = parse_count(*it, "schema_version");
    if (version != kStateSchemaVersion) {
      parse_fail("schema_version", "unsupported version " + std::to_string(version));
    }
  }
  StateFile file{version, state_from_json(j.at("state")), {}};
  if (const auto it = j.find("metadata"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) parse_fail("metadata", "expected an object of strings");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) parse_fail("metadata." + k, "expected a string");
      file.metadata[k] = v.get<std::string>();
    }
  }
  return file;
}

StateFile read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, path + ": cannot open file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kParse, path + ": " + e.what());
  }
  try {
    return state_file_from_json(j);
  } catch (const Error& e) {
    throw Error(ErrorKind::kParse, path + ": " + e.what());
  }
}

Json to_json(const StdFormParams& p) {
  return Json{{"n_a", p.n_a}, {"n_b", p.n_b}, {"k_x", p.k_x}, {"k_p", p.k_p}};
}

Json to_json(const WignerParams& p) {
  return Json{{"N_a", p.n_a}, {"N_b", p.n_b}, {"K_x", p.k_x},
              {"K_p", p.k_p}, {"D_x", p.d_x()}, {"D_p", p.d_p()}};
}

Json to_json(const PhysicalityVerdict& v) {
  return Json{{"physical", v.physical},
              {"min_symplectic_eigenvalue", v.min_symplectic_eigenvalue},
              {"margin", v.margin},
              {"criteria_agree", v.criteria_agree}};
}

Json to_json(const NptVerdict& v) {
  return Json{{"npt", v.npt},
              {"margin", v.margin},
              {"min_pt_symplectic_eigenvalue", v.min_pt_symplectic_eigenvalue},
              {"criteria_agree", v.criteria_agree}};
}

Json to_json(const NptWitness& w) {
  return Json{{"z", complex_vector_to_json(w.z)},
              {"margin", w.margin},
              {"skew_a", w.skew_a},
              {"skew_b", w.skew_b},
              {"attempt", w.attempt}};
}

Json to_json(const ConcentrationResult& c) {
  return Json{{"s_a", matrix_to_json(c.s_a.matrix())},
              {"s_b", matrix_to_json(c.s_b.matrix())},
              {"gamma_red", matrix_to_json(c.gamma_red.matrix())},
              {"z_hat", complex_vector_to_json(c.z_hat)},
              {"support_leakage", c.support_leakage},
              {"form_full", c.form_full},
              {"form_reduced", c.form_reduced}};
}

Json to_json(const StandardFormResult& s) {
  return Json{{"s_a", matrix_to_json(s.s_a.matrix())},
              {"s_b", matrix_to_json(s.s_b.matrix())},
              {"gamma_std", matrix_to_json(s.gamma_std.matrix())},
              {"params", to_json(s.params)}};
}

Json to_json(const SymmetrizationReport& s) {
  return Json{{"theta", s.theta},
              {"swapped_sides", s.swapped_sides},
              {"wigner_in", to_json(s.wigner_in)},
              {"wigner_out", matrix_to_json(s.wigner_out)},
              {"gamma_out", matrix_to_json(s.gamma_out.matrix())},
              {"insep_residual_in", s.insep_residual_in},
              {"insep_residual_out", s.insep_residual_out},
              {"scale_factor", s.scale_factor}};
}

Json to_json(const RcWitnessResult& r) {
  return Json{{"r", r.r}, {"value", r.value}, {"asymptotic_value", r.asymptotic_value}};
}

Json to_json(const PipelineReport& report) {
  Json stages = Json::object();
  stages["npt_check"] = to_json(report.npt);
  stages["witness"] = report.witness ? to_json(*report.witness) : Json();
  if (report.witness) stages["witness"]["retries"] = report.witness_retries;
  stages["concentrate"] = report.concentration ? to_json(*report.concentration) : Json();
  stages["standard_form"] = report.standard_form ? to_json(*report.standard_form) : Json();
  stages["symmetrize"] = report.symmetrization ? to_json(*report.symmetrization) : Json();
  if (report.final_params) {
    Json sweep = Json::array();
    for (const RcWitnessResult& r : report.rc_sweep) sweep.push_back(to_json(r));
    stages["rc_witness"] = Json{{"final_params", to_json(*report.final_params)},
                                {"sweep", std::move(sweep)},
                                {"final", report.rc ? to_json(*report.rc) : Json()},
                                {"certified", report.rc_certified}};
  } else {
    stages["rc_witness"] = Json();
  }
  return Json{{"input_partition", Json::array({report.modes_a, report.modes_b})},
              {"verdict", std::string(to_string(report.verdict))},
              {"stages", std::move(stages)}};
}

}  // namespace gdistill
