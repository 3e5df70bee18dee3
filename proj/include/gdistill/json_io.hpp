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

#include <map>
#include <string>

#include <json.hpp>

#include "gdistill/distill.hpp"
#include "gdistill/gaussian_cm.hpp"
#include "gdistill/two_mode.hpp"

namespace gdistill {

using Json = nlohmann::ordered_json;

inline constexpr int kStateSchemaVersion = 1;

/// {"schema_version": 1, "state": {...}, "metadata": {"key": "value"}}.
struct StateFile {
  int schema_version = kStateSchemaVersion;
  GaussianState state;
  std::map<std::string, std::string> metadata;
};

Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);
Json complex_vector_to_json(const ComplexVector& v);

/// {"n_a", "n_b", "gamma": row-major rows, "d"}.
Json state_to_json(const GaussianState& state);

/// Parses the bare state object. Errors are kParse with the offending field
/// path in the message.
GaussianState state_from_json(const Json& j);

Json state_file_to_json(const StateFile& file);

/// Accepts either a full state file or a bare state object.
StateFile state_file_from_json(const Json& j);

/// Reads and parses a file; JSON syntax errors carry line and column.
StateFile read_state_file(const std::string& path);

Json to_json(const StdFormParams& p);
Json to_json(const WignerParams& p);
Json to_json(const PhysicalityVerdict& v);
Json to_json(const NptVerdict& v);
Json to_json(const NptWitness& w);
Json to_json(const ConcentrationResult& c);
Json to_json(const StandardFormResult& s);
Json to_json(const SymmetrizationReport& s);
Json to_json(const RcWitnessResult& r);

/// Stage objects are keyed "npt_check", "witness", "concentrate",
/// "standard_form", "symmetrize" and "rc_witness"; stages that did not run
/// are null.
Json to_json(const PipelineReport& report);

}  // namespace gdistill
