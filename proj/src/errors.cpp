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
#include "gdistill/errors.hpp"

namespace gdistill {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kInvalidShape: return "invalid-shape";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kIllConditioned: return "ill-conditioned";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kDegeneracy: return "degeneracy";
    case ErrorKind::kNumericalInconsistency: return "numerical-inconsistency";
    case ErrorKind::kDegenerateMeasurement: return "degenerate-measurement";
    case ErrorKind::kConcentrationFailure: return "concentration-failure";
    case ErrorKind::kInternalConsistency: return "internal-consistency";
    case ErrorKind::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace gdistill
