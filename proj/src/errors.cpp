// Copyright 2026 The dgmt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dgmt/errors.hpp"

namespace dgmt {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kDimension:
      return "dimension";
    case Errc::kBudgetExhausted:
      return "budget-exhausted";
    case Errc::kDegenerateInput:
      return "degenerate-input";
    case Errc::kParameter:
      return "parameter";
    case Errc::kInsufficientPopulation:
      return "insufficient-population";
    case Errc::kInfeasiblePartition:
      return "infeasible-partition";
    case Errc::kCalibrationFailed:
      return "calibration-failed";
    case Errc::kAuditViolation:
      return "audit-violation";
    case Errc::kIo:
      return "io";
  }
  return "unknown";
}

}  // namespace dgmt
