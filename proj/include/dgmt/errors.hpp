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

#ifndef DGMT_ERRORS_HPP_
#define DGMT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace dgmt {

// Failure categories shared by every layer. The C API maps these one-to-one
// onto dgmt_status values, so the order here is part of the ABI.
enum class Errc {
  kDimension = 1,
  kBudgetExhausted = 2,
  kDegenerateInput = 3,
  kParameter = 4,
  kInsufficientPopulation = 5,
  kInfeasiblePartition = 6,
  kCalibrationFailed = 7,
  kAuditViolation = 8,
  kIo = 9,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace dgmt

#endif  // DGMT_ERRORS_HPP_
