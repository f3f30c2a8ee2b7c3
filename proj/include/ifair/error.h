// Copyright 2026 The ifair Authors
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

#ifndef IFAIR_ERROR_H_
#define IFAIR_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ifair {

enum class ErrorCode {
  kInvalidArgument,       // bad parameter value (alpha <= 0, delta outside range)
  kInvalidInput,          // malformed records, CSV, or schema
  kStructural,            // partition/schema mismatch, empty block
  kNoData,                // table with n == 0
  kUndefinedConditional,  // a group with zero marginal mass
  kInfeasible,            // an algorithmic precondition does not hold
  kBudgetExceeded,        // enumeration larger than the configured budget
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported by throwing Error. The code lets the CLI
// map failures onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ifair

#endif  // IFAIR_ERROR_H_
