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

#include "ifair/error.h"

namespace ifair {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kInvalidInput:
      return "invalid_input";
    case ErrorCode::kStructural:
      return "structural";
    case ErrorCode::kNoData:
      return "no_data";
    case ErrorCode::kUndefinedConditional:
      return "undefined_conditional";
    case ErrorCode::kInfeasible:
      return "infeasible";
    case ErrorCode::kBudgetExceeded:
      return "budget_exceeded";
  }
  return "unknown";
}

}  // namespace ifair
