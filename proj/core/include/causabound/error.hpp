// Copyright 2026 The causabound Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace causabound {

/// Absolute slack used for validity, feasibility and identification checks.
inline constexpr double kTolerance = 1e-12;

enum class ErrorKind {
  domain,                   // input outside its mathematical domain
  infeasible_slack,         // xi outside its admissible interval
  null_event,               // conditioning on a zero-probability observation
  unsupported,              // valid input the analysis does not cover
  infeasible_construction,  // a construction leaves the valid parameter set
  structural,               // mismatched chain / evidence shapes
  precondition,             // caller violated a documented precondition
  refused,                  // request too expensive for the chosen method
  undefined,                // quantity undefined at this input (sigma at tau = 1)
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace causabound
