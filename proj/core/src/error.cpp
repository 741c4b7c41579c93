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

#include "causabound/error.hpp"

namespace causabound {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::infeasible_slack: return "infeasible-slack";
    case ErrorKind::null_event: return "null-event";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::infeasible_construction: return "infeasible-construction";
    case ErrorKind::structural: return "structural";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::refused: return "refused";
    case ErrorKind::undefined: return "undefined";
  }
  return "unknown";
}

}  // namespace causabound
