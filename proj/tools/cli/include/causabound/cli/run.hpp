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

#include <ostream>
#include <string>
#include <vector>

namespace causabound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;  // flags, config file, domain/shape errors
inline constexpr int kExitModule = 3;  // infeasibility surfaced from the library

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out` (or to files under --out); a failure prints exactly one line
/// `causabound: error: <kind>: <message>` to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace causabound::cli
