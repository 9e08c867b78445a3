// Copyright 2026 The Synchro Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SYNCHRO_TOOLS_CLI_HPP_
#define SYNCHRO_TOOLS_CLI_HPP_

#include <iosfwd>

namespace synchro::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitConsistencyError = 3;

// Entry point of the `synchro` tool. Subcommands: align, score, eval-align,
// correlate, report. Reports go to --out or `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace synchro::cli

#endif  // SYNCHRO_TOOLS_CLI_HPP_
