// Copyright 2026 The vot Authors
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

#ifndef VOT_CLI_HPP_
#define VOT_CLI_HPP_

#include <iosfwd>

namespace vot {

// Exit codes of the vot tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAuditFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInfeasible = 3;

// Runs one command; reports go to `out` (or --out), diagnostics to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vot

#endif  // VOT_CLI_HPP_
