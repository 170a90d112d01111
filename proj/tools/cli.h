// Copyright 2026 The Evofuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EVOFUZZ_TOOLS_CLI_H_
#define EVOFUZZ_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace evofuzz {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitInternal = 3;

// Runs the command line `args` (without the program name). Reports go to
// `out`, diagnostics to `err`; `in` feeds the serve subcommand.
int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace evofuzz

#endif  // EVOFUZZ_TOOLS_CLI_H_
