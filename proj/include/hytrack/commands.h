// Copyright 2026 The Hytrack Authors
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

#ifndef HYTRACK_COMMANDS_H_
#define HYTRACK_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace hytrack {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `hytrack` tool: simulate, track, evaluate, label,
// bench. `args` excludes the program name. Never throws.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace hytrack

#endif  // HYTRACK_COMMANDS_H_
