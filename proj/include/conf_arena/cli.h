// Copyright 2026 The Conf Arena Authors.
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

#ifndef CONF_ARENA_CLI_H_
#define CONF_ARENA_CLI_H_

#include <string>
#include <vector>

namespace conf_arena::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitTransport = 2;
inline constexpr int kExitData = 3;

// Subcommands: answer, prefgen, aggregate, baseline, eval, tune, simulate,
// report. `args` excludes the program name.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace conf_arena::cli

#endif  // CONF_ARENA_CLI_H_
