// Copyright 2026 The volkit Authors.
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

#ifndef VOLKIT_CLI_H_
#define VOLKIT_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "volkit/error.h"

namespace volkit {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitGeometry = 3;
inline constexpr int kExitEmpty = 4;
inline constexpr int kExitIdMismatch = 5;
inline constexpr int kExitFormat = 6;

int ExitCodeFor(ErrorKind kind);

// Runs the `volkit` command line. `args` excludes the program name.
// Results go to `out`, diagnostics to `err`; returns the exit code.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace volkit

#endif  // VOLKIT_CLI_H_
