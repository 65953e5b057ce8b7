// Copyright 2026 The resint Authors
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

#ifndef RESINT_CLI_H_
#define RESINT_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "resint/op_model.h"

namespace resint::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParseOrDomain = 2;
inline constexpr int kExitNonEffective = 3;
inline constexpr int kExitHorizon = 4;

int exit_code_for(ErrorCode code);

// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace resint::cli

#endif  // RESINT_CLI_H_
