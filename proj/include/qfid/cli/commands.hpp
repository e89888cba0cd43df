/* Copyright 2026 The qfid Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef QFID_CLI_COMMANDS_HPP_
#define QFID_CLI_COMMANDS_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "qfid/pulse.hpp"

namespace qfid::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kDegenerate = 3,
};

/// Parses "s1,s2,...[:d1,d2,...]" into amplitude scales and detunings; the
/// detuning list defaults to {0}. Throws InputError on malformed text.
ErrorGrid parse_grid(const std::string& spec);

/// Runs the command line `args` (without the program name). The report goes
/// to `out`, diagnostics to `err`; returns one of ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfid::cli

#endif  // QFID_CLI_COMMANDS_HPP_
