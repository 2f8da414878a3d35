// Copyright 2026 The BaIT Authors. All Rights Reserved.
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
// =============================================================================

#ifndef BAIT_CLI_COMMANDS_HPP_
#define BAIT_CLI_COMMANDS_HPP_

#include <exception>
#include <ostream>
#include <span>
#include <string>

#include "bait/cli/run_config.hpp"

namespace bait::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;     // unreadable, malformed or inconsistent input
inline constexpr int kExitContract = 3;  // training or evaluation contract violated
inline constexpr int kExitInternal = 1;  // anything unexpected

// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& error);

// Each command writes `<out_dir>/<command>_config.txt` before doing any work
// and reports progress on `out`.
void cmd_ingest(const RunConfig& config, std::ostream& out);
void cmd_train(const RunConfig& config, std::ostream& out);
void cmd_tune(const RunConfig& config, std::ostream& out);
void cmd_eval(const RunConfig& config, std::ostream& out);
void cmd_augment(const RunConfig& config, std::ostream& out);
void cmd_predict(const RunConfig& config, std::ostream& out);

// Parses `args` (without the program name), runs the subcommand and returns
// the exit code. Errors are reported on `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace bait::cli

#endif  // BAIT_CLI_COMMANDS_HPP_
