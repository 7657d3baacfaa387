/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effcalc Authors
 */

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace effcalc {

/// Exit codes of the command-line tool.
enum ExitCode : int {
	exit_ok = 0,
	exit_usage = 2,
	exit_exhausted = 3,
	exit_precondition = 4,
};

/// Settings shared by every command.
struct CommandConfig {
	std::string command;
	std::int64_t precision = 16;
	std::uint64_t fuel = 4096;
	std::uint64_t stage = 8;
	bool records = false;
};

/// Runs one invocation; args excludes the program name. Output is a pure
/// function of args (and of the file named by --file, if any).
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace effcalc
