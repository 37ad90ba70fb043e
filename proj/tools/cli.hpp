// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relframe::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kNumericalError = 3,
};

/// Runs one subcommand. `args` excludes the program name. Tables go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relframe::cli
