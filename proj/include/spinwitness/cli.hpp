// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spinwitness {

/// Runs the command-line interface. Exit codes: 0 success, 1 numerical
/// failure (including reference-table deviations), 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinwitness
