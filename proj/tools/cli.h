// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gsf/error.h>

#include <iosfwd>
#include <string>
#include <vector>

namespace gsf::app {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitNumerical = 4;

int exitCodeFor(Errc code);

/// Parses and runs one `gsf` invocation; `args` excludes the program name.
int runCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace gsf::app
