// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string_view>

namespace gsf {

using WarningHandler = std::function<void(std::string_view)>;

/// Replaces the warning sink (stderr by default) and returns the previous one.
WarningHandler setWarningHandler(WarningHandler handler);
void warn(std::string_view message);

} // namespace gsf
