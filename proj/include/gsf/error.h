// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace gsf {

/// Failure categories. The CLI maps these onto process exit codes.
enum class Errc {
    InvalidArgument,
    ShapeMismatch,
    SpaceMismatch,
    NonFinite,
    OutOfRange,
    Io,
    Format,
    Config,
};

const char *errcName(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string &what);

    Errc
    code() const noexcept {
        return code_;
    }

  private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string &what);

} // namespace gsf
