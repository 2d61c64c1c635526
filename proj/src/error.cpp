// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/error.h>

namespace gsf {

const char *
errcName(Errc code) {
    switch (code) {
    case Errc::InvalidArgument: return "invalid argument";
    case Errc::ShapeMismatch: return "shape mismatch";
    case Errc::SpaceMismatch: return "space mismatch";
    case Errc::NonFinite: return "non-finite value";
    case Errc::OutOfRange: return "out of range";
    case Errc::Io: return "io error";
    case Errc::Format: return "format error";
    case Errc::Config: return "config error";
    }
    return "unknown";
}

Error::Error(Errc code, const std::string &what) : std::runtime_error(what), code_(code) {}

void
fail(Errc code, const std::string &what) {
    throw Error(code, what);
}

} // namespace gsf
