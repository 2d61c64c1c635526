// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/grid.h>

#include <sstream>

namespace gsf {

std::string
toString(const GridShape &s) {
    std::ostringstream os;
    os << "(" << s.n << ", " << s.c << ", " << s.z << ", " << s.x << ", " << s.y << ")";
    return os.str();
}

} // namespace gsf
