// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.h"

#include <iostream>

int
main(int argc, char **argv) {
    return gsf::app::runCli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
