// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/log.h>

#include <iostream>
#include <mutex>

namespace gsf {

namespace {

std::mutex g_mutex;

WarningHandler &
handlerSlot() {
    static WarningHandler handler = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
    return handler;
}

} // namespace

WarningHandler
setWarningHandler(WarningHandler handler) {
    std::lock_guard lock(g_mutex);
    WarningHandler previous = std::move(handlerSlot());
    handlerSlot() = std::move(handler);
    return previous;
}

void
warn(std::string_view message) {
    std::lock_guard lock(g_mutex);
    if (handlerSlot()) {
        handlerSlot()(message);
    }
}

} // namespace gsf
