// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

// Little-endian scalar encoding shared by the binary file formats.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <concepts>
#include <cstdint>
#include <cstring>
#include <istream>
#include <optional>
#include <span>
#include <ostream>
#include <string>

namespace gsf::detail {

template <typename T>
    requires std::integral<T> || std::floating_point<T>
void
putLE(std::ostream &os, T value) {
    std::array<char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    os.write(bytes.data(), sizeof(T));
}

template <typename T>
    requires std::integral<T> || std::floating_point<T>
std::optional<T>
getLE(std::istream &is) {
    std::array<char, sizeof(T)> bytes;
    if (!is.read(bytes.data(), sizeof(T))) {
        return std::nullopt;
    }
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

/// Bulk encode of a contiguous array.
template <typename T>
    requires std::integral<T> || std::floating_point<T>
void
putArrayLE(std::ostream &os, std::span<const T> values) {
    if constexpr (std::endian::native == std::endian::little) {
        os.write(reinterpret_cast<const char *>(values.data()),
                 static_cast<std::streamsize>(values.size_bytes()));
    } else {
        for (T v : values) {
            putLE<T>(os, v);
        }
    }
}

template <typename T>
    requires std::integral<T> || std::floating_point<T>
bool
getArrayLE(std::istream &is, std::span<T> out) {
    if constexpr (std::endian::native == std::endian::little) {
        return static_cast<bool>(
            is.read(reinterpret_cast<char *>(out.data()), static_cast<std::streamsize>(out.size_bytes())));
    } else {
        for (T &v : out) {
            auto x = getLE<T>(is);
            if (!x) {
                return false;
            }
            v = *x;
        }
        return true;
    }
}

inline void
putString(std::ostream &os, const std::string &s) {
    if (s.size() > 0xFFFF) {
        os.setstate(std::ios::failbit);
        return;
    }
    putLE<std::uint16_t>(os, static_cast<std::uint16_t>(s.size()));
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::optional<std::string>
getString(std::istream &is) {
    auto len = getLE<std::uint16_t>(is);
    if (!len) {
        return std::nullopt;
    }
    std::string s(*len, '\0');
    if (*len > 0 && !is.read(s.data(), *len)) {
        return std::nullopt;
    }
    return s;
}

} // namespace gsf::detail
