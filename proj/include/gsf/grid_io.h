// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gsf/grid.h>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace gsf {

// FGRD layout (all scalars little-endian):
//   "FGRD" | u16 version | u32 N, C, Z, X, Y
//   space block: u8 kind, then
//     cartesian: f64 min[3], max[3], cell[3]
//     frustum:   f64 fx, fy, cx, cy | u32 rows, cols | camera pose | u32 stride
//                | u32 plane count | f64 planes[]
//   grid pose | f32 payload[N*C*Z*X*Y], row-major with Y fastest
// A pose is f64[12] row-major [R | t] followed by a u16-length frame name.

inline constexpr std::uint16_t kGridFormatVersion = 1;

enum class GridIoErrc {
    BadMagic,
    UnsupportedVersion,
    TruncatedHeader,
    TruncatedPayload,
    DimOverflow,
    BadSpace,
    WriteFailed,
};

class GridIoError : public Error {
  public:
    GridIoError(GridIoErrc code, const std::string &what);

    GridIoErrc
    ioCode() const noexcept {
        return io_code_;
    }

  private:
    GridIoErrc io_code_;
};

void writeGrid(const Grid &g, std::ostream &os);
Grid readGrid(std::istream &is);

void writeGridFile(const Grid &g, const std::filesystem::path &path);
Grid readGridFile(const std::filesystem::path &path);

std::vector<char> serializeGrid(const Grid &g);

} // namespace gsf
