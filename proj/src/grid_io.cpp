// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/grid_io.h>

#include "binary_io.h"

#include <array>
#include <fstream>
#include <limits>
#include <sstream>

namespace gsf {

namespace {

using detail::getLE;
using detail::getString;
using detail::putLE;
using detail::putString;

// Largest payload accepted on read (2^32 values, 16 GiB of f32).
constexpr std::uint64_t kMaxElements = std::uint64_t(1) << 32;

constexpr std::array<char, 4> kMagic{'F', 'G', 'R', 'D'};

[[noreturn]] void
ioFail(GridIoErrc code, const std::string &what) {
    throw GridIoError(code, what);
}

template <typename T>
T
need(std::optional<T> v) {
    if (!v) {
        ioFail(GridIoErrc::TruncatedHeader, "truncated header");
    }
    return *v;
}

void
writePose(std::ostream &os, const Pose &p) {
    for (double v : p.toRowMajor()) {
        putLE<double>(os, v);
    }
    putString(os, p.baseFrame());
}

Pose
readPose(std::istream &is) {
    std::array<double, 12> v{};
    for (double &x : v) {
        x = need(getLE<double>(is));
    }
    std::string frame = need(getString(is));
    try {
        return Pose::fromRowMajor(v, std::move(frame));
    } catch (const Error &e) {
        ioFail(GridIoErrc::BadSpace, std::string("bad pose block: ") + e.what());
    }
}

void
writeSpace(std::ostream &os, const Space &space) {
    putLE<std::uint8_t>(os, static_cast<std::uint8_t>(space.kind()));
    if (const auto *c = dynamic_cast<const CartesianSpace *>(&space)) {
        for (const Vec3 *v : {&c->minCorner(), &c->maxCorner(), &c->cellSize()}) {
            for (int k = 0; k < 3; ++k) {
                putLE<double>(os, (*v)[k]);
            }
        }
    } else if (const auto *f = dynamic_cast<const FrustumSpace *>(&space)) {
        const CameraModel &cam = f->camera();
        putLE<double>(os, cam.fx());
        putLE<double>(os, cam.fy());
        putLE<double>(os, cam.cx());
        putLE<double>(os, cam.cy());
        putLE<std::uint32_t>(os, static_cast<std::uint32_t>(cam.rows()));
        putLE<std::uint32_t>(os, static_cast<std::uint32_t>(cam.cols()));
        writePose(os, cam.pose());
        putLE<std::uint32_t>(os, static_cast<std::uint32_t>(f->stride()));
        putLE<std::uint32_t>(os, static_cast<std::uint32_t>(f->depthPlanes().size()));
        for (double d : f->depthPlanes()) {
            putLE<double>(os, d);
        }
    } else {
        ioFail(GridIoErrc::BadSpace, "unsupported space type");
    }
}

SpacePtr
readSpace(std::istream &is) {
    const auto kind = need(getLE<std::uint8_t>(is));
    try {
        if (kind == static_cast<std::uint8_t>(SpaceKind::Cartesian)) {
            std::array<Vec3, 3> v;
            for (Vec3 &vec : v) {
                for (int k = 0; k < 3; ++k) {
                    vec[k] = need(getLE<double>(is));
                }
            }
            return CartesianSpace::make(v[0], v[1], v[2]);
        }
        if (kind == static_cast<std::uint8_t>(SpaceKind::Frustum)) {
            const double fx = need(getLE<double>(is));
            const double fy = need(getLE<double>(is));
            const double cx = need(getLE<double>(is));
            const double cy = need(getLE<double>(is));
            const auto rows = need(getLE<std::uint32_t>(is));
            const auto cols = need(getLE<std::uint32_t>(is));
            Pose pose = readPose(is);
            const auto stride = need(getLE<std::uint32_t>(is));
            const auto count = need(getLE<std::uint32_t>(is));
            if (count > (1u << 20)) {
                ioFail(GridIoErrc::DimOverflow, "frustum plane count overflow");
            }
            std::vector<double> planes(count);
            for (double &d : planes) {
                d = need(getLE<double>(is));
            }
            CameraModel cam(fx, fy, cx, cy, int(rows), int(cols), std::move(pose));
            return FrustumSpace::make(std::move(cam), std::move(planes), int(stride));
        }
    } catch (const GridIoError &) {
        throw;
    } catch (const Error &e) {
        ioFail(GridIoErrc::BadSpace, std::string("bad space block: ") + e.what());
    }
    ioFail(GridIoErrc::BadSpace, "unknown space kind " + std::to_string(kind));
}

} // namespace

GridIoError::GridIoError(GridIoErrc code, const std::string &what)
    : Error(code == GridIoErrc::WriteFailed ? Errc::Io : Errc::Format, what), io_code_(code) {}

void
writeGrid(const Grid &g, std::ostream &os) {
    const GridShape &s = g.shape();
    for (std::int64_t d : {s.n, s.c, s.z, s.x, s.y}) {
        if (d < 0 || d > std::numeric_limits<std::uint32_t>::max()) {
            ioFail(GridIoErrc::DimOverflow, "grid dimension does not fit in 32 bits");
        }
    }
    os.write(kMagic.data(), kMagic.size());
    putLE<std::uint16_t>(os, kGridFormatVersion);
    for (std::int64_t d : {s.n, s.c, s.z, s.x, s.y}) {
        putLE<std::uint32_t>(os, static_cast<std::uint32_t>(d));
    }
    writeSpace(os, g.space());
    writePose(os, g.pose());
    detail::putArrayLE<float>(os, g.data());
    if (!os) {
        ioFail(GridIoErrc::WriteFailed, "failed writing grid stream");
    }
}

Grid
readGrid(std::istream &is) {
    std::array<char, 4> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
        ioFail(GridIoErrc::BadMagic, "bad magic");
    }
    const auto version = need(getLE<std::uint16_t>(is));
    if (version != kGridFormatVersion) {
        ioFail(GridIoErrc::UnsupportedVersion, "unsupported FGRD version " + std::to_string(version));
    }
    std::array<std::uint64_t, 5> d{};
    for (auto &v : d) {
        v = need(getLE<std::uint32_t>(is));
    }
    std::uint64_t total = 1;
    for (auto v : d) {
        if (v != 0 && total > kMaxElements / v) {
            ioFail(GridIoErrc::DimOverflow, "dim overflow");
        }
        total *= v;
    }
    if (total > kMaxElements) {
        ioFail(GridIoErrc::DimOverflow, "dim overflow");
    }
    SpacePtr space = readSpace(is);
    Pose pose = readPose(is);
    const GridShape shape{std::int64_t(d[0]), std::int64_t(d[1]), std::int64_t(d[2]), std::int64_t(d[3]),
                          std::int64_t(d[4])};
    if (shape.dims() != space->dims()) {
        ioFail(GridIoErrc::BadSpace, "header dims " + toString(shape.dims()) +
                                         " inconsistent with space dims " + toString(space->dims()));
    }
    // Check seekable streams before allocating for a header that overstates the payload.
    const auto here = is.tellg();
    if (here != std::istream::pos_type(-1)) {
        is.seekg(0, std::ios::end);
        const auto end = is.tellg();
        is.seekg(here);
        if (end != std::istream::pos_type(-1) && std::uint64_t(end - here) < total * sizeof(float)) {
            ioFail(GridIoErrc::TruncatedPayload, "truncated payload");
        }
    }
    std::vector<float> data(static_cast<std::size_t>(total));
    if (!detail::getArrayLE<float>(is, data)) {
        ioFail(GridIoErrc::TruncatedPayload, "truncated payload");
    }
    try {
        return Grid(std::move(space), std::move(pose), shape, std::move(data));
    } catch (const GridIoError &) {
        throw;
    } catch (const Error &e) {
        ioFail(GridIoErrc::BadSpace, e.what());
    }
}

void
writeGridFile(const Grid &g, const std::filesystem::path &path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        ioFail(GridIoErrc::WriteFailed, "cannot open " + path.string() + " for writing");
    }
    writeGrid(g, os);
}

Grid
readGridFile(const std::filesystem::path &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        fail(Errc::Io, "cannot open grid file " + path.string());
    }
    return readGrid(is);
}

std::vector<char>
serializeGrid(const Grid &g) {
    std::ostringstream os(std::ios::binary);
    writeGrid(g, os);
    const std::string s = os.str();
    return std::vector<char>(s.begin(), s.end());
}

} // namespace gsf
