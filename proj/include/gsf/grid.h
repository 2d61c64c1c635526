// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gsf/error.h>
#include <gsf/geometry.h>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gsf {

/// Logical extent of a grid tensor, row-major with Y fastest.
struct GridShape {
    std::int64_t n = 0;
    std::int64_t c = 0;
    std::int64_t z = 0;
    std::int64_t x = 0;
    std::int64_t y = 0;

    std::int64_t
    spatial() const {
        return z * x * y;
    }
    std::int64_t
    numel() const {
        return n * c * spatial();
    }
    GridDims
    dims() const {
        return GridDims{z, x, y};
    }
    bool operator==(const GridShape &) const = default;
};

std::string toString(const GridShape &shape);

/// Dense (N, C, Z, X, Y) feature volume bound to a Space and a grid-to-reference Pose.
template <std::floating_point T> class BasicGrid {
  public:
    using value_type = T;

    BasicGrid() = default;

    /// Zero-filled grid whose (Z, X, Y) extent is taken from `space`.
    BasicGrid(SpacePtr space, Pose pose, std::int64_t n, std::int64_t c)
        : space_(std::move(space)), pose_(std::move(pose)) {
        if (!space_) {
            fail(Errc::InvalidArgument, "grid requires a space");
        }
        if (n < 1 || c < 0) {
            fail(Errc::InvalidArgument, "grid batch must be >= 1 and channels >= 0");
        }
        const GridDims d = space_->dims();
        shape_ = GridShape{n, c, d.z, d.x, d.y};
        data_.assign(static_cast<std::size_t>(shape_.numel()), T(0));
    }

    BasicGrid(SpacePtr space, Pose pose, GridShape shape, std::vector<T> data)
        : space_(std::move(space)), pose_(std::move(pose)), shape_(shape), data_(std::move(data)) {
        if (!space_) {
            fail(Errc::InvalidArgument, "grid requires a space");
        }
        if (shape_.dims() != space_->dims()) {
            fail(Errc::ShapeMismatch,
                 "grid extent " + toString(shape_.dims()) + " does not match space dims " +
                     toString(space_->dims()));
        }
        if (shape_.n < 1 || shape_.c < 0) {
            fail(Errc::InvalidArgument, "grid batch must be >= 1 and channels >= 0");
        }
        if (static_cast<std::int64_t>(data_.size()) != shape_.numel()) {
            fail(Errc::ShapeMismatch, "grid payload size does not match its shape");
        }
    }

    const GridShape &
    shape() const {
        return shape_;
    }
    const Space &
    space() const {
        return *space_;
    }
    const SpacePtr &
    spacePtr() const {
        return space_;
    }
    const Pose &
    pose() const {
        return pose_;
    }

    std::span<const T>
    data() const {
        return data_;
    }
    std::span<T>
    data() {
        return data_;
    }
    const std::vector<T> &
    values() const {
        return data_;
    }

    std::int64_t
    offset(std::int64_t n, std::int64_t c, std::int64_t z, std::int64_t x, std::int64_t y) const {
        return (((n * shape_.c + c) * shape_.z + z) * shape_.x + x) * shape_.y + y;
    }
    T
    at(std::int64_t n, std::int64_t c, std::int64_t z, std::int64_t x, std::int64_t y) const {
        return data_[static_cast<std::size_t>(offset(n, c, z, x, y))];
    }
    T &
    at(std::int64_t n, std::int64_t c, std::int64_t z, std::int64_t x, std::int64_t y) {
        return data_[static_cast<std::size_t>(offset(n, c, z, x, y))];
    }

    /// Contiguous (Z, X, Y) block of one channel.
    std::span<const T>
    channel(std::int64_t n, std::int64_t c) const {
        return std::span<const T>(data_).subspan(static_cast<std::size_t>(offset(n, c, 0, 0, 0)),
                                                 static_cast<std::size_t>(shape_.spatial()));
    }
    std::span<T>
    channel(std::int64_t n, std::int64_t c) {
        return std::span<T>(data_).subspan(static_cast<std::size_t>(offset(n, c, 0, 0, 0)),
                                           static_cast<std::size_t>(shape_.spatial()));
    }

    bool
    allFinite() const {
        return std::all_of(data_.begin(), data_.end(), [](T v) { return std::isfinite(v); });
    }

    template <std::floating_point U>
    BasicGrid<U>
    cast() const {
        return BasicGrid<U>(space_, pose_, shape_, std::vector<U>(data_.begin(), data_.end()));
    }

  private:
    SpacePtr space_;
    Pose pose_;
    GridShape shape_;
    std::vector<T> data_;
};

using Grid = BasicGrid<float>;
using GridD = BasicGrid<double>;

/// True when both grids sit in equal spaces under exactly equal poses.
template <std::floating_point T>
bool
sameFrame(const BasicGrid<T> &a, const BasicGrid<T> &b) {
    return a.space().equals(b.space()) && a.pose() == b.pose();
}

template <std::floating_point T>
void
requireFinite(const BasicGrid<T> &g, const std::string &what) {
    if (!g.allFinite()) {
        fail(Errc::NonFinite, what + " contains NaN or Inf");
    }
}

/// Channels of `a` followed by the channels of `b`.
template <std::floating_point T>
BasicGrid<T>
concatChannels(const BasicGrid<T> &a, const BasicGrid<T> &b) {
    if (!a.space().equals(b.space())) {
        fail(Errc::SpaceMismatch, "concat_channels: space differs (" + a.space().describe() + " vs " +
                                      b.space().describe() + ")");
    }
    if (!(a.pose() == b.pose())) {
        fail(Errc::SpaceMismatch, "concat_channels: pose differs");
    }
    if (a.shape().n != b.shape().n) {
        fail(Errc::ShapeMismatch, "concat_channels: batch size N differs");
    }
    GridShape s = a.shape();
    s.c = a.shape().c + b.shape().c;
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(s.numel()));
    const std::size_t block_a = static_cast<std::size_t>(a.shape().c * a.shape().spatial());
    const std::size_t block_b = static_cast<std::size_t>(b.shape().c * b.shape().spatial());
    for (std::int64_t n = 0; n < s.n; ++n) {
        auto pa = a.data().subspan(static_cast<std::size_t>(n) * block_a, block_a);
        auto pb = b.data().subspan(static_cast<std::size_t>(n) * block_b, block_b);
        out.insert(out.end(), pa.begin(), pa.end());
        out.insert(out.end(), pb.begin(), pb.end());
    }
    return BasicGrid<T>(a.spacePtr(), a.pose(), s, std::move(out));
}

/// Channels [begin, begin + count).
template <std::floating_point T>
BasicGrid<T>
sliceChannels(const BasicGrid<T> &g, std::int64_t begin, std::int64_t count) {
    if (begin < 0 || count < 0 || begin + count > g.shape().c) {
        fail(Errc::OutOfRange, "slice_channels: channel range out of bounds");
    }
    GridShape s = g.shape();
    s.c = count;
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(s.numel()));
    for (std::int64_t n = 0; n < s.n; ++n) {
        for (std::int64_t c = begin; c < begin + count; ++c) {
            auto ch = g.channel(n, c);
            out.insert(out.end(), ch.begin(), ch.end());
        }
    }
    return BasicGrid<T>(g.spacePtr(), g.pose(), s, std::move(out));
}

/// C=3 grid of voxel-center (x, y, z) coordinates in the pose's base frame.
template <std::floating_point T>
BasicGrid<T>
coordinateGrid(std::shared_ptr<const CartesianSpace> space, const Pose &pose, std::int64_t n = 1) {
    BasicGrid<T> g(space, pose, n, 3);
    const GridDims d = space->dims();
    for (std::int64_t z = 0; z < d.z; ++z) {
        for (std::int64_t x = 0; x < d.x; ++x) {
            for (std::int64_t y = 0; y < d.y; ++y) {
                const Vec3 p = pose.apply(space->gridToWorld(Vec3(double(z), double(x), double(y))));
                for (std::int64_t b = 0; b < n; ++b) {
                    g.at(b, 0, z, x, y) = static_cast<T>(p.x());
                    g.at(b, 1, z, x, y) = static_cast<T>(p.y());
                    g.at(b, 2, z, x, y) = static_cast<T>(p.z());
                }
            }
        }
    }
    return g;
}

} // namespace gsf
