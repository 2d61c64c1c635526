// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gsf/grid.h>

#include <array>
#include <cstdint>
#include <span>

namespace gsf {

/// Trilinear footprint of one target voxel in the flattened (Z, X, Y) source
/// block. Unused corners carry index -1 and weight 0.
struct WarpStencil {
    std::array<std::int64_t, 8> index;
    std::array<double, 8> weight;
};

/// Maps target voxels to their source stencils. The pose correction
/// inverse(source_pose) ∘ target_pose is folded into one transform up front.
class WarpSampler {
  public:
    WarpSampler(const Space &source_space, const Pose &source_pose, const Space &target_space,
                const Pose &target_pose);

    /// Sample points outside the source extent get an empty stencil.
    WarpStencil stencil(std::int64_t z, std::int64_t x, std::int64_t y) const;

    /// Continuous source coordinate for a target voxel.
    GridPoint samplePoint(std::int64_t z, std::int64_t x, std::int64_t y) const;

  private:
    const Space &source_;
    const Space &target_;
    Pose target_to_source_;
    GridDims source_dims_;
};

/// Resample `source` into (target_space, target_pose) by trilinear
/// interpolation anchored at voxel centers, with zero padding outside the
/// source extent. Throws Errc::NonFinite if the source holds NaN/Inf.
template <std::floating_point T>
BasicGrid<T> spaceWarp(const BasicGrid<T> &source, SpacePtr target_space, const Pose &target_pose);

/// One link of a warp chain. Each pose is relative to the previous link's
/// frame; the first is relative to the source grid's reference frame.
struct WarpHop {
    SpacePtr space;
    Pose pose;
};

/// Product of the hop poses, first to last. A single hop returns its pose as is.
Pose composeChain(std::span<const WarpHop> hops);

/// Warp through a chain of spaces. The poses are composed analytically and
/// only the last space is sampled, so exactly one interpolation happens.
template <std::floating_point T>
BasicGrid<T> spaceWarpChain(const BasicGrid<T> &source, std::span<const WarpHop> hops);

/// Adjoint of spaceWarp with respect to the source features. `upstream` must
/// be shaped like the warp output; the result is bound to the source frame.
template <std::floating_point T>
BasicGrid<T> spaceWarpVjp(const BasicGrid<T> &source, SpacePtr target_space, const Pose &target_pose,
                          const BasicGrid<T> &upstream);

} // namespace gsf
