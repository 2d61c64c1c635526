// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gsf/grid.h>
#include <gsf/image.h>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace gsf {

enum class Reduction { Mean, Sum };
enum class PixelSampling { Nearest, Bilinear };

struct RaycastOptions {
    Reduction reduction = Reduction::Mean;
    PixelSampling sampling = PixelSampling::Nearest;
};

/// One valid (voxel, camera) projection. u and v are feature-map pixels.
struct VoxelCameraPair {
    std::int64_t voxel_id = 0;
    std::int32_t camera_index = 0;
    double u = 0.0;
    double v = 0.0;

    bool operator==(const VoxelCameraPair &) const = default;
};

/// Rows sorted by (voxel_id, camera_index).
using VoxelCameraPairTable = std::vector<VoxelCameraPair>;

/// Projection of a reference-frame point into a feature map of the given
/// size. Valid when in front of the camera and within [0, cols-1] x [0, rows-1]
/// after dividing the full-resolution pixel by the stride.
std::optional<std::array<double, 2>> projectToFeatureMap(const CameraModel &camera, int stride,
                                                         std::int64_t rows, std::int64_t cols,
                                                         const Vec3 &point_world);

/// Pixels and weights read when sampling at (u, v).
struct PixelTaps {
    std::array<std::int64_t, 4> offset{};
    std::array<double, 4> weight{};
    int count = 0;
};

PixelTaps pixelTaps(double u, double v, std::int64_t rows, std::int64_t cols, PixelSampling sampling);

template <std::floating_point T> struct GatherResult {
    VoxelCameraPairTable table;
    /// Row-major (table.size(), channels).
    std::vector<T> gathered;
    std::int64_t channels = 0;
};

/// Project every voxel centroid into every camera and gather features for the
/// valid pairs. Throws Errc::ShapeMismatch if the maps disagree on channels.
template <std::floating_point T>
GatherResult<T> projectAndGather(std::span<const ImageFeatureMap<T>> features, const CartesianSpace &space,
                                 const Pose &pose, const RaycastOptions &options = {});

/// Per-voxel reduction of gathered rows, (num_voxels, channels) row-major.
/// Voxels without rows stay zero.
template <std::floating_point T>
std::vector<T> scatterReduce(std::span<const VoxelCameraPair> table, std::span<const T> gathered,
                             std::int64_t channels, std::int64_t num_voxels, Reduction reduction);

/// Uplift image features into the Cartesian space. Output has C + 3 channels:
/// the reduced features followed by voxel-center (x, y, z) in the pose's base frame.
template <std::floating_point T>
BasicGrid<T> raycast(std::span<const ImageFeatureMap<T>> features,
                     std::shared_ptr<const CartesianSpace> space, const Pose &pose,
                     const RaycastOptions &options = {});

/// Adjoint of the gather and reduce phases. Returns one (C, rows, cols)
/// gradient per feature map; coordinate channels of `upstream` are ignored.
template <std::floating_point T>
std::vector<std::vector<T>> raycastVjp(const BasicGrid<T> &upstream, std::span<const VoxelCameraPair> table,
                                       std::span<const ImageFeatureMap<T>> features,
                                       const RaycastOptions &options = {});

} // namespace gsf
