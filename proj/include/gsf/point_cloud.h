// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gsf/geometry.h>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace gsf {

struct LidarPoint {
    float x = 0.0f;
    float y = 0.0f;
    float z = 0.0f;
    float intensity = 0.0f;
    std::uint16_t beam = 0;
    std::uint16_t azimuth = 0;

    Vec3
    position() const {
        return Vec3(x, y, z);
    }
    bool operator==(const LidarPoint &) const = default;
};

/// LiDAR returns in the sensor frame; `frame_pose` maps them into the reference frame.
struct PointCloud {
    std::vector<LidarPoint> points;
    Pose frame_pose;
};

// Point-cloud binary: u64 count, then per point five little-endian 32-bit
// words: f32 x, y, z, intensity, and u16 beam followed by u16 azimuth.
void writePointCloud(const PointCloud &cloud, std::ostream &os);
PointCloud readPointCloud(std::istream &is);
void writePointCloudFile(const PointCloud &cloud, const std::filesystem::path &path);
PointCloud readPointCloudFile(const std::filesystem::path &path);

/// Throws Errc::NonFinite for non-finite coordinates or intensity.
void validatePointCloud(const PointCloud &cloud);

/// Points grouped by voxel in CSR form. Within a voxel, points keep input order.
struct VoxelBuckets {
    GridDims dims;
    /// Per input point, its flat voxel index or -1 if dropped.
    std::vector<std::int64_t> voxel_of_point;
    /// size dims.count() + 1
    std::vector<std::int64_t> offsets;
    /// Input point indices ordered by voxel.
    std::vector<std::int64_t> point_indices;
    /// Per input point, its position in the grid's local frame.
    std::vector<Vec3> local_positions;
    std::vector<float> intensities;

    std::int64_t
    bucketSize(std::int64_t voxel) const {
        return offsets[std::size_t(voxel + 1)] - offsets[std::size_t(voxel)];
    }
};

/// Assign each point to the voxel containing it (half-open cells); points
/// outside the space are dropped. `pose` is the grid-to-reference pose.
VoxelBuckets voxelize(const PointCloud &cloud, const CartesianSpace &space, const Pose &pose);

} // namespace gsf
