// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/error.h>
#include <gsf/point_cloud.h>

#include "binary_io.h"

#include <cmath>
#include <fstream>

namespace gsf {

namespace {

// One u64 count plus 20 bytes per point must fit in memory; cap at 2^28 points.
constexpr std::uint64_t kMaxPoints = std::uint64_t(1) << 28;

} // namespace

void
writePointCloud(const PointCloud &cloud, std::ostream &os) {
    detail::putLE<std::uint64_t>(os, cloud.points.size());
    for (const LidarPoint &p : cloud.points) {
        detail::putLE<float>(os, p.x);
        detail::putLE<float>(os, p.y);
        detail::putLE<float>(os, p.z);
        detail::putLE<float>(os, p.intensity);
        detail::putLE<std::uint16_t>(os, p.beam);
        detail::putLE<std::uint16_t>(os, p.azimuth);
    }
    if (!os) {
        fail(Errc::Io, "failed writing point cloud");
    }
}

PointCloud
readPointCloud(std::istream &is) {
    auto count = detail::getLE<std::uint64_t>(is);
    if (!count) {
        fail(Errc::Format, "truncated point cloud header");
    }
    if (*count > kMaxPoints) {
        fail(Errc::Format, "point count overflow");
    }
    PointCloud cloud;
    cloud.points.resize(std::size_t(*count));
    for (LidarPoint &p : cloud.points) {
        auto x = detail::getLE<float>(is);
        auto y = detail::getLE<float>(is);
        auto z = detail::getLE<float>(is);
        auto i = detail::getLE<float>(is);
        auto b = detail::getLE<std::uint16_t>(is);
        auto a = detail::getLE<std::uint16_t>(is);
        if (!x || !y || !z || !i || !b || !a) {
            fail(Errc::Format, "truncated point cloud payload");
        }
        p = LidarPoint{*x, *y, *z, *i, *b, *a};
    }
    return cloud;
}

void
writePointCloudFile(const PointCloud &cloud, const std::filesystem::path &path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        fail(Errc::Io, "cannot open " + path.string() + " for writing");
    }
    writePointCloud(cloud, os);
}

PointCloud
readPointCloudFile(const std::filesystem::path &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        fail(Errc::Io, "cannot open point cloud " + path.string());
    }
    return readPointCloud(is);
}

void
validatePointCloud(const PointCloud &cloud) {
    for (const LidarPoint &p : cloud.points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z) || !std::isfinite(p.intensity)) {
            fail(Errc::NonFinite, "point cloud contains non-finite values");
        }
    }
}

VoxelBuckets
voxelize(const PointCloud &cloud, const CartesianSpace &space, const Pose &pose) {
    validatePointCloud(cloud);
    VoxelBuckets b;
    b.dims = space.dims();
    const std::int64_t num_voxels = b.dims.count();
    const std::size_t n = cloud.points.size();
    b.voxel_of_point.assign(n, -1);
    b.local_positions.resize(n);
    b.intensities.resize(n);
    b.offsets.assign(std::size_t(num_voxels) + 1, 0);

    const Pose sensor_to_grid = compose(pose.inverse(), cloud.frame_pose);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 local = sensor_to_grid.apply(cloud.points[i].position());
        b.local_positions[i] = local;
        b.intensities[i] = cloud.points[i].intensity;
        if (auto cell = space.cellOf(local)) {
            const std::int64_t v = space.flatIndex((*cell)[0], (*cell)[1], (*cell)[2]);
            b.voxel_of_point[i] = v;
            ++b.offsets[std::size_t(v) + 1];
        }
    }
    for (std::int64_t v = 0; v < num_voxels; ++v) {
        b.offsets[std::size_t(v) + 1] += b.offsets[std::size_t(v)];
    }
    b.point_indices.resize(std::size_t(b.offsets.back()));
    std::vector<std::int64_t> cursor(b.offsets.begin(), b.offsets.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t v = b.voxel_of_point[i];
        if (v >= 0) {
            b.point_indices[std::size_t(cursor[std::size_t(v)]++)] = std::int64_t(i);
        }
    }
    return b;
}

} // namespace gsf
