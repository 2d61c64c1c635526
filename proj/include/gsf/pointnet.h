// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gsf/grid.h>
#include <gsf/point_cloud.h>

#include <Eigen/Core>

#include <cstdint>
#include <memory>

namespace gsf {

/// Per-point input: local position, offset from the bucket centroid, intensity.
inline constexpr int kPointFeatureCount = 7;

/// Two per-point affine layers, each followed by a rectifier.
struct PointNetWeights {
    Eigen::MatrixXd w1; // hidden × 7
    Eigen::VectorXd b1;
    Eigen::MatrixXd w2; // embed × hidden
    Eigen::VectorXd b2;

    /// Uniform in ±1/sqrt(fan_in), drawn from a generator seeded with `seed`.
    static PointNetWeights init(int hidden, int embed, std::uint64_t seed);
    static PointNetWeights zerosLike(const PointNetWeights &other);

    int
    hidden() const {
        return int(w1.rows());
    }
    int
    embed() const {
        return int(w2.rows());
    }
    std::int64_t parameterCount() const;

    /// Throws on inconsistent shapes or non-finite values.
    void validate() const;
};

using PointFeatures = Eigen::Matrix<double, kPointFeatureCount, 1>;

/// Input features of point `index` given its bucket's centroid.
PointFeatures pointFeatures(const VoxelBuckets &buckets, std::int64_t index, const Vec3 &centroid);

/// Mean local position of the points in `voxel`.
Vec3 bucketCentroid(const VoxelBuckets &buckets, std::int64_t voxel);

/// Per-voxel elementwise max of the per-point embeddings; empty voxels are zero.
template <std::floating_point T>
BasicGrid<T> pointnetEncode(const VoxelBuckets &buckets, const PointNetWeights &weights,
                            std::shared_ptr<const CartesianSpace> space, const Pose &pose);

/// Gradient of <upstream, pointnetEncode(...)> with respect to the weights.
/// Max-pool ties route the gradient to the lowest point index.
template <std::floating_point T>
PointNetWeights pointnetVjp(const BasicGrid<T> &upstream, const VoxelBuckets &buckets,
                            const PointNetWeights &weights);

} // namespace gsf
