// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gsf/grid.h>
#include <gsf/point_cloud.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace gsf {

enum class FusionMode { Concat, Sum };

/// Warp every grid to the common frame and combine them. Grids already in the
/// common space under an identical pose are used without resampling.
Grid fuse(std::span<const Grid> grids, SpacePtr common_space, const Pose &common_pose,
          FusionMode mode = FusionMode::Concat);

/// User-defined network stage mapping a grid in the common space to a grid.
using SubNetwork = std::function<Grid(const Grid &)>;

inline Grid
identitySubNetwork(const Grid &g) {
    return g;
}

/// Shared stage between encoders and heads: fuse in a common space, then run the sub-network.
class Backbone {
  public:
    Backbone(SpacePtr common_space, Pose common_pose, FusionMode mode = FusionMode::Concat,
             SubNetwork network = identitySubNetwork);

    Grid run(std::span<const Grid> encoder_outputs) const;

    const SpacePtr &
    commonSpace() const {
        return space_;
    }
    const Pose &
    commonPose() const {
        return pose_;
    }

  private:
    SpacePtr space_;
    Pose pose_;
    FusionMode mode_;
    SubNetwork network_;
};

/// Brings a backbone grid into a head's space. Identity when space and pose
/// already match exactly, one space_warp otherwise.
Grid headAdapt(const Grid &backbone_out, SpacePtr head_space, const Pose &head_pose);

/// C=1 grid holding 1 where at least one point falls in the voxel, else 0.
Grid occupancyGroundTruth(const PointCloud &cloud, std::shared_ptr<const CartesianSpace> space, const Pose &pose);

struct OccupancyMetrics {
    std::int64_t true_positives = 0;
    std::int64_t false_positives = 0;
    std::int64_t false_negatives = 0;
    double precision = 0.0;
    double recall = 0.0;
    double iou = 0.0;
};

/// A voxel is predicted occupied when its probability is >= threshold. Ratios
/// with an empty denominator are reported as 1.
OccupancyMetrics occupancyMetrics(const Grid &prediction, const Grid &truth, double threshold = 0.5);

} // namespace gsf
