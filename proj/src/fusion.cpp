// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/fusion.h>
#include <gsf/spacewarp.h>

namespace gsf {

namespace {

Grid
toCommon(const Grid &g, const SpacePtr &space, const Pose &pose) {
    if (g.space().equals(*space) && g.pose() == pose) {
        return g;
    }
    return spaceWarp(g, space, pose);
}

double
ratio(std::int64_t num, std::int64_t den) {
    return den == 0 ? 1.0 : double(num) / double(den);
}

} // namespace

Grid
fuse(std::span<const Grid> grids, SpacePtr common_space, const Pose &common_pose, FusionMode mode) {
    if (grids.empty()) {
        fail(Errc::InvalidArgument, "fuse: at least one grid is required");
    }
    if (!common_space) {
        fail(Errc::InvalidArgument, "fuse: missing common space");
    }
    for (const Grid &g : grids) {
        if (g.shape().n != grids.front().shape().n) {
            fail(Errc::ShapeMismatch, "fuse: grids disagree on batch size N");
        }
        if (mode == FusionMode::Sum && g.shape().c != grids.front().shape().c) {
            fail(Errc::ShapeMismatch, "fuse: sum mode needs equal channel counts");
        }
    }
    Grid acc = toCommon(grids.front(), common_space, common_pose);
    for (std::size_t i = 1; i < grids.size(); ++i) {
        Grid warped = toCommon(grids[i], common_space, common_pose);
        if (mode == FusionMode::Concat) {
            acc = concatChannels(acc, warped);
        } else {
            auto dst = acc.data();
            auto src = warped.data();
            for (std::size_t k = 0; k < dst.size(); ++k) {
                dst[k] += src[k];
            }
        }
    }
    return acc;
}

Backbone::Backbone(SpacePtr common_space, Pose common_pose, FusionMode mode, SubNetwork network)
    : space_(std::move(common_space)), pose_(std::move(common_pose)), mode_(mode), network_(std::move(network)) {
    if (!space_) {
        fail(Errc::InvalidArgument, "backbone: missing common space");
    }
    if (!network_) {
        network_ = identitySubNetwork;
    }
}

Grid
Backbone::run(std::span<const Grid> encoder_outputs) const {
    return network_(fuse(encoder_outputs, space_, pose_, mode_));
}

Grid
headAdapt(const Grid &backbone_out, SpacePtr head_space, const Pose &head_pose) {
    if (!head_space) {
        fail(Errc::InvalidArgument, "head_adapt: missing head space");
    }
    return toCommon(backbone_out, head_space, head_pose);
}

Grid
occupancyGroundTruth(const PointCloud &cloud, std::shared_ptr<const CartesianSpace> space, const Pose &pose) {
    const VoxelBuckets buckets = voxelize(cloud, *space, pose);
    Grid out(space, pose, 1, 1);
    auto ch = out.channel(0, 0);
    for (std::int64_t v : buckets.voxel_of_point) {
        if (v >= 0) {
            ch[std::size_t(v)] = 1.0f;
        }
    }
    return out;
}

OccupancyMetrics
occupancyMetrics(const Grid &prediction, const Grid &truth, double threshold) {
    if (prediction.shape().dims() != truth.shape().dims() || prediction.shape().n != truth.shape().n ||
        prediction.shape().c != truth.shape().c) {
        fail(Errc::ShapeMismatch, "occupancy_metrics: prediction " + toString(prediction.shape()) +
                                      " and truth " + toString(truth.shape()) + " differ");
    }
    if (!prediction.space().equals(truth.space())) {
        fail(Errc::SpaceMismatch, "occupancy_metrics: prediction and truth live in different spaces");
    }
    OccupancyMetrics m;
    auto p = prediction.data();
    auto t = truth.data();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const bool pred = double(p[i]) >= threshold;
        const bool occ = t[i] >= 0.5f;
        m.true_positives += pred && occ;
        m.false_positives += pred && !occ;
        m.false_negatives += !pred && occ;
    }
    m.precision = ratio(m.true_positives, m.true_positives + m.false_positives);
    m.recall = ratio(m.true_positives, m.true_positives + m.false_negatives);
    m.iou = ratio(m.true_positives, m.true_positives + m.false_positives + m.false_negatives);
    return m;
}

} // namespace gsf
