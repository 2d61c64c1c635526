// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/fusion.h>
#include <gsf/spacewarp.h>

#include "oracles.h"

#include <gtest/gtest.h>

namespace gsf {
namespace {

using oracle::Rng;

std::shared_ptr<const CartesianSpace>
lidarPresetSpace() {
    return CartesianSpace::make(Vec3(-51.2, -51.2, -2), Vec3(51.2, 51.2, 12), Vec3(0.32, 0.32, 14));
}

std::shared_ptr<const CartesianSpace>
raycastPresetSpace() {
    return CartesianSpace::make(Vec3(-51.2, -51.2, -2), Vec3(51.2, 51.2, 12), Vec3(0.4, 0.4, 1));
}

bool
sameValues(const Grid &a, const Grid &b) {
    return a.shape() == b.shape() && std::equal(a.data().begin(), a.data().end(), b.data().begin());
}

TEST(Fuse, SingleGridInCommonSpaceIsUnchanged) {
    Rng rng(1);
    const auto space = oracle::randomCartesian(rng, GridDims{3, 4, 5});
    const Pose pose = oracle::randomPose(rng);
    const Grid g = oracle::randomGrid<float>(rng, space, pose, 1, 3);
    const Grid out = fuse(std::span(&g, 1), space, pose);
    EXPECT_TRUE(sameValues(out, g));
    EXPECT_EQ(out.pose(), pose);
}

TEST(Fuse, ConcatAddsChannelsAndPreservesOrder) {
    Rng rng(2);
    const auto common = oracle::randomCartesian(rng, GridDims{3, 6, 5});
    const Pose common_pose = oracle::randomPose(rng, 0.5, 1.0);
    std::vector<Grid> grids;
    const std::int64_t channels[] = {2, 1, 3};
    for (std::int64_t c : channels) {
        const auto s = oracle::randomCartesian(rng, GridDims{4, 5, 6});
        grids.push_back(oracle::randomGrid<float>(rng, s, compose(common_pose, oracle::randomPose(rng, 0.2, 0.5)), 1, c));
    }
    const Grid out = fuse(grids, common, common_pose);
    ASSERT_EQ(out.shape().c, 6);
    EXPECT_TRUE(out.space().equals(*common));
    std::int64_t begin = 0;
    for (std::size_t k = 0; k < grids.size(); ++k) {
        const Grid expected = spaceWarp(grids[k], common, common_pose);
        EXPECT_TRUE(sameValues(sliceChannels(out, begin, channels[k]), expected)) << k;
        begin += channels[k];
    }
}

TEST(Fuse, SumAddsWarpedGrids) {
    Rng rng(3);
    const auto common = oracle::randomCartesian(rng, GridDims{2, 4, 4});
    const Pose pose = oracle::randomPose(rng, 0.5, 1.0);
    const Grid a = oracle::randomGrid<float>(rng, common, pose, 1, 2);
    const Grid b = oracle::randomGrid<float>(rng, oracle::randomCartesian(rng, GridDims{3, 3, 3}),
                                             compose(pose, oracle::randomPose(rng, 0.2, 0.3)), 1, 2);
    const std::vector<Grid> grids{a, b};
    const Grid out = fuse(grids, common, pose, FusionMode::Sum);
    const Grid wb = spaceWarp(b, common, pose);
    ASSERT_EQ(out.shape(), a.shape());
    for (std::size_t i = 0; i < out.data().size(); ++i) {
        EXPECT_FLOAT_EQ(out.data()[i], a.data()[i] + wb.data()[i]);
    }
}

TEST(Fuse, SumWithUnequalChannelsThrows) {
    Rng rng(4);
    const auto space = oracle::randomCartesian(rng, GridDims{2, 2, 2});
    const std::vector<Grid> grids{Grid(space, Pose(), 1, 2), Grid(space, Pose(), 1, 3)};
    EXPECT_THROW(fuse(grids, space, Pose(), FusionMode::Sum), Error);
    EXPECT_NO_THROW(fuse(grids, space, Pose(), FusionMode::Concat));
}

TEST(Fuse, EmptyListThrows) {
    const auto space = CartesianSpace::make(Vec3::Zero(), Vec3::Ones(), Vec3::Ones());
    EXPECT_THROW(fuse(std::span<const Grid>(), space, Pose()), Error);
}

TEST(Fuse, PanoramicPresetFusesIntoLidarSpace) {
    const Grid lidar(lidarPresetSpace(), Pose(), 1, 4);
    const Grid ray(raycastPresetSpace(), Pose(), 1, 3);
    ASSERT_EQ(lidar.shape().dims(), (GridDims{1, 320, 320}));
    ASSERT_EQ(ray.shape().dims(), (GridDims{14, 256, 256}));
    const std::vector<Grid> grids{lidar, ray};
    const Grid out = fuse(grids, lidarPresetSpace(), Pose());
    EXPECT_EQ(out.shape(), (GridShape{1, 7, 1, 320, 320}));
}

TEST(Backbone, IdentitySubNetworkEqualsFuse) {
    Rng rng(5);
    const auto common = oracle::randomCartesian(rng, GridDims{2, 5, 5});
    const Pose pose = oracle::randomPose(rng, 0.5, 1.0);
    const std::vector<Grid> grids{
        oracle::randomGrid<float>(rng, oracle::randomCartesian(rng, GridDims{3, 4, 4}), pose, 1, 2),
        oracle::randomGrid<float>(rng, common, pose, 1, 1)};
    const Backbone backbone(common, pose);
    EXPECT_TRUE(sameValues(backbone.run(grids), fuse(grids, common, pose)));
}

TEST(Backbone, RunsTheSubNetworkOnTheFusedGrid) {
    Rng rng(6);
    const auto common = oracle::randomCartesian(rng, GridDims{2, 3, 3});
    const Grid g = oracle::randomGrid<float>(rng, common, Pose(), 1, 2);
    const Backbone backbone(common, Pose(), FusionMode::Concat, [](const Grid &x) {
        Grid y = x;
        for (float &v : y.data()) {
            v *= 2.0f;
        }
        return y;
    });
    const Grid out = backbone.run(std::span(&g, 1));
    for (std::size_t i = 0; i < out.data().size(); ++i) {
        EXPECT_EQ(out.data()[i], 2.0f * g.data()[i]);
    }
}

TEST(HeadAdapt, MatchingFrameIsIdentity) {
    Rng rng(7);
    const auto space = oracle::randomCartesian(rng, GridDims{2, 3, 4});
    const Pose pose = oracle::randomPose(rng);
    const Grid g = oracle::randomGrid<float>(rng, space, pose, 1, 2);
    EXPECT_TRUE(sameValues(headAdapt(g, space, pose), g));
}

TEST(HeadAdapt, CoarserHeadHalvesDims) {
    const auto fine = CartesianSpace::make(Vec3(-8, -8, 0), Vec3(8, 8, 4), Vec3(0.5, 0.5, 0.5));
    const auto coarse = CartesianSpace::make(Vec3(-8, -8, 0), Vec3(8, 8, 4), Vec3(1, 1, 1));
    const Grid g(fine, Pose(), 1, 2);
    const Grid out = headAdapt(g, coarse, Pose());
    EXPECT_EQ(out.shape().dims(), (GridDims{g.shape().z / 2, g.shape().x / 2, g.shape().y / 2}));
}

TEST(HeadAdapt, FinerSubRangeMatchesSpaceWarp) {
    Rng rng(8);
    const auto coarse = CartesianSpace::make(Vec3(-4, -4, -1), Vec3(4, 4, 3), Vec3(1, 1, 1));
    const auto finer = CartesianSpace::make(Vec3(-2, -1, 0), Vec3(2, 3, 2), Vec3(0.25, 0.25, 0.5));
    const Pose pose = oracle::randomPose(rng, 0.3, 1.0);
    const Grid g = oracle::randomGrid<float>(rng, coarse, pose, 1, 3);
    const Grid out = headAdapt(g, finer, pose);
    const Grid expected = spaceWarp(g, finer, pose);
    EXPECT_TRUE(sameValues(out, expected));
    // Independent trilinear oracle at each fine voxel center.
    const Pose to_source = compose(pose.inverse(), pose);
    for (std::int64_t z = 0; z < out.shape().z; ++z) {
        for (std::int64_t x = 0; x < out.shape().x; ++x) {
            for (std::int64_t y = 0; y < out.shape().y; ++y) {
                const Vec3 idx = coarse->worldToGrid(to_source.apply(finer->voxelCenter(z, x, y))).index;
                for (std::int64_t c = 0; c < 3; ++c) {
                    EXPECT_NEAR(out.at(0, c, z, x, y), oracle::trilinearAt(g, 0, c, idx), 1e-5);
                }
            }
        }
    }
}

TEST(Occupancy, EmptyCloudIsAllZero) {
    const auto space = CartesianSpace::make(Vec3::Zero(), Vec3(4, 4, 2), Vec3::Ones());
    const Grid g = occupancyGroundTruth(PointCloud{}, space, Pose());
    EXPECT_EQ(g.shape(), (GridShape{1, 1, 2, 4, 4}));
    for (float v : g.data()) {
        EXPECT_EQ(v, 0.0f);
    }
}

TEST(Occupancy, SinglePointOccupiesOneVoxel) {
    const auto space = CartesianSpace::make(Vec3::Zero(), Vec3(4, 4, 2), Vec3::Ones());
    PointCloud cloud;
    cloud.points.push_back(LidarPoint{2.5f, 1.5f, 0.5f, 0.f, 0, 0});
    const Grid g = occupancyGroundTruth(cloud, space, Pose());
    float total = 0;
    for (float v : g.data()) {
        total += v;
    }
    EXPECT_EQ(total, 1.0f);
    EXPECT_EQ(g.at(0, 0, 0, 2, 1), 1.0f);
}

TEST(Occupancy, MatchesBruteForceOracle) {
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const auto space = oracle::randomCartesian(rng, GridDims{4, 8, 8});
        const Pose pose = oracle::randomPose(rng);
        PointCloud cloud = oracle::randomCloud(rng, *space, pose, 500);
        cloud.frame_pose = oracle::randomPose(rng);
        const Grid g = occupancyGroundTruth(cloud, space, pose);
        const std::vector<float> expected = oracle::bruteOccupancy(cloud, *space, pose);
        ASSERT_EQ(g.data().size(), expected.size());
        EXPECT_TRUE(std::equal(expected.begin(), expected.end(), g.data().begin()));
    }
}

TEST(Occupancy, AddingPointsNeverClearsVoxels) {
    Rng rng(10);
    const auto space = oracle::randomCartesian(rng, GridDims{3, 6, 6});
    const Pose pose = oracle::randomPose(rng);
    PointCloud cloud = oracle::randomCloud(rng, *space, pose, 50);
    Grid before = occupancyGroundTruth(cloud, space, pose);
    for (int step = 0; step < 5; ++step) {
        const PointCloud more = oracle::randomCloud(rng, *space, pose, 40);
        cloud.points.insert(cloud.points.end(), more.points.begin(), more.points.end());
        const Grid after = occupancyGroundTruth(cloud, space, pose);
        for (std::size_t i = 0; i < after.data().size(); ++i) {
            EXPECT_GE(after.data()[i], before.data()[i]);
        }
        before = after;
    }
}

TEST(OccupancyMetrics, PerfectPrediction) {
    Rng rng(11);
    const auto space = CartesianSpace::make(Vec3::Zero(), Vec3(4, 4, 2), Vec3::Ones());
    const Grid truth = occupancyGroundTruth(oracle::randomCloud(rng, *space, Pose(), 10), space, Pose());
    const OccupancyMetrics m = occupancyMetrics(truth, truth);
    EXPECT_EQ(m.precision, 1.0);
    EXPECT_EQ(m.recall, 1.0);
    EXPECT_EQ(m.iou, 1.0);
}

TEST(OccupancyMetrics, AllZeroPredictionHasZeroRecall) {
    Rng rng(12);
    const auto space = CartesianSpace::make(Vec3::Zero(), Vec3(4, 4, 2), Vec3::Ones());
    const Grid truth = occupancyGroundTruth(oracle::randomCloud(rng, *space, Pose(), 10), space, Pose());
    const OccupancyMetrics m = occupancyMetrics(Grid(space, Pose(), 1, 1), truth);
    EXPECT_EQ(m.recall, 0.0);
    EXPECT_EQ(m.true_positives, 0);
}

TEST(OccupancyMetrics, HandBuiltConfusion) {
    const auto space = CartesianSpace::make(Vec3::Zero(), Vec3(2, 2, 2), Vec3::Ones());
    Grid pred(space, Pose(), 1, 1), truth(space, Pose(), 1, 1);
    pred.at(0, 0, 0, 0, 0) = 0.9f; // TP
    truth.at(0, 0, 0, 0, 0) = 1.0f;
    pred.at(0, 0, 1, 1, 0) = 0.6f; // FP
    truth.at(0, 0, 1, 0, 1) = 1.0f; // FN
    pred.at(0, 0, 0, 1, 1) = 0.4f; // below threshold, TN
    const OccupancyMetrics m = occupancyMetrics(pred, truth, 0.5);
    EXPECT_EQ(m.true_positives, 1);
    EXPECT_EQ(m.false_positives, 1);
    EXPECT_EQ(m.false_negatives, 1);
    EXPECT_DOUBLE_EQ(m.precision, 0.5);
    EXPECT_DOUBLE_EQ(m.recall, 0.5);
    EXPECT_DOUBLE_EQ(m.iou, 1.0 / 3.0);
}

TEST(OccupancyMetrics, DimMismatchThrows) {
    const Grid a(CartesianSpace::make(Vec3::Zero(), Vec3(2, 2, 2), Vec3::Ones()), Pose(), 1, 1);
    const Grid b(CartesianSpace::make(Vec3::Zero(), Vec3(2, 3, 2), Vec3::Ones()), Pose(), 1, 1);
    try {
        occupancyMetrics(a, b);
        FAIL() << "no throw";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::ShapeMismatch);
    }
}

} // namespace
} // namespace gsf
