// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/error.h>
#include <gsf/raycast.h>

#include "oracles.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace gsf {
namespace {

using oracle::Rng;

// Camera at the origin looking down reference +Z.
CameraModel
forwardCamera(int rows = 48, int cols = 64, Pose pose = Pose()) {
    return CameraModel(40, 40, (cols - 1) / 2.0, (rows - 1) / 2.0, rows, cols, std::move(pose));
}

std::vector<ImageFeatureMap<float>>
constantMaps(const std::vector<CameraModel> &cams, std::int64_t channels, int stride, float value) {
    std::vector<ImageFeatureMap<float>> maps;
    for (const auto &cam : cams) {
        const std::int64_t r = cam.rows() / stride, c = cam.cols() / stride;
        maps.emplace_back(channels, r, c, std::vector<float>(std::size_t(channels * r * c), value), cam, stride);
    }
    return maps;
}

TEST(ScatterReduce, MeanExample) {
    const std::vector<VoxelCameraPair> table{{0, 0, 0, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}};
    const std::vector<float> gathered{2, 4, 4, 8, 1, 1};
    const auto out = scatterReduce<float>(table, gathered, 2, 3, Reduction::Mean);
    EXPECT_EQ(out, (std::vector<float>{3, 6, 1, 1, 0, 0}));
    const auto sum = scatterReduce<float>(table, gathered, 2, 3, Reduction::Sum);
    EXPECT_EQ(sum, (std::vector<float>{6, 12, 1, 1, 0, 0}));
}

TEST(ScatterReduce, EmptyTableGivesZeros) {
    const auto out = scatterReduce<float>({}, {}, 4, 5, Reduction::Mean);
    EXPECT_EQ(out, std::vector<float>(20, 0.0f));
}

TEST(ScatterReduce, VoxelIdOutOfRange) {
    const std::vector<VoxelCameraPair> table{{3, 0, 0, 0}};
    const std::vector<float> gathered{1};
    try {
        scatterReduce<float>(table, gathered, 1, 3, Reduction::Mean);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::OutOfRange);
    }
}

TEST(ScatterReduce, MatchesBruteForceLoop) {
    Rng rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        const std::int64_t nv = oracle::uniformInt(rng, 1, 100), ch = oracle::uniformInt(rng, 1, 5);
        std::vector<VoxelCameraPair> table;
        const int rows = oracle::uniformInt(rng, 0, 300);
        for (int i = 0; i < rows; ++i) {
            table.push_back({oracle::uniformInt(rng, 0, int(nv) - 1), oracle::uniformInt(rng, 0, 3), 0, 0});
        }
        std::sort(table.begin(), table.end(), [](const auto &a, const auto &b) {
            return std::pair(a.voxel_id, a.camera_index) < std::pair(b.voxel_id, b.camera_index);
        });
        std::vector<float> gathered(table.size() * std::size_t(ch));
        for (float &v : gathered) {
            v = float(oracle::uniform(rng, -1, 1));
        }
        const auto out = scatterReduce<float>(table, gathered, ch, nv, Reduction::Mean);
        for (std::int64_t v = 0; v < nv; ++v) {
            for (std::int64_t c = 0; c < ch; ++c) {
                double s = 0.0;
                int n = 0;
                for (std::size_t i = 0; i < table.size(); ++i) {
                    if (table[i].voxel_id == v) {
                        s += double(gathered[i * std::size_t(ch) + std::size_t(c)]);
                        ++n;
                    }
                }
                EXPECT_EQ(out[std::size_t(v * ch + c)], n ? float(s / n) : 0.0f);
            }
        }
    }
}

TEST(ProjectAndGather, VoxelBehindEveryCameraHasNoRows) {
    const auto space = CartesianSpace::make(Vec3(-0.5, -0.5, -3), Vec3(0.5, 0.5, -2), Vec3::Ones());
    const auto maps = constantMaps({forwardCamera(), forwardCamera(48, 64, Pose::translation(Vec3(1, 0, 0)))}, 2, 1, 1.0f);
    const auto g = projectAndGather<float>(maps, *space, Pose());
    EXPECT_TRUE(g.table.empty());
    EXPECT_TRUE(g.gathered.empty());
}

TEST(ProjectAndGather, OpticalAxisVoxelHitsPrincipalPoint) {
    const auto space = CartesianSpace::make(Vec3(-0.5, -0.5, 9.5), Vec3(0.5, 0.5, 10.5), Vec3::Ones());
    for (int stride : {1, 2, 4}) {
        const auto maps = constantMaps({forwardCamera()}, 1, stride, 1.0f);
        const auto g = projectAndGather<float>(maps, *space, Pose());
        ASSERT_EQ(g.table.size(), 1u);
        EXPECT_DOUBLE_EQ(g.table[0].u, 31.5 / stride);
        EXPECT_DOUBLE_EQ(g.table[0].v, 23.5 / stride);
        EXPECT_EQ(g.table[0].voxel_id, 0);
        EXPECT_EQ(g.table[0].camera_index, 0);
    }
}

TEST(ProjectAndGather, OverlapOfTwoCamerasGivesTwoRows) {
    const auto space = CartesianSpace::make(Vec3(-0.5, -0.5, 9.5), Vec3(0.5, 0.5, 10.5), Vec3::Ones());
    const auto maps = constantMaps({forwardCamera(), forwardCamera(48, 64, Pose::translation(Vec3(0.5, 0, 0)))}, 3, 1, 1.0f);
    const auto g = projectAndGather<float>(maps, *space, Pose());
    ASSERT_EQ(g.table.size(), 2u);
    EXPECT_EQ(g.table[0].camera_index, 0);
    EXPECT_EQ(g.table[1].camera_index, 1);
    EXPECT_EQ(g.gathered.size(), 6u);
}

TEST(ProjectAndGather, TableSortedAndAllRowsValid) {
    Rng rng(2);
    const auto space = oracle::randomCartesian(rng, GridDims{6, 7, 8});
    const Pose pose = oracle::randomPose(rng);
    const auto cams = oracle::randomRig(rng, *space, pose, 4, 40, 50);
    const auto maps = oracle::randomFeatures<float>(rng, cams, 2, 2);
    const auto g = projectAndGather<float>(maps, *space, pose);
    ASSERT_FALSE(g.table.empty());
    for (std::size_t i = 1; i < g.table.size(); ++i) {
        const auto &a = g.table[i - 1], &b = g.table[i];
        EXPECT_LT(std::pair(a.voxel_id, a.camera_index), std::pair(b.voxel_id, b.camera_index));
    }
    for (const auto &row : g.table) {
        const auto &m = maps[std::size_t(row.camera_index)];
        EXPECT_GE(row.u, 0.0);
        EXPECT_GE(row.v, 0.0);
        EXPECT_LE(row.u, double(m.cols - 1));
        EXPECT_LE(row.v, double(m.rows - 1));
    }
}

TEST(ProjectAndGather, MismatchedChannelsRejected) {
    std::vector<ImageFeatureMap<float>> maps = constantMaps({forwardCamera()}, 2, 1, 0.0f);
    auto other = constantMaps({forwardCamera()}, 3, 1, 0.0f);
    maps.push_back(other.front());
    const auto space = CartesianSpace::make(Vec3::Zero(), Vec3::Ones(), Vec3::Ones());
    EXPECT_THROW(projectAndGather<float>(maps, *space, Pose()), Error);
    EXPECT_THROW(projectAndGather<float>({}, *space, Pose()), Error);
}

TEST(Raycast, ZeroFeaturesGiveCoordinatesOnly) {
    Rng rng(3);
    const auto space = oracle::randomCartesian(rng, GridDims{3, 4, 5});
    const Pose pose = oracle::randomPose(rng);
    const auto cams = oracle::randomRig(rng, *space, pose, 3, 30, 40);
    const auto maps = constantMaps(cams, 4, 1, 0.0f);
    const Grid out = raycast<float>(maps, space, pose);
    EXPECT_EQ(out.shape(), (GridShape{1, 7, 3, 4, 5}));
    const Grid coords = coordinateGrid<float>(space, pose);
    for (std::int64_t c = 0; c < 4; ++c) {
        for (float v : out.channel(0, c)) {
            EXPECT_EQ(v, 0.0f);
        }
    }
    EXPECT_EQ(sliceChannels(out, 4, 3).values(), coords.values());
}

TEST(Raycast, PanoramicPresetDims) {
    const auto space = CartesianSpace::make(Vec3(-51.2, -51.2, -2), Vec3(51.2, 51.2, 12), Vec3(0.4, 0.4, 1));
    std::vector<CameraModel> cams;
    for (int k = 0; k < 6; ++k) {
        const Mat3 r = rotationZ(k * M_PI / 3.0) * opticalToVehicle();
        cams.emplace_back(20, 20, 15.5, 11.5, 24, 32, Pose(r, Vec3::Zero()));
    }
    const auto maps = constantMaps(cams, 1, 1, 1.0f);
    const Grid out = raycast<float>(maps, space, Pose());
    EXPECT_EQ(out.shape(), (GridShape{1, 4, 14, 256, 256}));
}

TEST(Raycast, SameRayVoxelsDifferOnlyInCoordinates) {
    // Voxel centers at depths 2.5 and 5.5 on the optical axis.
    const auto space = CartesianSpace::make(Vec3(-0.5, -0.5, 2), Vec3(0.5, 0.5, 6), Vec3::Ones());
    Rng rng(4);
    const auto maps = oracle::randomFeatures<float>(rng, {forwardCamera()}, 5, 1);
    const Grid out = raycast<float>(maps, space, Pose());
    // dims (z, x, y) = (4, 1, 1); z = 0 and z = 3 are on the same ray.
    for (std::int64_t c = 0; c < 5; ++c) {
        EXPECT_EQ(out.at(0, c, 0, 0, 0), out.at(0, c, 3, 0, 0));
    }
    EXPECT_NE(out.at(0, 7, 0, 0, 0), out.at(0, 7, 3, 0, 0));
}

TEST(Raycast, MatchesBruteForceOracle) {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto space = oracle::randomCartesian(
            rng, GridDims{oracle::uniformInt(rng, 1, 10), oracle::uniformInt(rng, 1, 10), oracle::uniformInt(rng, 1, 10)});
        const Pose pose = oracle::randomPose(rng);
        const auto cams = oracle::randomRig(rng, *space, pose, oracle::uniformInt(rng, 1, 4), 30, 40);
        const auto maps = oracle::randomFeatures<float>(rng, cams, 3, oracle::uniformInt(rng, 1, 2));
        EXPECT_EQ(raycast<float>(maps, space, pose).values(), oracle::bruteRaycast(maps, *space, pose));
    }
}

TEST(Raycast, MultiviewCountMatchesVisibility) {
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const auto space = oracle::randomCartesian(rng, GridDims{5, 6, 7});
        const Pose pose = oracle::randomPose(rng);
        const auto cams = oracle::randomRig(rng, *space, pose, 4, 30, 40);
        const auto maps = oracle::randomFeatures<float>(rng, cams, 1, 1);
        const auto g = projectAndGather<float>(maps, *space, pose);
        std::vector<int> rows(std::size_t(space->dims().count()), 0);
        for (const auto &r : g.table) {
            ++rows[std::size_t(r.voxel_id)];
        }
        EXPECT_EQ(rows, oracle::bruteVisibleCount(maps, *space, pose));
    }
}

TEST(Raycast, CameraPermutationInvariance) {
    Rng rng(7);
    const auto space = oracle::randomCartesian(rng, GridDims{5, 6, 7});
    const Pose pose = oracle::randomPose(rng);
    auto maps = oracle::randomFeatures<float>(rng, oracle::randomRig(rng, *space, pose, 4, 30, 40), 3, 1);
    const Grid a = raycast<float>(maps, space, pose);
    std::reverse(maps.begin(), maps.end());
    std::swap(maps[0], maps[2]);
    const Grid b = raycast<float>(maps, space, pose);
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        EXPECT_NEAR(a.data()[i], b.data()[i], 1e-6);
    }
}

TEST(Raycast, LinearInFeatures) {
    Rng rng(8);
    const auto space = oracle::randomCartesian(rng, GridDims{4, 5, 6});
    const Pose pose = oracle::randomPose(rng);
    const auto maps = oracle::randomFeatures<double>(rng, oracle::randomRig(rng, *space, pose, 3, 30, 40), 2, 1);
    auto scaled = maps;
    for (auto &m : scaled) {
        for (double &v : m.data) {
            v *= -2.5;
        }
    }
    const GridD a = raycast<double>(maps, space, pose);
    const GridD b = raycast<double>(scaled, space, pose);
    for (std::int64_t c = 0; c < 5; ++c) {
        for (std::size_t i = 0; i < a.channel(0, c).size(); ++i) {
            const double expect = c < 2 ? -2.5 * a.channel(0, c)[i] : a.channel(0, c)[i];
            EXPECT_NEAR(b.channel(0, c)[i], expect, 1e-12);
        }
    }
}

TEST(Raycast, Deterministic) {
    Rng rng(9);
    const auto space = oracle::randomCartesian(rng, GridDims{4, 5, 6});
    const Pose pose = oracle::randomPose(rng);
    const auto maps = oracle::randomFeatures<float>(rng, oracle::randomRig(rng, *space, pose, 3, 30, 40), 2, 1);
    EXPECT_EQ(raycast<float>(maps, space, pose).values(), raycast<float>(maps, space, pose).values());
}

TEST(Raycast, NonFiniteFeaturesRejected) {
    auto maps = constantMaps({forwardCamera()}, 1, 1, 0.0f);
    maps[0].data[3] = std::numeric_limits<float>::quiet_NaN();
    const auto space = CartesianSpace::make(Vec3::Zero(), Vec3::Ones(), Vec3::Ones());
    try {
        raycast<float>(maps, space, Pose());
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::NonFinite);
    }
}

TEST(RaycastVjp, ZeroUpstreamGivesZero) {
    Rng rng(10);
    const auto space = oracle::randomCartesian(rng, GridDims{3, 4, 5});
    const Pose pose = oracle::randomPose(rng);
    const auto maps = oracle::randomFeatures<double>(rng, oracle::randomRig(rng, *space, pose, 2, 20, 30), 2, 1);
    const auto g = projectAndGather<double>(maps, *space, pose);
    const GridD up(space, pose, 1, 5);
    for (const auto &grad : raycastVjp<double>(up, g.table, maps)) {
        for (double v : grad) {
            EXPECT_EQ(v, 0.0);
        }
    }
}

TEST(RaycastVjp, SinglePairLandsOnSampledPixel) {
    const auto space = CartesianSpace::make(Vec3(-0.5, -0.5, 9.5), Vec3(0.5, 0.5, 10.5), Vec3::Ones());
    const auto maps = constantMaps({forwardCamera(48, 64)}, 2, 1, 1.0f);
    std::vector<ImageFeatureMap<double>> dmaps{ImageFeatureMap<double>(
        2, 48, 64, std::vector<double>(maps[0].data.begin(), maps[0].data.end()), maps[0].camera, 1)};
    const auto g = projectAndGather<double>(dmaps, *space, Pose());
    ASSERT_EQ(g.table.size(), 1u);
    GridD up(space, Pose(), 1, 5);
    up.at(0, 0, 0, 0, 0) = 3.0;
    up.at(0, 1, 0, 0, 0) = -2.0;
    up.at(0, 2, 0, 0, 0) = 100.0; // coordinate channel: no gradient
    const auto grads = raycastVjp<double>(up, g.table, dmaps);
    ASSERT_EQ(grads.size(), 1u);
    const std::int64_t pix = std::lround(g.table[0].v) * 64 + std::lround(g.table[0].u);
    for (std::int64_t c = 0; c < 2; ++c) {
        for (std::int64_t i = 0; i < 48 * 64; ++i) {
            const double expect = i == pix ? (c == 0 ? 3.0 : -2.0) : 0.0;
            EXPECT_EQ(grads[0][std::size_t(c * 48 * 64 + i)], expect);
        }
    }
}

TEST(RaycastVjp, AdjointConsistencyBothSamplers) {
    Rng rng(11);
    for (PixelSampling sampling : {PixelSampling::Nearest, PixelSampling::Bilinear}) {
        for (Reduction reduction : {Reduction::Mean, Reduction::Sum}) {
            const RaycastOptions opts{reduction, sampling};
            const auto space = oracle::randomCartesian(rng, GridDims{4, 5, 6});
            const Pose pose = oracle::randomPose(rng);
            const auto maps = oracle::randomFeatures<double>(rng, oracle::randomRig(rng, *space, pose, 3, 20, 30), 2, 1);
            const GridD out = raycast<double>(maps, space, pose, opts);
            const GridD up = oracle::randomGrid<double>(rng, space, pose, 1, 5);
            const auto g = projectAndGather<double>(maps, *space, pose, opts);
            const auto grads = raycastVjp<double>(up, g.table, maps, opts);
            double lhs = 0.0, rhs = 0.0;
            for (std::int64_t c = 0; c < 2; ++c) {
                lhs += oracle::innerProduct<double>(out.channel(0, c), up.channel(0, c));
            }
            for (std::size_t k = 0; k < maps.size(); ++k) {
                rhs += oracle::innerProduct<double>(maps[k].data, grads[k]);
            }
            EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST(RaycastVjp, ShapeMismatch) {
    const auto maps = constantMaps({forwardCamera()}, 2, 1, 1.0f);
    const auto space = CartesianSpace::make(Vec3::Zero(), Vec3::Ones(), Vec3::Ones());
    const Grid up(space, Pose(), 1, 4);
    EXPECT_THROW(raycastVjp<float>(up, {}, maps), Error);
}

} // namespace
} // namespace gsf
