// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/gradcheck.h>
#include <gsf/pointnet.h>
#include <gsf/raycast.h>
#include <gsf/spacewarp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace gsf {

namespace {

// Linear maps are differenced with a coarse step; PointNet is piecewise
// linear in each weight, so a small step keeps both sides on one piece.
constexpr double kLinearStep = 1e-3;
constexpr double kPointNetStep = 1e-6;

double
dot(std::span<const double> a, std::span<const double> b) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += static_cast<long double>(a[i]) * b[i];
    }
    return double(acc);
}

std::vector<double>
randomVector(std::mt19937_64 &rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (double &x : v) {
        x = dist(rng);
    }
    return v;
}

Pose
randomPose(std::mt19937_64 &rng, double max_angle, double max_shift) {
    std::uniform_real_distribution<double> ang(-max_angle, max_angle);
    std::uniform_real_distribution<double> sh(-max_shift, max_shift);
    const Mat3 r = rotationZ(ang(rng)) * rotationY(ang(rng)) * rotationX(ang(rng));
    return Pose(r, Vec3(sh(rng), sh(rng), sh(rng)));
}

GradcheckResult
finish(GradcheckResult r, const GradcheckCase &c, const ScalarLoss &loss, std::vector<double> x,
       std::vector<double> analytic, double step) {
    if (c.tamper) {
        c.tamper(analytic);
    }
    GradcheckResult out = compareWithFiniteDifferences(r.name, loss, std::move(x), analytic, step);
    return out;
}

std::vector<double>
flatten(const PointNetWeights &w) {
    std::vector<double> v;
    v.reserve(std::size_t(w.parameterCount()));
    auto push_matrix = [&v](const Eigen::MatrixXd &m) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                v.push_back(m(r, c));
            }
        }
    };
    push_matrix(w.w1);
    v.insert(v.end(), w.b1.data(), w.b1.data() + w.b1.size());
    push_matrix(w.w2);
    v.insert(v.end(), w.b2.data(), w.b2.data() + w.b2.size());
    return v;
}

PointNetWeights
unflatten(std::span<const double> v, const PointNetWeights &like) {
    PointNetWeights w = PointNetWeights::zerosLike(like);
    std::size_t k = 0;
    auto pull_matrix = [&](Eigen::MatrixXd &m) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                m(r, c) = v[k++];
            }
        }
    };
    pull_matrix(w.w1);
    for (Eigen::Index i = 0; i < w.b1.size(); ++i) {
        w.b1(i) = v[k++];
    }
    pull_matrix(w.w2);
    for (Eigen::Index i = 0; i < w.b2.size(); ++i) {
        w.b2(i) = v[k++];
    }
    return w;
}

GradcheckResult
warpCase(const GradcheckCase &c, bool identity) {
    std::mt19937_64 rng(c.seed);
    std::uniform_int_distribution<int> dim(2, 5);
    const double cell = 0.5;
    const Vec3 extent(dim(rng) * cell, dim(rng) * cell, dim(rng) * cell);
    auto src_space = CartesianSpace::make(Vec3::Zero(), extent, Vec3::Constant(cell));
    const Pose src_pose = randomPose(rng, 0.5, 1.0);
    SpacePtr tgt_space = src_space;
    Pose tgt_pose = src_pose;
    if (!identity) {
        const Vec3 tgt_extent(dim(rng) * 0.4, dim(rng) * 0.4, dim(rng) * 0.4);
        tgt_space = CartesianSpace::make(Vec3::Constant(0.1), Vec3::Constant(0.1) + tgt_extent, Vec3::Constant(0.4));
        tgt_pose = compose(src_pose, randomPose(rng, 0.3, 0.3));
    }
    const std::int64_t n = 1, ch = 2;
    GridD source(src_space, src_pose, n, ch);
    const std::vector<double> x0 = randomVector(rng, source.data().size());
    std::copy(x0.begin(), x0.end(), source.data().begin());
    GridD upstream(tgt_space, tgt_pose, n, ch);
    const std::vector<double> g = randomVector(rng, upstream.data().size());
    std::copy(g.begin(), g.end(), upstream.data().begin());

    const GridD grad = spaceWarpVjp(source, tgt_space, tgt_pose, upstream);
    ScalarLoss loss = [&](std::span<const double> x) {
        GridD s(src_space, src_pose, source.shape(), std::vector<double>(x.begin(), x.end()));
        const GridD out = spaceWarp(s, tgt_space, tgt_pose);
        return dot(out.data(), g);
    };
    GradcheckResult r;
    r.name = identity ? "space_warp (identity)" : "space_warp";
    return finish(r, c, loss, x0, grad.values(), kLinearStep);
}

} // namespace

double
gradientRelativeError(double analytic, double numeric) {
    const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
    return std::abs(analytic - numeric) / denom;
}

GradcheckResult
compareWithFiniteDifferences(std::string name, const ScalarLoss &loss, std::vector<double> x,
                             std::span<const double> analytic, double step, double tolerance) {
    if (analytic.size() != x.size()) {
        fail(Errc::ShapeMismatch, "gradcheck: analytic gradient size differs from the input size");
    }
    GradcheckResult r;
    r.name = std::move(name);
    r.entries = std::int64_t(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double saved = x[i];
        x[i] = saved + step;
        const double plus = loss(x);
        x[i] = saved - step;
        const double minus = loss(x);
        x[i] = saved;
        const double numeric = (plus - minus) / (2.0 * step);
        const double err = gradientRelativeError(analytic[i], numeric);
        if (!std::isfinite(err)) {
            r.max_relative_error = std::numeric_limits<double>::infinity();
        } else {
            r.max_relative_error = std::max(r.max_relative_error, err);
        }
    }
    r.passed = r.max_relative_error < tolerance;
    return r;
}

GradcheckResult
gradcheckSpaceWarp(const GradcheckCase &c) {
    return warpCase(c, false);
}

GradcheckResult
gradcheckSpaceWarpIdentity(const GradcheckCase &c) {
    return warpCase(c, true);
}

GradcheckResult
gradcheckRaycast(const GradcheckCase &c) {
    std::mt19937_64 rng(c.seed);
    // Two cameras on the vehicle X axis looking forward, slightly apart.
    const int rows = 6, cols = 8;
    std::vector<ImageFeatureMap<double>> maps;
    const std::int64_t ch = 2;
    for (int k = 0; k < 2; ++k) {
        const Pose pose(rotationZ(k == 0 ? 0.05 : -0.05) * opticalToVehicle(), Vec3(0.0, k == 0 ? 0.2 : -0.2, 0.0));
        CameraModel cam(4.0, 4.0, 3.5, 2.5, rows, cols, pose);
        maps.emplace_back(ch, rows, cols, randomVector(rng, std::size_t(ch * rows * cols)), cam, 1);
    }
    auto space = CartesianSpace::make(Vec3(2.0, -1.0, -0.75), Vec3(4.0, 1.0, 0.75), Vec3(0.5, 0.5, 0.5));
    const Pose pose = Pose::identity();
    RaycastOptions opts;
    opts.sampling = PixelSampling::Bilinear;

    const GatherResult<double> gathered = projectAndGather<double>(maps, *space, pose, opts);
    GridD upstream(space, pose, 1, ch + 3);
    const std::vector<double> g = randomVector(rng, upstream.data().size());
    std::copy(g.begin(), g.end(), upstream.data().begin());
    const auto grads = raycastVjp<double>(upstream, gathered.table, maps, opts);

    std::vector<double> x0, analytic;
    for (std::size_t k = 0; k < maps.size(); ++k) {
        x0.insert(x0.end(), maps[k].data.begin(), maps[k].data.end());
        analytic.insert(analytic.end(), grads[k].begin(), grads[k].end());
    }
    ScalarLoss loss = [&](std::span<const double> x) {
        std::vector<ImageFeatureMap<double>> m = maps;
        std::size_t off = 0;
        for (auto &f : m) {
            std::copy(x.begin() + std::ptrdiff_t(off), x.begin() + std::ptrdiff_t(off + f.data.size()), f.data.begin());
            off += f.data.size();
        }
        const GridD out = raycast<double>(m, space, pose, opts);
        return dot(out.data(), g);
    };
    GradcheckResult r;
    r.name = "raycast";
    return finish(r, c, loss, x0, analytic, kLinearStep);
}

GradcheckResult
gradcheckPointNet(const GradcheckCase &c) {
    std::mt19937_64 rng(c.seed);
    auto space = CartesianSpace::make(Vec3::Zero(), Vec3::Constant(2.0), Vec3::Constant(0.5));
    const Pose pose = Pose::identity();
    std::uniform_int_distribution<int> npts(8, 20);
    std::uniform_int_distribution<int> cell(0, 3);
    std::uniform_real_distribution<double> inside(0.02, 0.48);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PointCloud cloud;
    const int n = npts(rng);
    // Draw cells from a small pool so several voxels hold more than one point.
    std::vector<std::array<int, 3>> pool;
    for (int i = 0; i < 5; ++i) {
        pool.push_back({cell(rng), cell(rng), cell(rng)});
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < n; ++i) {
        const auto &cc = pool[pick(rng)];
        LidarPoint p;
        p.x = float(cc[0] * 0.5 + inside(rng));
        p.y = float(cc[1] * 0.5 + inside(rng));
        p.z = float(cc[2] * 0.5 + inside(rng));
        p.intensity = float(unit(rng));
        cloud.points.push_back(p);
    }
    const VoxelBuckets buckets = voxelize(cloud, *space, pose);
    const PointNetWeights w0 = PointNetWeights::init(6, 5, c.seed ^ 0x5eedull);
    GridD upstream(space, pose, 1, w0.embed());
    const std::vector<double> g = randomVector(rng, upstream.data().size());
    std::copy(g.begin(), g.end(), upstream.data().begin());

    const std::vector<double> analytic = flatten(pointnetVjp(upstream, buckets, w0));
    ScalarLoss loss = [&](std::span<const double> x) {
        const GridD out = pointnetEncode<double>(buckets, unflatten(x, w0), space, pose);
        return dot(out.data(), g);
    };
    GradcheckResult r;
    r.name = "pointnet";
    return finish(r, c, loss, flatten(w0), analytic, kPointNetStep);
}

std::vector<GradcheckResult>
runGradcheckSuite(std::uint64_t seed, int instances_per_op) {
    std::vector<GradcheckResult> out;
    out.push_back(gradcheckSpaceWarpIdentity(GradcheckCase{seed, {}}));
    for (int i = 0; i < instances_per_op; ++i) {
        const std::uint64_t s = seed * 1000003ull + std::uint64_t(i);
        out.push_back(gradcheckSpaceWarp(GradcheckCase{s, {}}));
        out.push_back(gradcheckRaycast(GradcheckCase{s, {}}));
        out.push_back(gradcheckPointNet(GradcheckCase{s, {}}));
    }
    return out;
}

} // namespace gsf
