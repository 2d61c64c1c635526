// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference implementations and random instance builders shared
// by the unit tests and the acceptance binary. Nothing here calls the kernels
// it is used to check.

#pragma once

#include <gsf/geometry.h>
#include <gsf/grid.h>
#include <gsf/image.h>
#include <gsf/point_cloud.h>
#include <gsf/raycast.h>

#include <Eigen/Geometry>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace gsf::oracle {

using Rng = std::mt19937_64;

inline double
uniform(Rng &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int
uniformInt(Rng &rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Mat3
randomRotation(Rng &rng, double max_angle = M_PI) {
    Vec3 axis(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
    if (axis.norm() < 1e-6) {
        axis = Vec3::UnitZ();
    }
    return Eigen::AngleAxisd(uniform(rng, -max_angle, max_angle), axis.normalized()).toRotationMatrix();
}

inline Pose
randomPose(Rng &rng, double max_angle = M_PI, double max_shift = 5.0) {
    return Pose(randomRotation(rng, max_angle),
                Vec3(uniform(rng, -max_shift, max_shift), uniform(rng, -max_shift, max_shift),
                     uniform(rng, -max_shift, max_shift)));
}

/// Cartesian space with the given (z, x, y) counts, a random origin and random cells.
inline std::shared_ptr<const CartesianSpace>
randomCartesian(Rng &rng, GridDims dims) {
    const Vec3 cell(uniform(rng, 0.2, 1.0), uniform(rng, 0.2, 1.0), uniform(rng, 0.2, 1.0));
    const Vec3 lo(uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, -3, 3));
    const Vec3 counts(double(dims.x), double(dims.y), double(dims.z));
    return CartesianSpace::make(lo, lo + counts.cwiseProduct(cell), cell);
}

template <std::floating_point T>
BasicGrid<T>
randomGrid(Rng &rng, SpacePtr space, const Pose &pose, std::int64_t n, std::int64_t c) {
    BasicGrid<T> g(std::move(space), pose, n, c);
    for (T &v : g.data()) {
        v = static_cast<T>(uniform(rng, -1.0, 1.0));
    }
    return g;
}

/// Direct trilinear read of `g` at continuous index (z, x, y), zero outside dims.
template <std::floating_point T>
double
trilinearAt(const BasicGrid<T> &g, std::int64_t n, std::int64_t c, const Vec3 &idx) {
    const GridShape &s = g.shape();
    const std::int64_t z0 = std::int64_t(std::floor(idx[0]));
    const std::int64_t x0 = std::int64_t(std::floor(idx[1]));
    const std::int64_t y0 = std::int64_t(std::floor(idx[2]));
    double acc = 0.0;
    for (int dz = 0; dz < 2; ++dz) {
        for (int dx = 0; dx < 2; ++dx) {
            for (int dy = 0; dy < 2; ++dy) {
                const std::int64_t z = z0 + dz, x = x0 + dx, y = y0 + dy;
                if (z < 0 || x < 0 || y < 0 || z >= s.z || x >= s.x || y >= s.y) {
                    continue;
                }
                const double w = (1.0 - std::abs(idx[0] - double(z))) * (1.0 - std::abs(idx[1] - double(x))) *
                                 (1.0 - std::abs(idx[2] - double(y)));
                acc += w * double(g.at(n, c, z, x, y));
            }
        }
    }
    return acc;
}

/// Cameras scattered around a space, each aimed at a random point inside it.
inline std::vector<CameraModel>
randomRig(Rng &rng, const CartesianSpace &space, const Pose &grid_pose, int count, int rows, int cols) {
    std::vector<CameraModel> cams;
    const Vec3 mid = grid_pose.apply(0.5 * (space.minCorner() + space.maxCorner()));
    const double radius = (space.maxCorner() - space.minCorner()).norm();
    for (int k = 0; k < count; ++k) {
        Vec3 dir(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
        if (dir.norm() < 1e-3) {
            dir = Vec3::UnitX();
        }
        const Vec3 eye = mid + dir.normalized() * radius * uniform(rng, 0.6, 1.5);
        const Vec3 target = mid + Vec3(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)) * 0.2 * radius;
        const Vec3 fwd = (target - eye).normalized();
        Vec3 right = fwd.cross(Vec3::UnitZ());
        if (right.norm() < 1e-3) {
            right = fwd.cross(Vec3::UnitX());
        }
        right.normalize();
        const Vec3 down = fwd.cross(right);
        Mat3 r;
        r.col(0) = right;
        r.col(1) = down;
        r.col(2) = fwd;
        const double f = uniform(rng, 0.6, 1.2) * cols;
        cams.emplace_back(f, f, (cols - 1) / 2.0, (rows - 1) / 2.0, rows, cols, Pose(r, eye));
    }
    return cams;
}

template <std::floating_point T>
std::vector<ImageFeatureMap<T>>
randomFeatures(Rng &rng, const std::vector<CameraModel> &cams, std::int64_t channels, int stride) {
    std::vector<ImageFeatureMap<T>> maps;
    for (const CameraModel &cam : cams) {
        const std::int64_t rows = cam.rows() / stride, cols = cam.cols() / stride;
        std::vector<T> data(std::size_t(channels * rows * cols));
        for (T &v : data) {
            v = static_cast<T>(uniform(rng, -1.0, 1.0));
        }
        maps.emplace_back(channels, rows, cols, std::move(data), cam, stride);
    }
    return maps;
}

/// Feature-map pixel of a world point, or false when not visible. Pinhole
/// algebra written out in full.
inline bool
bruteProject(const CameraModel &cam, int stride, std::int64_t rows, std::int64_t cols, const Vec3 &world,
             double &u, double &v) {
    const Vec3 pc = cam.pose().rotation().transpose() * (world - cam.pose().translation());
    if (!(pc.z() > 1e-3)) {
        return false;
    }
    u = (cam.fx() * pc.x() / pc.z() + cam.cx()) / stride;
    v = (cam.fy() * pc.y() / pc.z() + cam.cy()) / stride;
    return u >= 0.0 && v >= 0.0 && u <= double(cols - 1) && v <= double(rows - 1);
}

/// Per voxel, the number of cameras that see its center.
template <std::floating_point T>
std::vector<int>
bruteVisibleCount(const std::vector<ImageFeatureMap<T>> &maps, const CartesianSpace &space, const Pose &pose) {
    const GridDims d = space.dims();
    std::vector<int> count(std::size_t(d.count()), 0);
    for (std::int64_t z = 0; z < d.z; ++z) {
        for (std::int64_t x = 0; x < d.x; ++x) {
            for (std::int64_t y = 0; y < d.y; ++y) {
                const Vec3 local = space.minCorner() + Vec3((double(x) + 0.5) * space.cellSize().x(),
                                                            (double(y) + 0.5) * space.cellSize().y(),
                                                            (double(z) + 0.5) * space.cellSize().z());
                const Vec3 world = pose.apply(local);
                for (const auto &m : maps) {
                    double u, v;
                    if (bruteProject(m.camera, m.stride, m.rows, m.cols, world, u, v)) {
                        ++count[std::size_t((z * d.x + x) * d.y + y)];
                    }
                }
            }
        }
    }
    return count;
}

/// Nearest-pixel mean raycast, one voxel and one camera at a time. Returns
/// the full (C + 3, Z, X, Y) payload.
template <std::floating_point T>
std::vector<T>
bruteRaycast(const std::vector<ImageFeatureMap<T>> &maps, const CartesianSpace &space, const Pose &pose) {
    const GridDims d = space.dims();
    const std::int64_t nv = d.count(), channels = maps.front().channels;
    std::vector<T> out(std::size_t((channels + 3) * nv), T(0));
    for (std::int64_t z = 0; z < d.z; ++z) {
        for (std::int64_t x = 0; x < d.x; ++x) {
            for (std::int64_t y = 0; y < d.y; ++y) {
                const std::int64_t vox = (z * d.x + x) * d.y + y;
                const Vec3 world = pose.apply(space.voxelCenter(z, x, y));
                std::vector<double> sum(std::size_t(channels), 0.0);
                int hits = 0;
                for (const auto &m : maps) {
                    double u, v;
                    if (!bruteProject(m.camera, m.stride, m.rows, m.cols, world, u, v)) {
                        continue;
                    }
                    const std::int64_t col = std::int64_t(std::floor(u + 0.5));
                    const std::int64_t row = std::int64_t(std::floor(v + 0.5));
                    for (std::int64_t c = 0; c < channels; ++c) {
                        sum[std::size_t(c)] += double(m.at(c, row, col));
                    }
                    ++hits;
                }
                for (std::int64_t c = 0; c < channels && hits > 0; ++c) {
                    out[std::size_t(c * nv + vox)] = static_cast<T>(sum[std::size_t(c)] / double(hits));
                }
                for (int k = 0; k < 3; ++k) {
                    out[std::size_t((channels + k) * nv + vox)] = static_cast<T>(world[k]);
                }
            }
        }
    }
    return out;
}

/// Occupancy by flooring each point's grid-local coordinate.
inline std::vector<float>
bruteOccupancy(const PointCloud &cloud, const CartesianSpace &space, const Pose &pose) {
    const GridDims d = space.dims();
    std::vector<float> occ(std::size_t(d.count()), 0.0f);
    const Pose to_grid = compose(pose.inverse(), cloud.frame_pose);
    for (const LidarPoint &p : cloud.points) {
        const Vec3 local = to_grid.apply(p.position());
        const Vec3 rel = (local - space.minCorner()).cwiseQuotient(space.cellSize());
        const double fx = std::floor(rel.x()), fy = std::floor(rel.y()), fz = std::floor(rel.z());
        if (fx < 0 || fy < 0 || fz < 0 || fx >= double(d.x) || fy >= double(d.y) || fz >= double(d.z)) {
            continue;
        }
        occ[std::size_t((std::int64_t(fz) * d.x + std::int64_t(fx)) * d.y + std::int64_t(fy))] = 1.0f;
    }
    return occ;
}

inline PointCloud
randomCloud(Rng &rng, const CartesianSpace &space, const Pose &pose, int count, double margin = 0.2) {
    PointCloud cloud;
    cloud.frame_pose = pose;
    const Vec3 lo = space.minCorner(), hi = space.maxCorner();
    const Vec3 pad = (hi - lo) * margin;
    for (int i = 0; i < count; ++i) {
        LidarPoint p;
        p.x = float(uniform(rng, lo.x() - pad.x(), hi.x() + pad.x()));
        p.y = float(uniform(rng, lo.y() - pad.y(), hi.y() + pad.y()));
        p.z = float(uniform(rng, lo.z() - pad.z(), hi.z() + pad.z()));
        p.intensity = float(uniform(rng, 0.0, 1.0));
        p.beam = std::uint16_t(i % 64);
        p.azimuth = std::uint16_t(i % 1800);
        cloud.points.push_back(p);
    }
    return cloud;
}

template <std::floating_point T>
double
innerProduct(std::span<const T> a, std::span<const T> b) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += static_cast<long double>(a[i]) * static_cast<long double>(b[i]);
    }
    return double(acc);
}

} // namespace gsf::oracle
