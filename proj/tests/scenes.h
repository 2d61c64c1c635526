// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

// Constructed scenes with known answers, shared by unit and acceptance tests.

#pragma once

#include <gsf/image.h>
#include <gsf/lidar_sim.h>
#include <gsf/stereo.h>

#include <cmath>
#include <cstdint>
#include <vector>

namespace gsf::scenes {

/// Rectified stereo pair looking at a textured fronto-parallel wall.
struct WallPair {
    ImageFeatureMap<float> left;
    ImageFeatureMap<float> right;
    std::vector<double> planes;
    double wall_depth = 0.0;
    std::int64_t nearest_plane = 0;
    /// Left-image columns below this see the wall outside the right image.
    std::int64_t min_valid_col = 0;
};

struct WallConfig {
    std::uint64_t seed = 1;
    int rows = 96;
    int cols = 192;
    double focal = 400.0;
    double baseline = 0.5;
    double near = 2.0;
    double far = 60.0;
    int plane_count = 48;
    int plane_index = 30;
    /// Wall inverse depth sits this fraction of the gap past `plane_index`;
    /// 0.5 is a tie between two planes.
    double gap_fraction = 0.3;
    int image_channels = 3;
    int patch_radius = 3;
    double lattice_px = 3.0;
    int feature_channels = 32;
};

inline WallPair
makeWallPair(const WallConfig &cfg) {
    const std::vector<double> planes = inverseDepthPlanes(cfg.near, cfg.far, cfg.plane_count);
    const double inv_a = 1.0 / planes[std::size_t(cfg.plane_index)];
    const double inv_b = 1.0 / planes[std::size_t(cfg.plane_index) + 1];
    const double depth = 1.0 / (inv_a + cfg.gap_fraction * (inv_b - inv_a));
    const std::int64_t nearest = cfg.gap_fraction < 0.5 ? cfg.plane_index : cfg.plane_index + 1;

    // Aperiodic value noise: random lattice values every few pixels at the
    // wall depth, smoothstep-blended, so each disparity has one unique match.
    const double lattice = cfg.lattice_px * depth / cfg.focal;
    auto lattice_value = [seed = cfg.seed](int ch, std::int64_t i, std::int64_t j) {
        std::uint64_t h = (seed + std::uint64_t(ch) * 0x632be59bd9b4e019ULL) * 0x9e3779b97f4a7c15ULL ^ std::uint64_t(i) * 0xbf58476d1ce4e5b9ULL ^
                          std::uint64_t(j) * 0x94d049bb133111ebULL;
        h ^= h >> 31;
        h *= 0xd6e8feb86659fd39ULL;
        h ^= h >> 28;
        return double(h >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    };
    auto texture = [&](int ch, double x, double y) {
        const double gx = x / lattice, gy = y / lattice;
        const double fx = std::floor(gx), fy = std::floor(gy);
        const double ax = gx - fx, ay = gy - fy;
        const double sx = ax * ax * (3.0 - 2.0 * ax), sy = ay * ay * (3.0 - 2.0 * ay);
        const auto i = std::int64_t(fx), j = std::int64_t(fy);
        return (1 - sx) * (1 - sy) * lattice_value(ch, i, j) + sx * (1 - sy) * lattice_value(ch, i + 1, j) +
               (1 - sx) * sy * lattice_value(ch, i, j + 1) + sx * sy * lattice_value(ch, i + 1, j + 1);
    };

    const double cx = (cfg.cols - 1) / 2.0, cy = (cfg.rows - 1) / 2.0;
    const CameraModel left_cam(cfg.focal, cfg.focal, cx, cy, cfg.rows, cfg.cols, Pose());
    const CameraModel right_cam(cfg.focal, cfg.focal, cx, cy, cfg.rows, cfg.cols,
                                Pose::translation(Vec3(cfg.baseline, 0, 0)));
    Image li(cfg.image_channels, cfg.rows, cfg.cols), ri(cfg.image_channels, cfg.rows, cfg.cols);
    for (int ch = 0; ch < cfg.image_channels; ++ch) {
        for (int r = 0; r < cfg.rows; ++r) {
            for (int c = 0; c < cfg.cols; ++c) {
                const double x = (c - cx) * depth / cfg.focal, y = (r - cy) * depth / cfg.focal;
                li.at(ch, r, c) = float(texture(ch, x, y));
                ri.at(ch, r, c) = float(texture(ch, x + cfg.baseline, y));
            }
        }
    }
    PatchFeaturizerConfig fc;
    fc.seed = cfg.seed ^ 0xfeedULL;
    fc.out_channels = cfg.feature_channels;
    fc.radius = cfg.patch_radius;
    fc.zero_mean = true;
    fc.normalize = true;
    const PatchFeaturizer feat(fc, cfg.image_channels);
    const double disparity = cfg.focal * cfg.baseline / depth;
    return WallPair{ImageFeatureMap<float>(feat.apply(li), left_cam, 1),
                    ImageFeatureMap<float>(feat.apply(ri), right_cam, 1),
                    planes,
                    depth,
                    nearest,
                    std::int64_t(std::ceil(disparity))};
}

/// Fraction of interior pixels whose cost argmax is the plane nearest the wall.
inline double
wallArgmaxAccuracy(const WallPair &pair, int border = 8) {
    const Grid cv = costVolume(pair.left, pair.right, pair.planes, CostMode::Correlation);
    const GridShape &s = cv.shape();
    std::int64_t good = 0, total = 0;
    for (std::int64_t r = border; r < s.x - border; ++r) {
        for (std::int64_t c = std::max<std::int64_t>(border, pair.min_valid_col + border); c < s.y - border; ++c) {
            std::int64_t arg = 0;
            float best = cv.at(0, 0, 0, r, c);
            for (std::int64_t k = 1; k < s.z; ++k) {
                if (cv.at(0, 0, k, r, c) > best) {
                    best = cv.at(0, 0, k, r, c);
                    arg = k;
                }
            }
            good += arg == pair.nearest_plane;
            ++total;
        }
    }
    return total ? double(good) / double(total) : 0.0;
}

/// LiDAR profile with beams every 1° over ±10° and a 0.5° azimuth step.
inline LidarProfile
occlusionProfile() {
    LidarProfile p;
    p.name = "occlusion-test";
    p.n_beams = 21;
    p.azimuth_step_deg = 0.5;
    p.elevation_min_deg = -10.0;
    p.elevation_max_deg = 10.0;
    p.max_range = 100.0;
    return p;
}

// Brute-force occlusion oracle: a sample is hidden when a straight ray from
// the sensor hits any other box before reaching it.
inline double
rayOracleFraction(const BoxAnnotation &target, const std::vector<BoxAnnotation> &occluders, double spacing) {
    const std::vector<Vec3> samples = sampleFacingFaces(target, Vec3::Zero(), spacing);
    std::int64_t visible = 0;
    for (const Vec3 &s : samples) {
        const double range = s.norm();
        bool hidden = false;
        for (const BoxAnnotation &o : occluders) {
            const auto t = rayBoxHit(Vec3::Zero(), s / range, o);
            hidden = hidden || (t && *t < range - 1e-6);
        }
        visible += !hidden;
    }
    return double(visible) / double(samples.size());
}

} // namespace gsf::scenes
