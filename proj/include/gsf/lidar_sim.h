// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gsf/geometry.h>
#include <gsf/point_cloud.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gsf {

/// Keep probability for ranges below `max_range` (meters).
struct DetectionBucket {
    double max_range = 0.0;
    double probability = 1.0;
};

/// Spinning LiDAR layout. Beam b sits at elevation
/// min + b * (max - min) / (n_beams - 1); azimuth index a at a * azimuth_step
/// degrees counter-clockwise from the sensor X axis.
struct LidarProfile {
    std::string name;
    int n_beams = 64;
    double azimuth_step_deg = 0.2;
    double elevation_min_deg = -24.9;
    double elevation_max_deg = 2.0;
    /// Piecewise-constant over range, sorted by max_range. Ranges beyond the
    /// last bucket use its probability; an empty table keeps everything.
    std::vector<DetectionBucket> detection;
    std::uint64_t seed = 0;
    double max_range = 120.0;

    int azimuthCount() const;
    double beamElevationDeg(int beam) const;
    double detectionProbability(double range) const;
    /// Throws Errc::InvalidArgument when the profile is inconsistent.
    void validate() const;

    /// 64 beams at 0.2°.
    static LidarProfile highDensity();
    /// 13 beams at 2°.
    static LidarProfile lowDensity();
};

/// Oriented box: yaw about +Z, sizes along the box's (x, y, z) axes.
struct BoxAnnotation {
    Vec3 center = Vec3::Zero();
    Vec3 size = Vec3::Ones();
    double yaw = 0.0;
    std::int64_t id = 0;
};

struct LidarScene {
    std::vector<BoxAnnotation> boxes;
    /// Horizontal ground plane z = height in the reference frame, if present.
    std::optional<double> ground_height;
};

/// Entry distance along a unit ray into the box, if it is hit in front of the origin.
std::optional<double> rayBoxHit(const Vec3 &origin, const Vec3 &direction, const BoxAnnotation &box);

/// Nearest hit along the ray against every box and the ground. `hit_box`
/// receives the box index or -1 for ground.
std::optional<double> rayScene(const Vec3 &origin, const Vec3 &direction, const LidarScene &scene,
                               double max_range, int *hit_box = nullptr);

/// One ray per (beam, azimuth) cell; the first hit becomes a return. Points
/// are in the sensor frame and the cloud's frame pose is `sensor_pose`.
PointCloud synthScan(const LidarScene &scene, const LidarProfile &profile, const Pose &sensor_pose);

/// Indices round(i * (from - 1) / (to - 1)) for i < to.
std::vector<int> selectBeams(int from_beams, int to_beams);

/// Beam and azimuth sub-sampling followed by per-point detection dropout.
/// Kept points are unchanged and keep their original indices. Dropout uses
/// `to.seed` and the point's input index, so it is order independent.
PointCloud degrade(const PointCloud &cloud, const LidarProfile &from, const LidarProfile &to);

/// Uniform [0, 1) value keyed by (seed, counter).
double counterUniform(std::uint64_t seed, std::uint64_t counter);

/// Min return range per (beam, azimuth) cell; +inf marks an empty cell.
struct RangeImage {
    int beams = 0;
    int azimuths = 0;
    std::vector<float> range;

    float
    at(int beam, int azimuth) const {
        return range[std::size_t(beam) * azimuths + azimuth];
    }
};

RangeImage buildRangeImage(const PointCloud &cloud, const LidarProfile &profile);

struct VisibilityOptions {
    /// Meters a sample may sit behind the cell's return and still count as seen.
    double occlusion_slack = 0.5;
    double face_spacing = 0.2;
};

struct BoxVisibility {
    std::int64_t id = 0;
    std::int64_t samples = 0;
    double visible_fraction = 0.0;
    bool valid = false;
};

/// Sample points on the sensor-facing faces of a box (reference frame).
std::vector<Vec3> sampleFacingFaces(const BoxAnnotation &box, const Vec3 &sensor_origin, double spacing);

/// Occlusion test of every box against the cloud's range image. A sample is
/// visible if its cell is empty or its range is within the slack of the cell's
/// return. Boxes are given in the reference frame.
std::vector<BoxVisibility> validObjects(const PointCloud &cloud, const std::vector<BoxAnnotation> &boxes,
                                        const LidarProfile &profile, double threshold,
                                        const VisibilityOptions &options = {});

} // namespace gsf
