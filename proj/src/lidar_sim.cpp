// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/error.h>
#include <gsf/lidar_sim.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gsf {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kStepTol = 1e-9;

std::uint64_t
splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

float
boxIntensity(std::int64_t id) {
    return 0.4f + 0.1f * float(std::uint64_t(id) % 5);
}

constexpr float kGroundIntensity = 0.2f;

} // namespace

int
LidarProfile::azimuthCount() const {
    return int(std::lround(360.0 / azimuth_step_deg));
}

double
LidarProfile::beamElevationDeg(int beam) const {
    if (n_beams == 1) {
        return 0.5 * (elevation_min_deg + elevation_max_deg);
    }
    return elevation_min_deg + beam * (elevation_max_deg - elevation_min_deg) / double(n_beams - 1);
}

double
LidarProfile::detectionProbability(double range) const {
    if (detection.empty()) {
        return 1.0;
    }
    for (const DetectionBucket &b : detection) {
        if (range < b.max_range) {
            return b.probability;
        }
    }
    return detection.back().probability;
}

void
LidarProfile::validate() const {
    if (n_beams < 1) {
        fail(Errc::InvalidArgument, "lidar profile needs at least one beam");
    }
    if (!(azimuth_step_deg > 0.0)) {
        fail(Errc::InvalidArgument, "lidar azimuth step must be positive");
    }
    const double count = 360.0 / azimuth_step_deg;
    if (std::abs(count - std::round(count)) * azimuth_step_deg > kStepTol) {
        fail(Errc::InvalidArgument, "lidar azimuth step must divide 360 degrees");
    }
    if (!(elevation_max_deg >= elevation_min_deg) || (n_beams > 1 && !(elevation_max_deg > elevation_min_deg))) {
        fail(Errc::InvalidArgument, "lidar elevation range must be increasing");
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (const DetectionBucket &b : detection) {
        if (!(b.probability >= 0.0 && b.probability <= 1.0)) {
            fail(Errc::InvalidArgument, "detection probabilities must lie in [0, 1]");
        }
        if (!(b.max_range > prev)) {
            fail(Errc::InvalidArgument, "detection buckets must be sorted by range");
        }
        prev = b.max_range;
    }
    if (!(max_range > 0.0)) {
        fail(Errc::InvalidArgument, "lidar max range must be positive");
    }
}

LidarProfile
LidarProfile::highDensity() {
    LidarProfile p;
    p.name = "hd";
    p.n_beams = 64;
    p.azimuth_step_deg = 0.2;
    return p;
}

LidarProfile
LidarProfile::lowDensity() {
    LidarProfile p;
    p.name = "ld";
    p.n_beams = 13;
    p.azimuth_step_deg = 2.0;
    return p;
}

std::optional<double>
rayBoxHit(const Vec3 &origin, const Vec3 &direction, const BoxAnnotation &box) {
    const Mat3 to_box = rotationZ(-box.yaw);
    const Vec3 o = to_box * (origin - box.center);
    const Vec3 d = to_box * direction;
    const Vec3 half = 0.5 * box.size;
    double t_min = -std::numeric_limits<double>::infinity();
    double t_max = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
        if (std::abs(d[k]) < 1e-15) {
            if (o[k] < -half[k] || o[k] > half[k]) {
                return std::nullopt;
            }
            continue;
        }
        double t0 = (-half[k] - o[k]) / d[k];
        double t1 = (half[k] - o[k]) / d[k];
        if (t0 > t1) {
            std::swap(t0, t1);
        }
        t_min = std::max(t_min, t0);
        t_max = std::min(t_max, t1);
    }
    if (t_max < t_min || t_max <= 0.0) {
        return std::nullopt;
    }
    return t_min > 0.0 ? t_min : t_max;
}

std::optional<double>
rayScene(const Vec3 &origin, const Vec3 &direction, const LidarScene &scene, double max_range, int *hit_box) {
    std::optional<double> best;
    int which = -1;
    if (scene.ground_height && direction.z() < 0.0) {
        const double t = (*scene.ground_height - origin.z()) / direction.z();
        if (t > 0.0 && t <= max_range) {
            best = t;
        }
    }
    for (std::size_t i = 0; i < scene.boxes.size(); ++i) {
        const auto t = rayBoxHit(origin, direction, scene.boxes[i]);
        if (t && *t <= max_range && (!best || *t < *best)) {
            best = t;
            which = int(i);
        }
    }
    if (hit_box) {
        *hit_box = which;
    }
    return best;
}

PointCloud
synthScan(const LidarScene &scene, const LidarProfile &profile, const Pose &sensor_pose) {
    profile.validate();
    for (const BoxAnnotation &b : scene.boxes) {
        if (!(b.size.array() > 0.0).all()) {
            fail(Errc::InvalidArgument, "box sizes must be positive");
        }
    }
    PointCloud cloud;
    cloud.frame_pose = sensor_pose;
    const int n_az = profile.azimuthCount();
    const Vec3 origin = sensor_pose.translation();
    for (int beam = 0; beam < profile.n_beams; ++beam) {
        const double elev = profile.beamElevationDeg(beam) * kDegToRad;
        for (int az = 0; az < n_az; ++az) {
            const double phi = az * profile.azimuth_step_deg * kDegToRad;
            const Vec3 d_sensor(std::cos(elev) * std::cos(phi), std::cos(elev) * std::sin(phi), std::sin(elev));
            const Vec3 d_world = sensor_pose.rotation() * d_sensor;
            int hit = -1;
            const auto t = rayScene(origin, d_world, scene, profile.max_range, &hit);
            if (!t) {
                continue;
            }
            const Vec3 p = *t * d_sensor;
            LidarPoint lp;
            lp.x = float(p.x());
            lp.y = float(p.y());
            lp.z = float(p.z());
            lp.intensity = hit >= 0 ? boxIntensity(scene.boxes[std::size_t(hit)].id) : kGroundIntensity;
            lp.beam = std::uint16_t(beam);
            lp.azimuth = std::uint16_t(az);
            cloud.points.push_back(lp);
        }
    }
    return cloud;
}

std::vector<int>
selectBeams(int from_beams, int to_beams) {
    if (to_beams < 1 || to_beams > from_beams) {
        fail(Errc::InvalidArgument, "beam selection needs 1 <= to <= from");
    }
    std::vector<int> out(std::size_t(to_beams), 0);
    if (to_beams == 1) {
        return out;
    }
    for (int i = 0; i < to_beams; ++i) {
        out[std::size_t(i)] = int(std::lround(double(i) * (from_beams - 1) / double(to_beams - 1)));
    }
    return out;
}

double
counterUniform(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t bits = splitmix64(seed ^ splitmix64(counter));
    return double(bits >> 11) * 0x1.0p-53;
}

PointCloud
degrade(const PointCloud &cloud, const LidarProfile &from, const LidarProfile &to) {
    from.validate();
    to.validate();
    if (to.n_beams > from.n_beams) {
        fail(Errc::InvalidArgument, "degrade: target profile has more beams than the source");
    }
    const double ratio = to.azimuth_step_deg / from.azimuth_step_deg;
    const double factor_f = std::round(ratio);
    if (factor_f < 1.0 || std::abs(ratio - factor_f) > kStepTol * std::max(1.0, ratio)) {
        fail(Errc::InvalidArgument, "degrade: target azimuth step is not an integer multiple of the source");
    }
    const auto factor = std::uint32_t(factor_f);
    std::vector<bool> keep_beam(std::size_t(from.n_beams), false);
    for (int b : selectBeams(from.n_beams, to.n_beams)) {
        keep_beam[std::size_t(b)] = true;
    }

    PointCloud out;
    out.frame_pose = cloud.frame_pose;
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const LidarPoint &p = cloud.points[i];
        if (p.beam >= from.n_beams || !keep_beam[p.beam] || p.azimuth % factor != 0) {
            continue;
        }
        const double prob = to.detectionProbability(p.position().norm());
        if (prob < 1.0 && !(counterUniform(to.seed, i) < prob)) {
            continue;
        }
        out.points.push_back(p);
    }
    return out;
}

RangeImage
buildRangeImage(const PointCloud &cloud, const LidarProfile &profile) {
    profile.validate();
    RangeImage img;
    img.beams = profile.n_beams;
    img.azimuths = profile.azimuthCount();
    img.range.assign(std::size_t(img.beams) * img.azimuths, std::numeric_limits<float>::infinity());
    for (const LidarPoint &p : cloud.points) {
        if (p.beam >= img.beams || p.azimuth >= img.azimuths) {
            continue;
        }
        float &cell = img.range[std::size_t(p.beam) * img.azimuths + p.azimuth];
        cell = std::min(cell, float(p.position().norm()));
    }
    return img;
}

std::vector<Vec3>
sampleFacingFaces(const BoxAnnotation &box, const Vec3 &sensor_origin, double spacing) {
    if (!(spacing > 0.0)) {
        fail(Errc::InvalidArgument, "face spacing must be positive");
    }
    const Mat3 rot = rotationZ(box.yaw);
    const Vec3 half = 0.5 * box.size;
    std::vector<Vec3> samples;
    for (int axis = 0; axis < 3; ++axis) {
        const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
        const int n1 = std::max(1, int(std::ceil(box.size[a1] / spacing - 1e-9)));
        const int n2 = std::max(1, int(std::ceil(box.size[a2] / spacing - 1e-9)));
        for (double sign : {-1.0, 1.0}) {
            Vec3 normal_local = Vec3::Zero();
            normal_local[axis] = sign;
            const Vec3 face_center = box.center + rot * (sign * half[axis] * Vec3::Unit(axis));
            const Vec3 normal = rot * normal_local;
            if (!(normal.dot(sensor_origin - face_center) > 0.0)) {
                continue;
            }
            for (int i = 0; i < n1; ++i) {
                for (int j = 0; j < n2; ++j) {
                    Vec3 local = Vec3::Zero();
                    local[axis] = sign * half[axis];
                    local[a1] = ((i + 0.5) / n1 - 0.5) * box.size[a1];
                    local[a2] = ((j + 0.5) / n2 - 0.5) * box.size[a2];
                    samples.push_back(box.center + rot * local);
                }
            }
        }
    }
    return samples;
}

std::vector<BoxVisibility>
validObjects(const PointCloud &cloud, const std::vector<BoxAnnotation> &boxes, const LidarProfile &profile,
             double threshold, const VisibilityOptions &options) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        fail(Errc::InvalidArgument, "visibility threshold must lie in [0, 1]");
    }
    const RangeImage image = buildRangeImage(cloud, profile);
    const Pose to_sensor = cloud.frame_pose.inverse();
    const Vec3 origin = cloud.frame_pose.translation();
    const double step = profile.azimuth_step_deg;
    const double elev_span = profile.elevation_max_deg - profile.elevation_min_deg;

    std::vector<BoxVisibility> out;
    out.reserve(boxes.size());
    for (const BoxAnnotation &box : boxes) {
        const std::vector<Vec3> samples = sampleFacingFaces(box, origin, options.face_spacing);
        std::int64_t visible = 0;
        for (const Vec3 &s : samples) {
            const Vec3 q = to_sensor.apply(s);
            const double range = q.norm();
            double phi = std::atan2(q.y(), q.x()) / kDegToRad;
            if (phi < 0.0) {
                phi += 360.0;
            }
            const int az = int(std::lround(phi / step)) % image.azimuths;
            const double theta = std::atan2(q.z(), std::hypot(q.x(), q.y())) / kDegToRad;
            long beam = 0;
            if (profile.n_beams > 1) {
                beam = std::lround((theta - profile.elevation_min_deg) / elev_span * (profile.n_beams - 1));
            }
            const bool in_fov = beam >= 0 && beam < profile.n_beams;
            const float cell = in_fov ? image.at(int(beam), az) : std::numeric_limits<float>::infinity();
            if (std::isinf(cell) || range <= double(cell) + options.occlusion_slack) {
                ++visible;
            }
        }
        BoxVisibility v;
        v.id = box.id;
        v.samples = std::int64_t(samples.size());
        v.visible_fraction = samples.empty() ? 1.0 : double(visible) / double(samples.size());
        v.valid = v.visible_fraction >= threshold;
        out.push_back(v);
    }
    return out;
}

} // namespace gsf
