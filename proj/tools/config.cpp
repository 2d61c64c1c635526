// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include "config.h"

#include <cmath>
#include <fstream>
#include <numbers>

namespace gsf::app {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

[[noreturn]] void
configError(const std::string &context, const std::string &what) {
    fail(Errc::Config, context + ": " + what);
}

const Json &
need(const Json &j, const char *key, const std::string &context) {
    if (!j.is_object() || !j.contains(key)) {
        configError(context, std::string("missing key '") + key + "'");
    }
    return j.at(key);
}

template <class T>
T
get(const Json &j, const char *key, const std::string &context) {
    try {
        return need(j, key, context).get<T>();
    } catch (const nlohmann::json::exception &e) {
        configError(context, std::string("bad value for '") + key + "': " + e.what());
    }
}

template <class T>
T
getOr(const Json &j, const char *key, T fallback, const std::string &context) {
    return j.is_object() && j.contains(key) ? get<T>(j, key, context) : fallback;
}

Vec3
vec3(const Json &j, const std::string &context) {
    if (!j.is_array() || j.size() != 3) {
        configError(context, "expected an array of 3 numbers");
    }
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
        if (!j[std::size_t(i)].is_number()) {
            configError(context, "expected an array of 3 numbers");
        }
        v[i] = j[std::size_t(i)].get<double>();
    }
    return v;
}

Json
vec3Json(const Vec3 &v) {
    return Json::array({v.x(), v.y(), v.z()});
}

LidarProfile
profileFromJson(const std::string &name, const Json &j) {
    const std::string ctx = "lidar profile '" + name + "'";
    LidarProfile p;
    p.name = name;
    p.n_beams = get<int>(j, "beams", ctx);
    p.azimuth_step_deg = get<double>(j, "azimuth_step_deg", ctx);
    p.elevation_min_deg = get<double>(j, "elevation_min_deg", ctx);
    p.elevation_max_deg = get<double>(j, "elevation_max_deg", ctx);
    p.max_range = getOr<double>(j, "max_range", p.max_range, ctx);
    p.seed = getOr<std::uint64_t>(j, "seed", 0, ctx);
    if (j.contains("detection")) {
        for (const Json &b : j.at("detection")) {
            p.detection.push_back(
                DetectionBucket{get<double>(b, "max_range", ctx), get<double>(b, "probability", ctx)});
        }
    }
    try {
        p.validate();
    } catch (const Error &e) {
        configError(ctx, e.what());
    }
    return p;
}

Json
profileToJson(const LidarProfile &p) {
    Json j = {{"beams", p.n_beams},
              {"azimuth_step_deg", p.azimuth_step_deg},
              {"elevation_min_deg", p.elevation_min_deg},
              {"elevation_max_deg", p.elevation_max_deg},
              {"max_range", p.max_range}};
    Json det = Json::array();
    for (const DetectionBucket &b : p.detection) {
        det.push_back({{"max_range", b.max_range}, {"probability", b.probability}});
    }
    j["detection"] = det;
    return j;
}

NamedCamera
cameraFromJson(const Json &j, const std::string &context) {
    const std::string name = get<std::string>(j, "name", context);
    const std::string ctx = context + " camera '" + name + "'";
    try {
        return NamedCamera{name, CameraModel(get<double>(j, "fx", ctx), get<double>(j, "fy", ctx),
                                             get<double>(j, "cx", ctx), get<double>(j, "cy", ctx),
                                             get<int>(j, "rows", ctx), get<int>(j, "cols", ctx),
                                             poseFromJson(need(j, "pose", ctx)))};
    } catch (const Error &e) {
        if (e.code() == Errc::Config) {
            throw;
        }
        configError(ctx, e.what());
    }
}

Json
cameraToJson(const std::string &name, const CameraModel &c) {
    return {{"name", name}, {"fx", c.fx()},     {"fy", c.fy()},     {"cx", c.cx()},
            {"cy", c.cy()}, {"rows", c.rows()}, {"cols", c.cols()}, {"pose", poseToJson(c.pose())}};
}

EncoderConfig
encoderFromJson(const Json &j, const std::string &context) {
    EncoderConfig e;
    e.name = get<std::string>(j, "name", context);
    const std::string ctx = context + " encoder '" + e.name + "'";
    const std::string type = get<std::string>(j, "type", ctx);
    e.space = spaceFromJson(need(j, "space", ctx));
    e.pose = j.contains("pose") ? poseFromJson(j.at("pose")) : Pose();
    if (type == "raycast") {
        e.kind = EncoderKind::Raycast;
        const std::string reduction = getOr<std::string>(j, "reduction", "mean", ctx);
        const std::string sampling = getOr<std::string>(j, "sampling", "nearest", ctx);
        if (reduction != "mean" && reduction != "sum") {
            configError(ctx, "reduction must be 'mean' or 'sum'");
        }
        if (sampling != "nearest" && sampling != "bilinear") {
            configError(ctx, "sampling must be 'nearest' or 'bilinear'");
        }
        e.raycast.reduction = reduction == "mean" ? Reduction::Mean : Reduction::Sum;
        e.raycast.sampling = sampling == "nearest" ? PixelSampling::Nearest : PixelSampling::Bilinear;
        e.cameras = getOr<std::vector<std::string>>(j, "cameras", {}, ctx);
    } else if (type == "pointnet") {
        e.kind = EncoderKind::PointNet;
        e.hidden = get<int>(j, "hidden", ctx);
        e.embed = get<int>(j, "embed", ctx);
        e.weights_seed = get<std::uint64_t>(j, "weights_seed", ctx);
        e.cloud = getOr<std::string>(j, "cloud", "scan", ctx);
        if (e.cloud != "scan" && e.cloud != "degraded") {
            configError(ctx, "cloud must be 'scan' or 'degraded'");
        }
        if (e.hidden < 1 || e.embed < 1) {
            configError(ctx, "layer widths must be positive");
        }
    } else if (type == "stereo") {
        e.kind = EncoderKind::Stereo;
        e.left = get<std::string>(j, "left", ctx);
        e.right = get<std::string>(j, "right", ctx);
        const Json &planes = need(j, "planes", ctx);
        e.near = get<double>(planes, "near", ctx);
        e.far = get<double>(planes, "far", ctx);
        e.planes = get<int>(planes, "count", ctx);
        const std::string cost = getOr<std::string>(j, "cost", "correlation", ctx);
        if (cost != "correlation" && cost != "concat") {
            configError(ctx, "cost must be 'correlation' or 'concat'");
        }
        e.cost = cost == "correlation" ? CostMode::Correlation : CostMode::Concat;
    } else {
        configError(ctx, "unknown encoder type '" + type + "'");
    }
    return e;
}

Json
encoderToJson(const EncoderConfig &e) {
    Json j = {{"name", e.name}};
    switch (e.kind) {
    case EncoderKind::Raycast:
        j["type"] = "raycast";
        j["reduction"] = e.raycast.reduction == Reduction::Mean ? "mean" : "sum";
        j["sampling"] = e.raycast.sampling == PixelSampling::Nearest ? "nearest" : "bilinear";
        if (!e.cameras.empty()) {
            j["cameras"] = e.cameras;
        }
        break;
    case EncoderKind::PointNet:
        j["type"] = "pointnet";
        j["hidden"] = e.hidden;
        j["embed"] = e.embed;
        j["weights_seed"] = e.weights_seed;
        j["cloud"] = e.cloud;
        break;
    case EncoderKind::Stereo:
        j["type"] = "stereo";
        j["left"] = e.left;
        j["right"] = e.right;
        j["planes"] = {{"near", e.near}, {"far", e.far}, {"count", e.planes}};
        j["cost"] = e.cost == CostMode::Correlation ? "correlation" : "concat";
        break;
    }
    j["space"] = spaceToJson(e.space);
    j["pose"] = poseToJson(e.pose);
    return j;
}

PresetConfig
presetFromJson(const std::string &name, const Json &j, const std::map<std::string, LidarProfile> &profiles) {
    const std::string ctx = "preset '" + name + "'";
    PresetConfig p;
    p.name = name;
    p.seed = getOr<std::uint64_t>(j, "seed", 0, ctx);

    const Json &scene = need(j, "scene", ctx);
    p.scene.boxes = get<int>(scene, "boxes", ctx);
    p.scene.ground_height = get<double>(scene, "ground_height", ctx);
    p.scene.min_range = get<double>(scene, "min_range", ctx);
    p.scene.max_range = get<double>(scene, "max_range", ctx);
    p.scene.azimuth_min_deg = get<double>(scene, "azimuth_min_deg", ctx);
    p.scene.azimuth_max_deg = get<double>(scene, "azimuth_max_deg", ctx);
    if (p.scene.boxes < 0 || !(p.scene.max_range > p.scene.min_range) || !(p.scene.min_range > 0.0)) {
        configError(ctx, "scene needs boxes >= 0 and 0 < min_range < max_range");
    }

    for (const Json &c : getOr<Json>(j, "cameras", Json::array(), ctx)) {
        p.cameras.push_back(cameraFromJson(c, ctx));
    }

    const Json &feat = need(j, "featurizer", ctx);
    p.featurizer.seed = get<std::uint64_t>(feat, "seed", ctx);
    p.featurizer.out_channels = get<int>(feat, "channels", ctx);
    p.featurizer.radius = get<int>(feat, "radius", ctx);
    p.featurizer.stride = get<int>(feat, "stride", ctx);
    p.featurizer.zero_mean = getOr<bool>(feat, "zero_mean", false, ctx);
    p.featurizer.normalize = getOr<bool>(feat, "normalize", false, ctx);
    if (p.featurizer.out_channels < 1 || p.featurizer.radius < 0 || p.featurizer.stride < 1) {
        configError(ctx, "featurizer needs channels >= 1, radius >= 0, stride >= 1");
    }

    const Json &lidar = need(j, "lidar", ctx);
    p.scan_profile = get<std::string>(lidar, "profile", ctx);
    if (!profiles.contains(p.scan_profile)) {
        configError(ctx, "unknown lidar profile '" + p.scan_profile + "'");
    }
    if (lidar.contains("degrade_to")) {
        p.degrade_to = get<std::string>(lidar, "degrade_to", ctx);
        if (!profiles.contains(*p.degrade_to)) {
            configError(ctx, "unknown lidar profile '" + *p.degrade_to + "'");
        }
    }
    p.lidar_pose = lidar.contains("pose") ? poseFromJson(lidar.at("pose")) : Pose();

    const Json &encoders = need(j, "encoders", ctx);
    if (!encoders.is_array() || encoders.empty()) {
        configError(ctx, "at least one encoder is required");
    }
    for (const Json &e : encoders) {
        p.encoders.push_back(encoderFromJson(e, ctx));
    }
    for (std::size_t a = 0; a < p.encoders.size(); ++a) {
        for (std::size_t b = a + 1; b < p.encoders.size(); ++b) {
            if (p.encoders[a].name == p.encoders[b].name) {
                configError(ctx, "duplicate encoder name '" + p.encoders[a].name + "'");
            }
        }
    }
    for (const EncoderConfig &e : p.encoders) {
        for (const std::string &cam : e.cameras) {
            p.camera(cam);
        }
        if (e.kind == EncoderKind::Stereo) {
            p.camera(e.left);
            p.camera(e.right);
        }
        if (e.kind == EncoderKind::PointNet && e.cloud == "degraded" && !p.degrade_to) {
            configError(ctx, "encoder '" + e.name + "' reads the degraded cloud but no degrade_to is set");
        }
        if (e.kind == EncoderKind::Raycast && p.cameras.empty()) {
            configError(ctx, "raycast encoder '" + e.name + "' has no cameras");
        }
    }

    const Json &backbone = need(j, "backbone", ctx);
    p.backbone_space = get<std::string>(backbone, "space", ctx);
    p.encoder(p.backbone_space);
    const std::string fusion = getOr<std::string>(backbone, "fusion", "concat", ctx);
    if (fusion != "concat" && fusion != "sum") {
        configError(ctx, "fusion must be 'concat' or 'sum'");
    }
    p.fusion = fusion == "concat" ? FusionMode::Concat : FusionMode::Sum;

    for (const Json &h : getOr<Json>(j, "heads", Json::array(), ctx)) {
        HeadConfig head;
        head.name = get<std::string>(h, "name", ctx);
        if (h.contains("space")) {
            head.space = spaceFromJson(h.at("space"));
        }
        head.pose = h.contains("pose") ? poseFromJson(h.at("pose")) : Pose();
        p.heads.push_back(head);
    }
    if (j.contains("occupancy")) {
        const Json &occ = j.at("occupancy");
        p.occupancy_head = get<std::string>(occ, "head", ctx);
        p.occupancy_threshold = get<double>(occ, "threshold", ctx);
        if (!p.head(p.occupancy_head).space) {
            configError(ctx, "occupancy head needs an explicit space");
        }
    }
    const Json &validity = need(j, "validity", ctx);
    p.validity_threshold = get<double>(validity, "threshold", ctx);
    p.visibility.occlusion_slack = get<double>(validity, "occlusion_slack", ctx);
    p.visibility.face_spacing = get<double>(validity, "face_spacing", ctx);
    if (!(p.validity_threshold >= 0.0 && p.validity_threshold <= 1.0)) {
        configError(ctx, "validity threshold must lie in [0, 1]");
    }
    return p;
}

Json
presetToJson(const PresetConfig &p) {
    Json j;
    j["seed"] = p.seed;
    j["scene"] = {{"boxes", p.scene.boxes},
                  {"ground_height", p.scene.ground_height},
                  {"min_range", p.scene.min_range},
                  {"max_range", p.scene.max_range},
                  {"azimuth_min_deg", p.scene.azimuth_min_deg},
                  {"azimuth_max_deg", p.scene.azimuth_max_deg}};
    Json cams = Json::array();
    for (const NamedCamera &c : p.cameras) {
        cams.push_back(cameraToJson(c.name, c.model));
    }
    j["cameras"] = cams;
    j["featurizer"] = {{"seed", p.featurizer.seed},
                       {"channels", p.featurizer.out_channels},
                       {"radius", p.featurizer.radius},
                       {"stride", p.featurizer.stride},
                       {"zero_mean", p.featurizer.zero_mean},
                       {"normalize", p.featurizer.normalize}};
    j["lidar"] = {{"profile", p.scan_profile}};
    if (p.degrade_to) {
        j["lidar"]["degrade_to"] = *p.degrade_to;
    }
    j["lidar"]["pose"] = poseToJson(p.lidar_pose);
    Json enc = Json::array();
    for (const EncoderConfig &e : p.encoders) {
        enc.push_back(encoderToJson(e));
    }
    j["encoders"] = enc;
    j["backbone"] = {{"space", p.backbone_space}, {"fusion", p.fusion == FusionMode::Concat ? "concat" : "sum"}};
    Json heads = Json::array();
    for (const HeadConfig &h : p.heads) {
        Json hj = {{"name", h.name}};
        if (h.space) {
            hj["space"] = spaceToJson(*h.space);
            hj["pose"] = poseToJson(h.pose);
        }
        heads.push_back(hj);
    }
    j["heads"] = heads;
    if (!p.occupancy_head.empty()) {
        j["occupancy"] = {{"head", p.occupancy_head}, {"threshold", p.occupancy_threshold}};
    }
    j["validity"] = {{"threshold", p.validity_threshold},
                     {"occlusion_slack", p.visibility.occlusion_slack},
                     {"face_spacing", p.visibility.face_spacing}};
    return j;
}

// Six cameras at 60° yaw spacing with an 80° horizontal field of view.
std::vector<NamedCamera>
panoramicRig() {
    const int rows = 160, cols = 256;
    const double f = (cols / 2.0) / std::tan(40.0 * kDegToRad);
    std::vector<NamedCamera> cams;
    for (int i = 0; i < 6; ++i) {
        const double yaw = 60.0 * i * kDegToRad;
        const Vec3 mount(0.5 * std::cos(yaw), 0.5 * std::sin(yaw), -0.3);
        cams.push_back({"cam" + std::to_string(i),
                        CameraModel(f, f, (cols - 1) / 2.0, (rows - 1) / 2.0, rows, cols,
                                    Pose(rotationZ(yaw) * opticalToVehicle(), mount))});
    }
    return cams;
}

PresetConfig
panoramicPreset(const std::string &name, bool low_density) {
    PresetConfig p;
    p.name = name;
    p.seed = 1;
    p.scene = SceneConfig{10, -1.8, 6.0, 40.0, 0.0, 360.0};
    p.cameras = panoramicRig();
    p.featurizer.seed = 11;
    p.featurizer.out_channels = 8;
    p.featurizer.radius = 1;
    p.featurizer.stride = 2;
    p.scan_profile = "hd";
    if (low_density) {
        p.degrade_to = "ld";
    }

    EncoderConfig lidar;
    lidar.name = "lidar";
    lidar.kind = EncoderKind::PointNet;
    lidar.space = SpaceConfig{Vec3(-51.2, -51.2, -2), Vec3(51.2, 51.2, 12), Vec3(0.32, 0.32, 14)};
    lidar.hidden = 32;
    lidar.embed = 64;
    lidar.weights_seed = 21;
    lidar.cloud = low_density ? "degraded" : "scan";

    EncoderConfig cams;
    cams.name = "cameras";
    cams.kind = EncoderKind::Raycast;
    cams.space = SpaceConfig{Vec3(-51.2, -51.2, -2), Vec3(51.2, 51.2, 12), Vec3(0.4, 0.4, 1)};

    p.encoders = {lidar, cams};
    p.backbone_space = "lidar";
    p.heads = {HeadConfig{"detection", std::nullopt, Pose()},
               HeadConfig{"occupancy", SpaceConfig{Vec3(-51.2, -51.2, -2), Vec3(51.2, 51.2, 12), Vec3(1.6, 1.6, 2)},
                          Pose()}};
    p.occupancy_head = "occupancy";
    p.occupancy_threshold = 0.5;
    p.validity_threshold = 0.3;
    return p;
}

PresetConfig
stereoPreset() {
    PresetConfig p;
    p.name = "stereo-front";
    p.seed = 1;
    p.scene = SceneConfig{8, -1.8, 8.0, 50.0, 60.0, 120.0};
    // Optical axis along vehicle +Y; image right is vehicle +X.
    const int rows = 192, cols = 384;
    const double f = (cols / 2.0) / std::tan(45.0 * kDegToRad);
    const Mat3 facing = rotationZ(std::numbers::pi / 2) * opticalToVehicle();
    p.cameras = {{"left", CameraModel(f, f, (cols - 1) / 2.0, (rows - 1) / 2.0, rows, cols,
                                      Pose(facing, Vec3(-0.25, 0.0, 0.0)))},
                 {"right", CameraModel(f, f, (cols - 1) / 2.0, (rows - 1) / 2.0, rows, cols,
                                       Pose(facing, Vec3(0.25, 0.0, 0.0)))}};
    p.featurizer.seed = 12;
    p.featurizer.out_channels = 16;
    p.featurizer.radius = 2;
    p.featurizer.stride = 2;
    p.featurizer.zero_mean = true;
    p.featurizer.normalize = true;
    p.scan_profile = "hd";

    const SpaceConfig front{Vec3(-36, 0, -1), Vec3(36, 60, 5), Vec3(0.3, 0.3, 0.5)};
    EncoderConfig stereo;
    stereo.name = "stereo";
    stereo.kind = EncoderKind::Stereo;
    stereo.space = front;
    stereo.left = "left";
    stereo.right = "right";
    stereo.near = 2.0;
    stereo.far = 60.0;
    stereo.planes = 48;

    EncoderConfig lidar;
    lidar.name = "lidar";
    lidar.kind = EncoderKind::PointNet;
    lidar.space = front;
    lidar.hidden = 16;
    lidar.embed = 8;
    lidar.weights_seed = 22;

    p.encoders = {stereo, lidar};
    p.backbone_space = "stereo";
    p.heads = {HeadConfig{"detection", std::nullopt, Pose()},
               HeadConfig{"occupancy", SpaceConfig{Vec3(-36, 0, -1), Vec3(36, 60, 5), Vec3(1.2, 1.2, 1)}, Pose()}};
    p.occupancy_head = "occupancy";
    p.occupancy_threshold = 0.5;
    p.validity_threshold = 0.3;
    return p;
}

} // namespace

std::shared_ptr<const CartesianSpace>
SpaceConfig::make() const {
    try {
        return CartesianSpace::make(min, max, cell);
    } catch (const Error &e) {
        configError("space", e.what());
    }
}

const EncoderConfig &
PresetConfig::encoder(const std::string &encoder_name) const {
    for (const EncoderConfig &e : encoders) {
        if (e.name == encoder_name) {
            return e;
        }
    }
    configError("preset '" + name + "'", "unknown encoder '" + encoder_name + "'");
}

const NamedCamera &
PresetConfig::camera(const std::string &camera_name) const {
    for (const NamedCamera &c : cameras) {
        if (c.name == camera_name) {
            return c;
        }
    }
    configError("preset '" + name + "'", "unknown camera '" + camera_name + "'");
}

const HeadConfig &
PresetConfig::head(const std::string &head_name) const {
    for (const HeadConfig &h : heads) {
        if (h.name == head_name) {
            return h;
        }
    }
    configError("preset '" + name + "'", "unknown head '" + head_name + "'");
}

const LidarProfile &
Config::profile(const std::string &name) const {
    const auto it = profiles.find(name);
    if (it == profiles.end()) {
        configError("config", "unknown lidar profile '" + name + "'");
    }
    return it->second;
}

const PresetConfig &
Config::preset(const std::string &name) const {
    const auto it = presets.find(name);
    if (it == presets.end()) {
        configError("config", "unknown preset '" + name + "'");
    }
    return it->second;
}

Json
poseToJson(const Pose &pose) {
    const auto m = pose.toRowMajor();
    Json rot = Json::array(), t = Json::array();
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            rot.push_back(m[std::size_t(4 * r + c)]);
        }
        t.push_back(m[std::size_t(4 * r + 3)]);
    }
    return {{"rotation", rot}, {"translation", t}};
}

Pose
poseFromJson(const Json &j) {
    const std::string ctx = "pose";
    const Json &rot = need(j, "rotation", ctx);
    if (!rot.is_array() || rot.size() != 9) {
        configError(ctx, "rotation must be 9 numbers, row-major");
    }
    std::array<double, 12> m{};
    try {
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                m[std::size_t(4 * r + c)] = rot[std::size_t(3 * r + c)].get<double>();
            }
        }
        const Vec3 t = vec3(need(j, "translation", ctx), ctx + " translation");
        for (int r = 0; r < 3; ++r) {
            m[std::size_t(4 * r + 3)] = t[r];
        }
        return Pose::fromRowMajor(m, getOr<std::string>(j, "frame", "reference", ctx));
    } catch (const nlohmann::json::exception &e) {
        configError(ctx, e.what());
    } catch (const Error &e) {
        if (e.code() == Errc::Config) {
            throw;
        }
        configError(ctx, e.what());
    }
}

Json
spaceToJson(const SpaceConfig &s) {
    return {{"min", vec3Json(s.min)}, {"max", vec3Json(s.max)}, {"cell", vec3Json(s.cell)}};
}

SpaceConfig
spaceFromJson(const Json &j) {
    SpaceConfig s{vec3(need(j, "min", "space"), "space min"), vec3(need(j, "max", "space"), "space max"),
                  vec3(need(j, "cell", "space"), "space cell")};
    s.make();
    return s;
}

Config
parseConfig(const Json &json) {
    Config cfg;
    for (const auto &[name, pj] : need(json, "lidar_profiles", "config").items()) {
        cfg.profiles.emplace(name, profileFromJson(name, pj));
    }
    const Json &presets = need(json, "presets", "config");
    if (!presets.is_object()) {
        configError("config", "'presets' must be an object");
    }
    for (const auto &[name, pj] : presets.items()) {
        cfg.presets.emplace(name, presetFromJson(name, pj, cfg.profiles));
    }
    return cfg;
}

Config
loadConfig(const std::filesystem::path &path) {
    std::ifstream is(path);
    if (!is) {
        fail(Errc::Io, "cannot open config file " + path.string());
    }
    Json j;
    try {
        j = Json::parse(is);
    } catch (const nlohmann::json::exception &e) {
        configError(path.string(), e.what());
    }
    return parseConfig(j);
}

Json
builtinConfigJson() {
    LidarProfile hd = LidarProfile::highDensity(), ld = LidarProfile::lowDensity();
    Json j;
    j["lidar_profiles"] = {{"hd", profileToJson(hd)}, {"ld", profileToJson(ld)}};
    j["presets"] = {{"panoramic-hd", presetToJson(panoramicPreset("panoramic-hd", false))},
                    {"panoramic-ld", presetToJson(panoramicPreset("panoramic-ld", true))},
                    {"stereo-front", presetToJson(stereoPreset())}};
    return j;
}

Config
builtinConfig() {
    return parseConfig(builtinConfigJson());
}

} // namespace gsf::app
