// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gsf/fusion.h>
#include <gsf/image.h>
#include <gsf/lidar_sim.h>
#include <gsf/raycast.h>
#include <gsf/stereo.h>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gsf::app {

using Json = nlohmann::ordered_json;

struct SpaceConfig {
    Vec3 min = Vec3::Zero();
    Vec3 max = Vec3::Ones();
    Vec3 cell = Vec3::Ones();

    std::shared_ptr<const CartesianSpace> make() const;
};

struct NamedCamera {
    std::string name;
    CameraModel model;
};

/// Random boxes resting on the ground, placed in polar coordinates around the origin.
struct SceneConfig {
    int boxes = 8;
    double ground_height = -1.8;
    double min_range = 6.0;
    double max_range = 40.0;
    double azimuth_min_deg = 0.0;
    double azimuth_max_deg = 360.0;
};

enum class EncoderKind { Raycast, PointNet, Stereo };

struct EncoderConfig {
    std::string name;
    EncoderKind kind = EncoderKind::Raycast;
    SpaceConfig space;
    Pose pose;

    // raycast
    RaycastOptions raycast;
    std::vector<std::string> cameras;

    // pointnet
    int hidden = 32;
    int embed = 64;
    std::uint64_t weights_seed = 0;
    /// "scan" or "degraded".
    std::string cloud = "scan";

    // stereo
    std::string left;
    std::string right;
    double near = 2.0;
    double far = 60.0;
    int planes = 48;
    CostMode cost = CostMode::Correlation;
};

struct HeadConfig {
    std::string name;
    /// Empty means the backbone's own frame.
    std::optional<SpaceConfig> space;
    Pose pose;
};

struct PresetConfig {
    std::string name;
    std::uint64_t seed = 0;
    SceneConfig scene;
    std::vector<NamedCamera> cameras;
    PatchFeaturizerConfig featurizer;
    std::string scan_profile = "hd";
    std::optional<std::string> degrade_to;
    Pose lidar_pose;
    std::vector<EncoderConfig> encoders;
    /// Name of the encoder whose space is the common space.
    std::string backbone_space;
    FusionMode fusion = FusionMode::Concat;
    std::vector<HeadConfig> heads;
    /// Head whose space hosts the occupancy grids; empty disables them.
    std::string occupancy_head;
    double occupancy_threshold = 0.5;
    double validity_threshold = 0.5;
    VisibilityOptions visibility;

    const EncoderConfig &encoder(const std::string &name) const;
    const NamedCamera &camera(const std::string &name) const;
    const HeadConfig &head(const std::string &name) const;
};

struct Config {
    std::map<std::string, LidarProfile> profiles;
    std::map<std::string, PresetConfig> presets;

    const LidarProfile &profile(const std::string &name) const;
    const PresetConfig &preset(const std::string &name) const;
};

/// Throws Errc::Config on schema violations.
Config parseConfig(const Json &json);
/// Reads and parses a config file. A missing file is Errc::Io.
Config loadConfig(const std::filesystem::path &path);
/// The shipped presets: panoramic-hd, panoramic-ld, stereo-front.
Json builtinConfigJson();
Config builtinConfig();

Json poseToJson(const Pose &pose);
Pose poseFromJson(const Json &json);
Json spaceToJson(const SpaceConfig &space);
SpaceConfig spaceFromJson(const Json &json);

} // namespace gsf::app
