// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "config.h"

#include <gsf/point_cloud.h>

#include <filesystem>
#include <vector>

namespace gsf::app {

struct Scene {
    LidarScene layout;
    /// One RGB image per preset camera, in preset order.
    std::vector<Image> images;
    /// Scan with the preset's scan profile from the LiDAR pose.
    PointCloud scan;
};

/// Boxes drawn from the seed with a counter-based generator.
LidarScene randomLayout(const SceneConfig &config, std::uint64_t seed);

/// Flat-shaded boxes over a checkered ground and a sky gradient, values in [0, 1].
Image renderCamera(const LidarScene &layout, const CameraModel &camera);

Scene generateScene(const Config &config, const PresetConfig &preset, std::uint64_t seed);

Json layoutToJson(const LidarScene &layout);
LidarScene layoutFromJson(const Json &json);
LidarScene loadLayout(const std::filesystem::path &path);

// Scene directory: manifest.json, boxes.json, scan.bin, <camera>.fimg and <camera>.png.
void writeScene(const Scene &scene, const PresetConfig &preset, std::uint64_t seed, const std::filesystem::path &dir);

/// Loads the images of `cameras` from <dir>/<name>.fimg, falling back to <name>.png.
std::vector<Image> loadCameraImages(const std::filesystem::path &dir, const std::vector<NamedCamera> &cameras);

void writeJsonFile(const Json &json, const std::filesystem::path &path);
Json readJsonFile(const std::filesystem::path &path);

} // namespace gsf::app
