// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "config.h"
#include "scene.h"

#include <gsf/grid.h>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace gsf::app {

/// Feature maps of the named cameras, computed with the preset featurizer.
std::vector<ImageFeatureMap<float>> featurize(const PresetConfig &preset, const std::vector<NamedCamera> &cameras,
                                              const std::vector<Image> &images);

/// Cameras an encoder reads: its explicit list, or every preset camera.
std::vector<NamedCamera> encoderCameras(const PresetConfig &preset, const EncoderConfig &encoder);

Grid encodeRaycast(const EncoderConfig &encoder, const std::vector<ImageFeatureMap<float>> &maps);
Grid encodePointNet(const EncoderConfig &encoder, const PointCloud &cloud);

struct StereoOutput {
    Grid cost_volume;
    Grid cartesian;
};
StereoOutput encodeStereo(const EncoderConfig &encoder, const ImageFeatureMap<float> &left,
                          const ImageFeatureMap<float> &right);

/// Cloud selection shared by `run` and `lidar degrade`.
PointCloud degradeCloud(const Config &config, const PointCloud &cloud, const std::string &from,
                        const std::string &to, std::uint64_t seed);

Json shapeJson(const GridShape &shape);
std::uint32_t crc32Of(const std::vector<char> &bytes);
/// Writes the grid and returns its CRC-32 as 8 hex digits.
std::string writeGridArtifact(const Grid &grid, const std::filesystem::path &path);

struct StageTiming {
    std::string stage;
    double milliseconds = 0.0;
};

struct RunResult {
    Json summary;
    std::vector<StageTiming> timings;
};

/// Scene generation, every encoder, fusion, head adapters, occupancy and
/// validity. All artifacts and summary.json land in `out_dir`; timings are
/// returned separately so the artifacts stay reproducible.
RunResult runPipeline(const Config &config, const PresetConfig &preset, std::uint64_t seed,
                      const std::filesystem::path &out_dir);

} // namespace gsf::app
