// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include "pipeline.h"

#include <gsf/grid_io.h>
#include <gsf/pointnet.h>

#include <zlib.h>

#include <chrono>
#include <cstdio>
#include <fstream>

namespace gsf::app {

namespace {

class StageClock {
  public:
    explicit StageClock(std::vector<StageTiming> &sink) : sink_(sink) {}

    void
    lap(std::string stage) {
        const auto now = std::chrono::steady_clock::now();
        sink_.push_back({std::move(stage), std::chrono::duration<double, std::milli>(now - last_).count()});
        last_ = now;
    }

  private:
    std::vector<StageTiming> &sink_;
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::size_t
cameraIndex(const PresetConfig &preset, const std::string &name) {
    for (std::size_t i = 0; i < preset.cameras.size(); ++i) {
        if (preset.cameras[i].name == name) {
            return i;
        }
    }
    preset.camera(name);
    return 0;
}

} // namespace

std::vector<ImageFeatureMap<float>>
featurize(const PresetConfig &preset, const std::vector<NamedCamera> &cameras, const std::vector<Image> &images) {
    if (cameras.size() != images.size()) {
        fail(Errc::InvalidArgument, "featurize: camera and image counts differ");
    }
    std::vector<ImageFeatureMap<float>> maps;
    for (std::size_t i = 0; i < cameras.size(); ++i) {
        const PatchFeaturizer featurizer(preset.featurizer, images[i].channels);
        maps.emplace_back(featurizer.apply(images[i]), cameras[i].model, preset.featurizer.stride);
    }
    return maps;
}

std::vector<NamedCamera>
encoderCameras(const PresetConfig &preset, const EncoderConfig &encoder) {
    switch (encoder.kind) {
    case EncoderKind::Raycast:
        if (encoder.cameras.empty()) {
            return preset.cameras;
        } else {
            std::vector<NamedCamera> out;
            for (const std::string &name : encoder.cameras) {
                out.push_back(preset.camera(name));
            }
            return out;
        }
    case EncoderKind::Stereo:
        return {preset.camera(encoder.left), preset.camera(encoder.right)};
    case EncoderKind::PointNet:
        break;
    }
    return {};
}

Grid
encodeRaycast(const EncoderConfig &encoder, const std::vector<ImageFeatureMap<float>> &maps) {
    return raycast(std::span<const ImageFeatureMap<float>>(maps), encoder.space.make(), encoder.pose, encoder.raycast);
}

Grid
encodePointNet(const EncoderConfig &encoder, const PointCloud &cloud) {
    validatePointCloud(cloud);
    const auto space = encoder.space.make();
    const VoxelBuckets buckets = voxelize(cloud, *space, encoder.pose);
    return pointnetEncode<float>(buckets, PointNetWeights::init(encoder.hidden, encoder.embed, encoder.weights_seed),
                                 space, encoder.pose);
}

StereoOutput
encodeStereo(const EncoderConfig &encoder, const ImageFeatureMap<float> &left, const ImageFeatureMap<float> &right) {
    const std::vector<double> planes = inverseDepthPlanes(encoder.near, encoder.far, encoder.planes);
    Grid cv = costVolume(left, right, planes, encoder.cost);
    Grid cart = frustumToCartesian(cv, encoder.space.make(), encoder.pose);
    return {std::move(cv), std::move(cart)};
}

PointCloud
degradeCloud(const Config &config, const PointCloud &cloud, const std::string &from, const std::string &to,
             std::uint64_t seed) {
    LidarProfile target = config.profile(to);
    target.seed = seed;
    return degrade(cloud, config.profile(from), target);
}

Json
shapeJson(const GridShape &s) {
    return Json::array({s.n, s.c, s.z, s.x, s.y});
}

std::uint32_t
crc32Of(const std::vector<char> &bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    std::size_t done = 0;
    while (done < bytes.size()) {
        const std::size_t chunk = std::min<std::size_t>(bytes.size() - done, 1u << 30);
        crc = crc32(crc, reinterpret_cast<const Bytef *>(bytes.data() + done), uInt(chunk));
        done += chunk;
    }
    return std::uint32_t(crc);
}

std::string
writeGridArtifact(const Grid &grid, const std::filesystem::path &path) {
    const std::vector<char> bytes = serializeGrid(grid);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    os.write(bytes.data(), std::streamsize(bytes.size()));
    if (!os) {
        fail(Errc::Io, "cannot write " + path.string());
    }
    char hex[9];
    std::snprintf(hex, sizeof hex, "%08x", crc32Of(bytes));
    return hex;
}

RunResult
runPipeline(const Config &config, const PresetConfig &preset, std::uint64_t seed, const std::filesystem::path &out_dir) {
    if (preset.encoders.empty()) {
        fail(Errc::Config, "preset '" + preset.name + "' declares no encoders");
    }
    std::filesystem::create_directories(out_dir);
    RunResult result;
    StageClock clock(result.timings);
    Json artifacts = Json::array();
    auto record = [&](const std::string &role, const Grid &g, const std::string &file) {
        const std::string crc = writeGridArtifact(g, out_dir / file);
        artifacts.push_back({{"role", role},
                             {"file", file},
                             {"shape", shapeJson(g.shape())},
                             {"space", g.space().describe()},
                             {"crc32", crc}});
    };

    const Scene scene = generateScene(config, preset, seed);
    writeScene(scene, preset, seed, out_dir / "scene");
    clock.lap("scene");

    PointCloud degraded;
    if (preset.degrade_to) {
        degraded = degradeCloud(config, scene.scan, preset.scan_profile, *preset.degrade_to, seed);
        writePointCloudFile(degraded, out_dir / "scan_degraded.bin");
        clock.lap("degrade");
    }

    const std::vector<ImageFeatureMap<float>> maps = featurize(preset, preset.cameras, scene.images);
    clock.lap("featurize");

    const PointCloud *lidar_input = nullptr;
    std::vector<Grid> encoded;
    for (const EncoderConfig &enc : preset.encoders) {
        switch (enc.kind) {
        case EncoderKind::Raycast: {
            std::vector<ImageFeatureMap<float>> selected;
            for (const NamedCamera &cam : encoderCameras(preset, enc)) {
                selected.push_back(maps[cameraIndex(preset, cam.name)]);
            }
            encoded.push_back(encodeRaycast(enc, selected));
            break;
        }
        case EncoderKind::PointNet: {
            const PointCloud &cloud = enc.cloud == "degraded" ? degraded : scene.scan;
            lidar_input = lidar_input ? lidar_input : &cloud;
            encoded.push_back(encodePointNet(enc, cloud));
            break;
        }
        case EncoderKind::Stereo: {
            StereoOutput so = encodeStereo(enc, maps[cameraIndex(preset, enc.left)], maps[cameraIndex(preset, enc.right)]);
            record("cost_volume/" + enc.name, so.cost_volume, enc.name + "_cost_volume.fgrd");
            encoded.push_back(std::move(so.cartesian));
            break;
        }
        }
        record("encoder/" + enc.name, encoded.back(), enc.name + ".fgrd");
        clock.lap("encode:" + enc.name);
    }

    const EncoderConfig &common = preset.encoder(preset.backbone_space);
    const Backbone backbone(common.space.make(), common.pose, preset.fusion);
    const Grid fused = backbone.run(encoded);
    record("fused", fused, "fused.fgrd");
    clock.lap("fuse");

    Json heads = Json::object();
    for (const HeadConfig &head : preset.heads) {
        const SpacePtr space = head.space ? SpacePtr(head.space->make()) : backbone.commonSpace();
        const Pose &pose = head.space ? head.pose : backbone.commonPose();
        const Grid adapted = headAdapt(fused, space, pose);
        record("head/" + head.name, adapted, "head_" + head.name + ".fgrd");
        heads[head.name] = shapeJson(adapted.shape());
    }
    clock.lap("heads");

    const PointCloud &evaluated = lidar_input ? *lidar_input : scene.scan;
    Json occupancy = nullptr;
    if (!preset.occupancy_head.empty()) {
        const HeadConfig &head = preset.head(preset.occupancy_head);
        const auto space = head.space->make();
        const Grid truth = occupancyGroundTruth(scene.scan, space, head.pose);
        const Grid pred = occupancyGroundTruth(evaluated, space, head.pose);
        record("occupancy/truth", truth, "occupancy_truth.fgrd");
        record("occupancy/prediction", pred, "occupancy_pred.fgrd");
        const OccupancyMetrics m = occupancyMetrics(pred, truth, preset.occupancy_threshold);
        occupancy = {{"head", head.name},
                     {"threshold", preset.occupancy_threshold},
                     {"true_positives", m.true_positives},
                     {"false_positives", m.false_positives},
                     {"false_negatives", m.false_negatives},
                     {"precision", m.precision},
                     {"recall", m.recall},
                     {"iou", m.iou}};
        clock.lap("occupancy");
    }

    // Degraded clouds keep the scan's beam and azimuth indices.
    const auto visibility = validObjects(evaluated, scene.layout.boxes, config.profile(preset.scan_profile),
                                         preset.validity_threshold, preset.visibility);
    Json validity = Json::array();
    for (const BoxVisibility &v : visibility) {
        validity.push_back(
            {{"id", v.id}, {"samples", v.samples}, {"visible_fraction", v.visible_fraction}, {"valid", v.valid}});
    }
    clock.lap("validity");

    result.summary = {{"preset", preset.name},
                      {"seed", seed},
                      {"scene",
                       {{"boxes", scene.layout.boxes.size()},
                        {"scan_points", scene.scan.points.size()},
                        {"degraded_points", preset.degrade_to ? Json(degraded.points.size()) : Json(nullptr)}}},
                      {"encoders", Json::array()},
                      {"fused", {{"shape", shapeJson(fused.shape())}, {"space", fused.space().describe()}}},
                      {"heads", heads},
                      {"occupancy", occupancy},
                      {"validity", {{"threshold", preset.validity_threshold}, {"boxes", validity}}},
                      {"artifacts", artifacts}};
    for (std::size_t i = 0; i < preset.encoders.size(); ++i) {
        result.summary["encoders"].push_back(
            {{"name", preset.encoders[i].name}, {"shape", shapeJson(encoded[i].shape())}});
    }
    writeJsonFile(result.summary, out_dir / "summary.json");
    return result;
}

} // namespace gsf::app
