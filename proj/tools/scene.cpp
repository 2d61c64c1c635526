// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include "scene.h"

#include <cmath>
#include <fstream>
#include <numbers>

namespace gsf::app {

namespace {

constexpr double kRenderRange = 200.0;

Vec3
boxColor(std::int64_t id) {
    const double hue = std::fmod(0.618033988749895 * double(id), 1.0);
    return Vec3(0.5 + 0.4 * std::cos(2 * std::numbers::pi * hue), 0.5 + 0.4 * std::cos(2 * std::numbers::pi * (hue - 1.0 / 3)),
                0.5 + 0.4 * std::cos(2 * std::numbers::pi * (hue - 2.0 / 3)));
}

Vec3
boxNormal(const BoxAnnotation &box, const Vec3 &point) {
    const Mat3 rot = rotationZ(box.yaw);
    const Vec3 local = rot.transpose() * (point - box.center);
    int axis = 0;
    double best = -1.0;
    for (int a = 0; a < 3; ++a) {
        const double r = std::abs(local[a]) / (0.5 * box.size[a]);
        if (r > best) {
            best = r;
            axis = a;
        }
    }
    Vec3 n = Vec3::Zero();
    n[axis] = local[axis] >= 0 ? 1.0 : -1.0;
    return rot * n;
}

} // namespace

LidarScene
randomLayout(const SceneConfig &config, std::uint64_t seed) {
    LidarScene layout;
    layout.ground_height = config.ground_height;
    std::uint64_t counter = 0;
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * counterUniform(seed, counter++); };
    constexpr double deg = std::numbers::pi / 180.0;
    for (int i = 0; i < config.boxes; ++i) {
        const double range = uniform(config.min_range, config.max_range);
        const double azimuth = uniform(config.azimuth_min_deg, config.azimuth_max_deg) * deg;
        const Vec3 size(uniform(3.5, 5.0), uniform(1.6, 2.2), uniform(1.4, 1.9));
        BoxAnnotation box;
        box.center = Vec3(range * std::cos(azimuth), range * std::sin(azimuth), config.ground_height + 0.5 * size.z());
        box.size = size;
        box.yaw = uniform(-std::numbers::pi, std::numbers::pi);
        box.id = i + 1;
        layout.boxes.push_back(box);
    }
    return layout;
}

Image
renderCamera(const LidarScene &layout, const CameraModel &camera) {
    Image img(3, camera.rows(), camera.cols());
    const Vec3 light = Vec3(0.3, 0.5, 0.8).normalized();
    const Vec3 origin = camera.pose().translation();
    const Mat3 &rot = camera.pose().rotation();
    for (int r = 0; r < camera.rows(); ++r) {
        for (int c = 0; c < camera.cols(); ++c) {
            const Vec3 ray = rot * Vec3((c - camera.cx()) / camera.fx(), (r - camera.cy()) / camera.fy(), 1.0);
            const Vec3 dir = ray.normalized();
            int hit = -1;
            const auto t = rayScene(origin, dir, layout, kRenderRange, &hit);
            Vec3 color;
            if (!t) {
                const double up = std::clamp(dir.z(), -1.0, 1.0);
                color = Vec3(0.55, 0.7, 0.9) + 0.1 * up * Vec3::Ones();
            } else if (hit < 0) {
                const Vec3 p = origin + *t * dir;
                const bool odd = (std::int64_t(std::floor(p.x() / 2.0)) + std::int64_t(std::floor(p.y() / 2.0))) & 1;
                color = odd ? Vec3(0.32, 0.33, 0.3) : Vec3(0.5, 0.5, 0.47);
            } else {
                const BoxAnnotation &box = layout.boxes[std::size_t(hit)];
                const double shade = 0.35 + 0.65 * std::max(0.0, boxNormal(box, origin + *t * dir).dot(light));
                color = shade * boxColor(box.id);
            }
            for (int ch = 0; ch < 3; ++ch) {
                img.at(ch, r, c) = float(std::clamp(color[ch], 0.0, 1.0));
            }
        }
    }
    return img;
}

Scene
generateScene(const Config &config, const PresetConfig &preset, std::uint64_t seed) {
    Scene scene;
    scene.layout = randomLayout(preset.scene, seed);
    for (const NamedCamera &cam : preset.cameras) {
        scene.images.push_back(renderCamera(scene.layout, cam.model));
    }
    scene.scan = synthScan(scene.layout, config.profile(preset.scan_profile), preset.lidar_pose);
    return scene;
}

Json
layoutToJson(const LidarScene &layout) {
    Json boxes = Json::array();
    for (const BoxAnnotation &b : layout.boxes) {
        boxes.push_back({{"id", b.id},
                         {"center", {b.center.x(), b.center.y(), b.center.z()}},
                         {"size", {b.size.x(), b.size.y(), b.size.z()}},
                         {"yaw", b.yaw}});
    }
    Json j;
    if (layout.ground_height) {
        j["ground_height"] = *layout.ground_height;
    }
    j["boxes"] = boxes;
    return j;
}

LidarScene
layoutFromJson(const Json &json) {
    LidarScene layout;
    try {
        if (json.contains("ground_height")) {
            layout.ground_height = json.at("ground_height").get<double>();
        }
        for (const Json &b : json.at("boxes")) {
            BoxAnnotation box;
            box.id = b.at("id").get<std::int64_t>();
            const auto c = b.at("center").get<std::array<double, 3>>();
            const auto s = b.at("size").get<std::array<double, 3>>();
            box.center = Vec3(c[0], c[1], c[2]);
            box.size = Vec3(s[0], s[1], s[2]);
            box.yaw = b.value("yaw", 0.0);
            if (!(box.size.array() > 0.0).all()) {
                fail(Errc::Format, "box sizes must be positive");
            }
            layout.boxes.push_back(box);
        }
    } catch (const nlohmann::json::exception &e) {
        fail(Errc::Format, std::string("bad box file: ") + e.what());
    }
    return layout;
}

LidarScene
loadLayout(const std::filesystem::path &path) {
    return layoutFromJson(readJsonFile(path));
}

void
writeScene(const Scene &scene, const PresetConfig &preset, std::uint64_t seed, const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    Json cams = Json::array();
    for (std::size_t i = 0; i < preset.cameras.size(); ++i) {
        const std::string &name = preset.cameras[i].name;
        writeImageFile(scene.images[i], dir / (name + ".fimg"));
        writePngFile(scene.images[i], dir / (name + ".png"));
        cams.push_back({{"name", name}, {"image", name + ".fimg"}, {"preview", name + ".png"}});
    }
    writePointCloudFile(scene.scan, dir / "scan.bin");
    writeJsonFile(layoutToJson(scene.layout), dir / "boxes.json");
    Json manifest = {{"format", "gsf-scene"},
                     {"version", 1},
                     {"preset", preset.name},
                     {"seed", seed},
                     {"cameras", cams},
                     {"lidar", {{"cloud", "scan.bin"}, {"profile", preset.scan_profile}, {"points", scene.scan.points.size()}}},
                     {"boxes", "boxes.json"}};
    writeJsonFile(manifest, dir / "manifest.json");
}

std::vector<Image>
loadCameraImages(const std::filesystem::path &dir, const std::vector<NamedCamera> &cameras) {
    std::vector<Image> images;
    for (const NamedCamera &cam : cameras) {
        std::filesystem::path p = dir / (cam.name + ".fimg");
        if (!std::filesystem::exists(p)) {
            p = dir / (cam.name + ".png");
        }
        if (!std::filesystem::exists(p)) {
            fail(Errc::Io, "no image for camera '" + cam.name + "' in " + dir.string());
        }
        Image img = readImageFile(p);
        if (img.rows != cam.model.rows() || img.cols != cam.model.cols()) {
            fail(Errc::Format, "image " + p.string() + " does not match camera '" + cam.name + "' size");
        }
        images.push_back(std::move(img));
    }
    return images;
}

void
writeJsonFile(const Json &json, const std::filesystem::path &path) {
    std::ofstream os(path, std::ios::binary);
    os << json.dump(2) << '\n';
    if (!os) {
        fail(Errc::Io, "cannot write " + path.string());
    }
}

Json
readJsonFile(const std::filesystem::path &path) {
    std::ifstream is(path);
    if (!is) {
        fail(Errc::Io, "cannot open " + path.string());
    }
    try {
        return Json::parse(is);
    } catch (const nlohmann::json::exception &e) {
        fail(Errc::Format, path.string() + ": " + e.what());
    }
}

} // namespace gsf::app
