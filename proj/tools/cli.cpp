// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.h"

#include "config.h"
#include "pipeline.h"
#include "scene.h"

#include <gsf/gradcheck.h>
#include <gsf/grid_io.h>
#include <gsf/spacewarp.h>

#include <CLI11.hpp>

#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>

namespace gsf::app {

namespace {

struct Globals {
    std::string config_path;
    std::string preset_name = "panoramic-hd";
    std::optional<std::uint64_t> seed;

    mutable std::optional<Config> config;

    const Config &
    loaded() const {
        if (!config) {
            config = config_path.empty() ? builtinConfig() : loadConfig(config_path);
        }
        return *config;
    }
    const PresetConfig &
    preset() const {
        return loaded().preset(preset_name);
    }
    std::uint64_t
    seedOr(std::uint64_t fallback) const {
        return seed.value_or(fallback);
    }
};

struct Frame {
    SpacePtr space;
    Pose pose;
};

Frame
namedFrame(const PresetConfig &preset, const std::string &name) {
    const EncoderConfig &common = preset.encoder(preset.backbone_space);
    if (name == "backbone") {
        return {common.space.make(), common.pose};
    }
    for (const EncoderConfig &e : preset.encoders) {
        if (e.name == name) {
            return {e.space.make(), e.pose};
        }
    }
    for (const HeadConfig &h : preset.heads) {
        if (h.name == name) {
            return h.space ? Frame{h.space->make(), h.pose} : Frame{common.space.make(), common.pose};
        }
    }
    fail(Errc::Config, "preset '" + preset.name + "' has no encoder, head or backbone named '" + name + "'");
}

const EncoderConfig &
pickEncoder(const PresetConfig &preset, const std::string &name, EncoderKind kind, const char *kind_name) {
    if (!name.empty()) {
        const EncoderConfig &e = preset.encoder(name);
        if (e.kind != kind) {
            fail(Errc::Config, "encoder '" + name + "' is not a " + kind_name + " encoder");
        }
        return e;
    }
    for (const EncoderConfig &e : preset.encoders) {
        if (e.kind == kind) {
            return e;
        }
    }
    fail(Errc::Config, "preset '" + preset.name + "' has no " + kind_name + " encoder");
}

void
printJson(std::ostream &out, const Json &j, const std::string &path) {
    if (!path.empty()) {
        writeJsonFile(j, path);
    }
    out << j.dump(2) << '\n';
}

} // namespace

int
exitCodeFor(Errc code) {
    switch (code) {
    case Errc::Io:
    case Errc::Format:
        return kExitInput;
    case Errc::NonFinite:
        return kExitNumerical;
    case Errc::InvalidArgument:
    case Errc::ShapeMismatch:
    case Errc::SpaceMismatch:
    case Errc::OutOfRange:
    case Errc::Config:
        break;
    }
    return kExitConfig;
}

int
runCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Geometric sensor-fusion toolkit", "gsf"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "Config file (JSON); built-in presets when omitted");
    app.add_option("--preset", g.preset_name, "Preset name")->capture_default_str();
    app.add_option("--seed", g.seed, "Seed overriding the preset seed");

    // Each handler runs after parsing; its return value is the exit code.
    std::function<int()> action;

    // scene gen
    auto *scene = app.add_subcommand("scene", "Synthetic scenes")->require_subcommand(1);
    std::string scene_out;
    auto *scene_gen = scene->add_subcommand("gen", "Generate boxes, camera images and a LiDAR scan");
    scene_gen->add_option("--out", scene_out, "Output directory")->required();
    scene_gen->callback([&] {
        action = [&] {
            const PresetConfig &p = g.preset();
            const std::uint64_t seed = g.seedOr(p.seed);
            writeScene(generateScene(g.loaded(), p, seed), p, seed, scene_out);
            out << "scene written to " << scene_out << '\n';
            return kExitOk;
        };
    });

    // lidar synth|degrade
    auto *lidar = app.add_subcommand("lidar", "LiDAR simulation")->require_subcommand(1);
    std::string synth_boxes, synth_profile, synth_out;
    auto *synth = lidar->add_subcommand("synth", "Scan a box layout");
    synth->add_option("--boxes", synth_boxes, "boxes.json from scene gen")->required();
    synth->add_option("--profile", synth_profile, "LiDAR profile name (default: preset scan profile)");
    synth->add_option("--out", synth_out, "Output point cloud")->required();
    synth->callback([&] {
        action = [&] {
            const PresetConfig &p = g.preset();
            const LidarProfile &profile = g.loaded().profile(synth_profile.empty() ? p.scan_profile : synth_profile);
            const PointCloud cloud = synthScan(loadLayout(synth_boxes), profile, p.lidar_pose);
            writePointCloudFile(cloud, synth_out);
            out << cloud.points.size() << " points\n";
            return kExitOk;
        };
    });
    std::string degrade_in, degrade_from = "hd", degrade_to = "ld", degrade_out;
    auto *deg = lidar->add_subcommand("degrade", "Beam/azimuth sub-sampling and detection dropout");
    deg->add_option("--in", degrade_in, "Input point cloud")->required();
    deg->add_option("--from", degrade_from, "Source profile")->capture_default_str();
    deg->add_option("--to", degrade_to, "Target profile")->capture_default_str();
    deg->add_option("--out", degrade_out, "Output point cloud")->required();
    deg->callback([&] {
        action = [&] {
            const std::uint64_t seed = g.seedOr(g.preset().seed);
            const PointCloud cloud =
                degradeCloud(g.loaded(), readPointCloudFile(degrade_in), degrade_from, degrade_to, seed);
            writePointCloudFile(cloud, degrade_out);
            out << cloud.points.size() << " points\n";
            return kExitOk;
        };
    });

    // encode raycast|pointnet|stereo-cv
    auto *encode = app.add_subcommand("encode", "Run one encoder")->require_subcommand(1);
    std::string enc_name, enc_out, images_dir, cloud_in, left_in, right_in, cartesian_out;
    auto *enc_ray = encode->add_subcommand("raycast", "Uplift camera features into voxels");
    enc_ray->add_option("--images", images_dir, "Directory with <camera>.fimg or <camera>.png")->required();
    auto *enc_pn = encode->add_subcommand("pointnet", "Voxel PointNet over a point cloud");
    enc_pn->add_option("--cloud", cloud_in, "Input point cloud")->required();
    auto *enc_st = encode->add_subcommand("stereo-cv", "Plane-sweep cost volume of a stereo pair");
    enc_st->add_option("--left", left_in, "Left image (.fimg or .png)")->required();
    enc_st->add_option("--right", right_in, "Right image (.fimg or .png)")->required();
    enc_st->add_option("--cartesian", cartesian_out, "Also write the volume warped into the encoder space");
    for (CLI::App *sub : {enc_ray, enc_pn, enc_st}) {
        sub->add_option("--encoder", enc_name, "Encoder name in the preset (default: first of its type)");
        sub->add_option("--out", enc_out, "Output grid (FGRD)")->required();
    }
    enc_ray->callback([&] {
        action = [&] {
            const PresetConfig &p = g.preset();
            const EncoderConfig &e = pickEncoder(p, enc_name, EncoderKind::Raycast, "raycast");
            const std::vector<NamedCamera> cams = encoderCameras(p, e);
            const Grid grid = encodeRaycast(e, featurize(p, cams, loadCameraImages(images_dir, cams)));
            writeGridFile(grid, enc_out);
            out << toString(grid.shape()) << '\n';
            return kExitOk;
        };
    });
    enc_pn->callback([&] {
        action = [&] {
            const EncoderConfig &e = pickEncoder(g.preset(), enc_name, EncoderKind::PointNet, "pointnet");
            const Grid grid = encodePointNet(e, readPointCloudFile(cloud_in));
            writeGridFile(grid, enc_out);
            out << toString(grid.shape()) << '\n';
            return kExitOk;
        };
    });
    enc_st->callback([&] {
        action = [&] {
            const PresetConfig &p = g.preset();
            const EncoderConfig &e = pickEncoder(p, enc_name, EncoderKind::Stereo, "stereo");
            const std::vector<NamedCamera> cams = encoderCameras(p, e);
            std::vector<Image> images{readImageFile(left_in), readImageFile(right_in)};
            for (std::size_t i = 0; i < 2; ++i) {
                if (images[i].rows != cams[i].model.rows() || images[i].cols != cams[i].model.cols()) {
                    fail(Errc::Format, "image does not match camera '" + cams[i].name + "' size");
                }
            }
            const auto maps = featurize(p, cams, images);
            const StereoOutput so = encodeStereo(e, maps[0], maps[1]);
            writeGridFile(so.cost_volume, enc_out);
            if (!cartesian_out.empty()) {
                writeGridFile(so.cartesian, cartesian_out);
            }
            out << toString(so.cost_volume.shape()) << '\n';
            return kExitOk;
        };
    });

    // warp
    std::string warp_in, warp_to, warp_like, warp_out;
    auto *warp = app.add_subcommand("warp", "Resample a grid into another space");
    warp->add_option("--in", warp_in, "Source grid")->required();
    auto *to_opt = warp->add_option("--to", warp_to, "Target: encoder, head, or 'backbone' of the preset");
    warp->add_option("--like", warp_like, "Target: space and pose of an existing grid")->excludes(to_opt);
    warp->add_option("--out", warp_out, "Output grid")->required();
    warp->callback([&] {
        action = [&] {
            const Grid src = readGridFile(warp_in);
            Frame target;
            if (!warp_like.empty()) {
                const Grid like = readGridFile(warp_like);
                target = {like.spacePtr(), like.pose()};
            } else if (!warp_to.empty()) {
                target = namedFrame(g.preset(), warp_to);
            } else {
                fail(Errc::Config, "warp needs --to or --like");
            }
            const Grid dst = spaceWarp(src, target.space, target.pose);
            writeGridFile(dst, warp_out);
            out << toString(dst.shape()) << '\n';
            return kExitOk;
        };
    });

    // fuse
    std::vector<std::string> fuse_in;
    std::string fuse_mode, fuse_out;
    auto *fuse_cmd = app.add_subcommand("fuse", "Warp grids to the backbone space and fuse them");
    fuse_cmd->add_option("--in", fuse_in, "Input grids, in channel order")->required()->expected(1, -1);
    fuse_cmd->add_option("--mode", fuse_mode, "concat or sum (default: preset)");
    fuse_cmd->add_option("--out", fuse_out, "Output grid")->required();
    fuse_cmd->callback([&] {
        action = [&] {
            const PresetConfig &p = g.preset();
            FusionMode mode = p.fusion;
            if (!fuse_mode.empty()) {
                if (fuse_mode != "concat" && fuse_mode != "sum") {
                    fail(Errc::Config, "fusion mode must be 'concat' or 'sum'");
                }
                mode = fuse_mode == "concat" ? FusionMode::Concat : FusionMode::Sum;
            }
            std::vector<Grid> grids;
            for (const std::string &path : fuse_in) {
                grids.push_back(readGridFile(path));
            }
            const Frame common = namedFrame(p, "backbone");
            const Grid fused = fuse(grids, common.space, common.pose, mode);
            writeGridFile(fused, fuse_out);
            out << toString(fused.shape()) << '\n';
            return kExitOk;
        };
    });

    // occupancy gt|eval
    auto *occ = app.add_subcommand("occupancy", "Occupancy ground truth and metrics")->require_subcommand(1);
    std::string occ_cloud, occ_head, occ_out, occ_pred, occ_truth, occ_report;
    std::optional<double> occ_threshold;
    auto *occ_gt = occ->add_subcommand("gt", "Voxelize a point cloud into a binary grid");
    occ_gt->add_option("--cloud", occ_cloud, "Input point cloud")->required();
    occ_gt->add_option("--head", occ_head, "Head whose space to use (default: preset occupancy head)");
    occ_gt->add_option("--out", occ_out, "Output grid")->required();
    occ_gt->callback([&] {
        action = [&] {
            const PresetConfig &p = g.preset();
            const std::string name = occ_head.empty() ? p.occupancy_head : occ_head;
            if (name.empty()) {
                fail(Errc::Config, "preset '" + p.name + "' has no occupancy head");
            }
            const HeadConfig &head = p.head(name);
            if (!head.space) {
                fail(Errc::Config, "head '" + name + "' has no Cartesian space of its own");
            }
            const Grid grid = occupancyGroundTruth(readPointCloudFile(occ_cloud), head.space->make(), head.pose);
            writeGridFile(grid, occ_out);
            out << toString(grid.shape()) << '\n';
            return kExitOk;
        };
    });
    auto *occ_eval = occ->add_subcommand("eval", "Precision, recall and IoU of a prediction");
    occ_eval->add_option("--pred", occ_pred, "Predicted probabilities grid")->required();
    occ_eval->add_option("--truth", occ_truth, "Binary ground-truth grid")->required();
    occ_eval->add_option("--threshold", occ_threshold, "Decision threshold (default: preset)");
    occ_eval->add_option("--out", occ_report, "Also write the report to this JSON file");
    occ_eval->callback([&] {
        action = [&] {
            const double t = occ_threshold ? *occ_threshold : g.preset().occupancy_threshold;
            const OccupancyMetrics m = occupancyMetrics(readGridFile(occ_pred), readGridFile(occ_truth), t);
            printJson(out,
                      {{"threshold", t},
                       {"true_positives", m.true_positives},
                       {"false_positives", m.false_positives},
                       {"false_negatives", m.false_negatives},
                       {"precision", m.precision},
                       {"recall", m.recall},
                       {"iou", m.iou}},
                      occ_report);
            return kExitOk;
        };
    });

    // filter-valid
    std::string fv_cloud, fv_boxes, fv_profile, fv_out;
    std::optional<double> fv_threshold;
    auto *fv = app.add_subcommand("filter-valid", "Occlusion-based box validity from a LiDAR range image");
    fv->add_option("--cloud", fv_cloud, "Point cloud")->required();
    fv->add_option("--boxes", fv_boxes, "boxes.json")->required();
    fv->add_option("--threshold", fv_threshold, "Visible fraction needed (default: preset)");
    fv->add_option("--profile", fv_profile, "Profile the cloud's indices refer to (default: preset scan profile)");
    fv->add_option("--out", fv_out, "Also write the report to this JSON file");
    fv->callback([&] {
        action = [&] {
            const PresetConfig &p = g.preset();
            const double t = fv_threshold ? *fv_threshold : p.validity_threshold;
            const auto result = validObjects(readPointCloudFile(fv_cloud), loadLayout(fv_boxes).boxes,
                                             g.loaded().profile(fv_profile.empty() ? p.scan_profile : fv_profile), t,
                                             p.visibility);
            Json boxes = Json::array();
            for (const BoxVisibility &v : result) {
                boxes.push_back({{"id", v.id},
                                 {"samples", v.samples},
                                 {"visible_fraction", v.visible_fraction},
                                 {"valid", v.valid}});
            }
            printJson(out, {{"threshold", t}, {"boxes", boxes}}, fv_out);
            return kExitOk;
        };
    });

    // gradcheck
    int instances = 3;
    auto *gc = app.add_subcommand("gradcheck", "Finite-difference check of every analytic gradient");
    gc->add_option("--instances", instances, "Random instances per op")->capture_default_str()->check(
        CLI::Range(1, 100));
    gc->callback([&] {
        action = [&] {
            bool ok = true;
            for (const GradcheckResult &r : runGradcheckSuite(g.seed.value_or(1), instances)) {
                out << (r.passed ? "PASS " : "FAIL ") << r.name << " entries=" << r.entries
                    << " max_rel_err=" << std::scientific << std::setprecision(3) << r.max_relative_error
                    << std::defaultfloat << '\n';
                ok = ok && r.passed;
            }
            out << (ok ? "all gradients within " : "gradient check failed, tolerance ") << kGradcheckTolerance
                << '\n';
            return ok ? kExitOk : kExitNumerical;
        };
    });

    // run
    std::string run_out, timings_out;
    auto *run = app.add_subcommand("run", "Full pipeline: scene, encoders, fusion, heads, metrics");
    run->add_option("--out", run_out, "Output directory")->required();
    run->add_option("--timings", timings_out, "Write stage timings (JSON) here; kept out of the artifacts");
    run->callback([&] {
        action = [&] {
            const PresetConfig &p = g.preset();
            const RunResult r = runPipeline(g.loaded(), p, g.seedOr(p.seed), run_out);
            Json timings = Json::array();
            for (const StageTiming &t : r.timings) {
                out << "timing " << t.stage << ' ' << std::fixed << std::setprecision(1) << t.milliseconds << " ms\n"
                    << std::defaultfloat;
                timings.push_back({{"stage", t.stage}, {"ms", t.milliseconds}});
            }
            if (!timings_out.empty()) {
                writeJsonFile(timings, timings_out);
            }
            out << "fused shape " << r.summary["fused"]["shape"].dump() << '\n';
            return kExitOk;
        };
    });

    // presets
    std::string presets_out;
    auto *presets = app.add_subcommand("presets", "Print the built-in config");
    presets->add_option("--out", presets_out, "Write it to this file instead");
    presets->callback([&] {
        action = [&] {
            if (presets_out.empty()) {
                out << builtinConfigJson().dump(2) << '\n';
            } else {
                writeJsonFile(builtinConfigJson(), presets_out);
            }
            return kExitOk;
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }
    try {
        return action ? action() : kExitConfig;
    } catch (const Error &e) {
        err << "error (" << errcName(e.code()) << "): " << e.what() << '\n';
        return exitCodeFor(e.code());
    } catch (const std::filesystem::filesystem_error &e) {
        err << "error (io): " << e.what() << '\n';
        return kExitInput;
    }
}

} // namespace gsf::app
