// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/raycast.h>

#include <cmath>

namespace gsf {

namespace {

std::optional<std::array<double, 2>>
featurePixel(const Projection &p, int stride, std::int64_t rows, std::int64_t cols) {
    if (!(p.depth > kMinProjectionDepth)) {
        return std::nullopt;
    }
    const double u = p.u / stride, v = p.v / stride;
    if (!(u >= 0.0 && u <= double(cols - 1) && v >= 0.0 && v <= double(rows - 1))) {
        return std::nullopt;
    }
    return std::array<double, 2>{u, v};
}

template <std::floating_point T>
void
checkFeatureMaps(std::span<const ImageFeatureMap<T>> features) {
    if (features.empty()) {
        fail(Errc::InvalidArgument, "raycast needs at least one camera");
    }
    for (const auto &f : features) {
        if (f.channels != features.front().channels) {
            fail(Errc::ShapeMismatch, "raycast: feature maps have different channel counts");
        }
    }
}

} // namespace

std::optional<std::array<double, 2>>
projectToFeatureMap(const CameraModel &camera, int stride, std::int64_t rows, std::int64_t cols,
                    const Vec3 &point_world) {
    return featurePixel(camera.project(point_world), stride, rows, cols);
}

PixelTaps
pixelTaps(double u, double v, std::int64_t rows, std::int64_t cols, PixelSampling sampling) {
    PixelTaps taps;
    if (sampling == PixelSampling::Nearest) {
        const std::int64_t c = std::lround(u), r = std::lround(v);
        taps.offset[0] = r * cols + c;
        taps.weight[0] = 1.0;
        taps.count = 1;
        return taps;
    }
    const double fu = std::floor(u), fv = std::floor(v);
    const std::int64_t c0 = std::int64_t(fu), r0 = std::int64_t(fv);
    const double au = u - fu, av = v - fv;
    const std::int64_t c1 = std::min(c0 + 1, cols - 1), r1 = std::min(r0 + 1, rows - 1);
    const std::array<std::int64_t, 4> off{r0 * cols + c0, r0 * cols + c1, r1 * cols + c0, r1 * cols + c1};
    const std::array<double, 4> w{(1 - av) * (1 - au), (1 - av) * au, av * (1 - au), av * au};
    for (int k = 0; k < 4; ++k) {
        taps.offset[k] = off[k];
        taps.weight[k] = w[k];
    }
    taps.count = 4;
    return taps;
}

template <std::floating_point T>
GatherResult<T>
projectAndGather(std::span<const ImageFeatureMap<T>> features, const CartesianSpace &space, const Pose &pose,
                 const RaycastOptions &options) {
    checkFeatureMaps(features);
    const std::int64_t channels = features.front().channels;
    const std::size_t k_cams = features.size();

    // Grid-local point -> camera frame, one transform per camera.
    std::vector<Pose> to_camera;
    to_camera.reserve(k_cams);
    for (const auto &f : features) {
        to_camera.push_back(compose(f.camera.pose().inverse(), pose));
    }

    GatherResult<T> out;
    out.channels = channels;
    const GridDims d = space.dims();
    std::int64_t voxel = 0;
    for (std::int64_t z = 0; z < d.z; ++z) {
        for (std::int64_t x = 0; x < d.x; ++x) {
            for (std::int64_t y = 0; y < d.y; ++y, ++voxel) {
                const Vec3 center = space.gridToWorld(Vec3(double(z), double(x), double(y)));
                for (std::size_t k = 0; k < k_cams; ++k) {
                    const auto &f = features[k];
                    const auto px = featurePixel(f.camera.projectCameraFrame(to_camera[k].apply(center)),
                                                 f.stride, f.rows, f.cols);
                    if (px) {
                        out.table.push_back(VoxelCameraPair{voxel, std::int32_t(k), (*px)[0], (*px)[1]});
                    }
                }
            }
        }
    }

    out.gathered.resize(out.table.size() * std::size_t(channels));
    for (std::size_t i = 0; i < out.table.size(); ++i) {
        const VoxelCameraPair &row = out.table[i];
        const auto &f = features[std::size_t(row.camera_index)];
        const PixelTaps taps = pixelTaps(row.u, row.v, f.rows, f.cols, options.sampling);
        const std::int64_t plane = f.rows * f.cols;
        for (std::int64_t c = 0; c < channels; ++c) {
            const T *src = f.data.data() + c * plane;
            if (taps.count == 1) {
                out.gathered[i * std::size_t(channels) + std::size_t(c)] = src[taps.offset[0]];
                continue;
            }
            double acc = 0.0;
            for (int t = 0; t < taps.count; ++t) {
                acc += taps.weight[t] * double(src[taps.offset[t]]);
            }
            out.gathered[i * std::size_t(channels) + std::size_t(c)] = static_cast<T>(acc);
        }
    }
    return out;
}

template <std::floating_point T>
std::vector<T>
scatterReduce(std::span<const VoxelCameraPair> table, std::span<const T> gathered, std::int64_t channels,
              std::int64_t num_voxels, Reduction reduction) {
    if (channels < 0 || gathered.size() != table.size() * std::size_t(channels)) {
        fail(Errc::ShapeMismatch, "scatter_reduce: gathered rows do not match the pair table");
    }
    std::vector<double> sum(std::size_t(num_voxels * channels), 0.0);
    std::vector<std::int64_t> count(std::size_t(num_voxels), 0);
    for (std::size_t i = 0; i < table.size(); ++i) {
        const std::int64_t v = table[i].voxel_id;
        if (v < 0 || v >= num_voxels) {
            fail(Errc::OutOfRange, "scatter_reduce: voxel_id " + std::to_string(v) + " >= num voxels " +
                                       std::to_string(num_voxels));
        }
        ++count[std::size_t(v)];
        for (std::int64_t c = 0; c < channels; ++c) {
            sum[std::size_t(v * channels + c)] += double(gathered[i * std::size_t(channels) + std::size_t(c)]);
        }
    }
    std::vector<T> out(sum.size(), T(0));
    for (std::int64_t v = 0; v < num_voxels; ++v) {
        const std::int64_t n = count[std::size_t(v)];
        if (n == 0) {
            continue;
        }
        for (std::int64_t c = 0; c < channels; ++c) {
            const double s = sum[std::size_t(v * channels + c)];
            out[std::size_t(v * channels + c)] =
                static_cast<T>(reduction == Reduction::Mean ? s / double(n) : s);
        }
    }
    return out;
}

template <std::floating_point T>
BasicGrid<T>
raycast(std::span<const ImageFeatureMap<T>> features, std::shared_ptr<const CartesianSpace> space,
        const Pose &pose, const RaycastOptions &options) {
    for (const auto &f : features) {
        for (T v : f.data) {
            if (!std::isfinite(v)) {
                fail(Errc::NonFinite, "raycast: feature map contains NaN or Inf");
            }
        }
    }
    const GatherResult<T> g = projectAndGather(features, *space, pose, options);
    const std::int64_t num_voxels = space->dims().count();
    const std::vector<T> reduced = scatterReduce<T>(g.table, g.gathered, g.channels, num_voxels, options.reduction);

    BasicGrid<T> coords = coordinateGrid<T>(space, pose);
    BasicGrid<T> out(space, pose, 1, g.channels + 3);
    for (std::int64_t c = 0; c < g.channels; ++c) {
        auto dst = out.channel(0, c);
        for (std::int64_t v = 0; v < num_voxels; ++v) {
            dst[std::size_t(v)] = reduced[std::size_t(v * g.channels + c)];
        }
    }
    for (std::int64_t c = 0; c < 3; ++c) {
        auto src = coords.channel(0, c);
        std::copy(src.begin(), src.end(), out.channel(0, g.channels + c).begin());
    }
    return out;
}

template <std::floating_point T>
std::vector<std::vector<T>>
raycastVjp(const BasicGrid<T> &upstream, std::span<const VoxelCameraPair> table,
           std::span<const ImageFeatureMap<T>> features, const RaycastOptions &options) {
    checkFeatureMaps(features);
    const std::int64_t channels = features.front().channels;
    const GridShape &us = upstream.shape();
    if (us.n != 1 || us.c != channels + 3) {
        fail(Errc::ShapeMismatch, "raycast_vjp: upstream shape " + toString(us) + " does not match a " +
                                      std::to_string(channels + 3) + "-channel raycast output");
    }
    const std::int64_t num_voxels = us.spatial();
    std::vector<std::int64_t> count(std::size_t(num_voxels), 0);
    for (const auto &row : table) {
        if (row.voxel_id < 0 || row.voxel_id >= num_voxels || row.camera_index < 0 ||
            std::size_t(row.camera_index) >= features.size()) {
            fail(Errc::OutOfRange, "raycast_vjp: pair table row out of range");
        }
        ++count[std::size_t(row.voxel_id)];
    }

    std::vector<std::vector<T>> grads;
    grads.reserve(features.size());
    for (const auto &f : features) {
        grads.emplace_back(f.data.size(), T(0));
    }
    for (const auto &row : table) {
        const auto &f = features[std::size_t(row.camera_index)];
        auto &g = grads[std::size_t(row.camera_index)];
        const double scale =
            options.reduction == Reduction::Mean ? 1.0 / double(count[std::size_t(row.voxel_id)]) : 1.0;
        const PixelTaps taps = pixelTaps(row.u, row.v, f.rows, f.cols, options.sampling);
        const std::int64_t plane = f.rows * f.cols;
        for (std::int64_t c = 0; c < channels; ++c) {
            const double up = double(upstream.channel(0, c)[std::size_t(row.voxel_id)]) * scale;
            for (int t = 0; t < taps.count; ++t) {
                T &dst = g[std::size_t(c * plane + taps.offset[t])];
                dst = static_cast<T>(double(dst) + taps.weight[t] * up);
            }
        }
    }
    return grads;
}

#define GSF_INSTANTIATE_RAYCAST(T)                                                                         \
    template GatherResult<T> projectAndGather(std::span<const ImageFeatureMap<T>>, const CartesianSpace &, \
                                              const Pose &, const RaycastOptions &);                       \
    template std::vector<T> scatterReduce(std::span<const VoxelCameraPair>, std::span<const T>,            \
                                          std::int64_t, std::int64_t, Reduction);                          \
    template BasicGrid<T> raycast(std::span<const ImageFeatureMap<T>>, std::shared_ptr<const CartesianSpace>, \
                                  const Pose &, const RaycastOptions &);                                   \
    template std::vector<std::vector<T>> raycastVjp(const BasicGrid<T> &, std::span<const VoxelCameraPair>, \
                                                    std::span<const ImageFeatureMap<T>>, const RaycastOptions &);

GSF_INSTANTIATE_RAYCAST(float)
GSF_INSTANTIATE_RAYCAST(double)

#undef GSF_INSTANTIATE_RAYCAST

} // namespace gsf
