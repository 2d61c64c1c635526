// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/log.h>
#include <gsf/spacewarp.h>
#include <gsf/stereo.h>

#include <cmath>

namespace gsf {

namespace {

constexpr double kZeroBaseline = 1e-12;

} // namespace

template <std::floating_point T>
ImageFeatureMap<T>
planeSweepWarp(const ImageFeatureMap<T> &right, const CameraModel &left_camera, const CameraModel &right_camera,
               double depth) {
    if (!(depth > 0.0) || !std::isfinite(depth)) {
        fail(Errc::InvalidArgument, "plane_sweep_warp: depth must be positive");
    }
    const int s = right.stride;
    const std::int64_t rows = left_camera.rows() / s, cols = left_camera.cols() / s;
    if ((left_camera.pose().translation() - right_camera.pose().translation()).norm() < kZeroBaseline) {
        warn("plane_sweep_warp: zero-baseline stereo pair, using the identity warp");
        if (rows != right.rows || cols != right.cols) {
            fail(Errc::ShapeMismatch, "plane_sweep_warp: identity warp needs equal image sizes");
        }
        return ImageFeatureMap<T>(right.channels, rows, cols, right.data, left_camera, s);
    }

    ImageFeatureMap<T> out(right.channels, rows, cols,
                           std::vector<T>(std::size_t(right.channels * rows * cols), T(0)), left_camera, s);
    const Pose left_to_right = compose(right_camera.pose().inverse(), left_camera.pose());
    const std::int64_t plane = right.rows * right.cols;
    for (std::int64_t r = 0; r < rows; ++r) {
        for (std::int64_t c = 0; c < cols; ++c) {
            const Vec3 p_left = left_camera.unprojectCameraFrame(double(c * s), double(r * s), depth);
            const Vec3 p_right = left_to_right.apply(p_left);
            if (!(p_right.z() > kMinProjectionDepth)) {
                continue;
            }
            const double u = (right_camera.fx() * p_right.x() / p_right.z() + right_camera.cx()) / s;
            const double v = (right_camera.fy() * p_right.y() / p_right.z() + right_camera.cy()) / s;
            const double fu = std::floor(u), fv = std::floor(v);
            if (!std::isfinite(fu) || !std::isfinite(fv) || fu < -1.0 || fv < -1.0 || fu > double(right.cols) ||
                fv > double(right.rows)) {
                continue;
            }
            const std::int64_t c0 = std::int64_t(fu), r0 = std::int64_t(fv);
            const double au = u - fu, av = v - fv;
            std::array<std::int64_t, 4> off{};
            std::array<double, 4> w{};
            int taps = 0;
            for (int k = 0; k < 4; ++k) {
                const std::int64_t rr = r0 + (k >> 1), cc = c0 + (k & 1);
                const double wk = ((k >> 1) ? av : 1.0 - av) * ((k & 1) ? au : 1.0 - au);
                if (rr >= 0 && rr < right.rows && cc >= 0 && cc < right.cols) {
                    off[taps] = rr * right.cols + cc;
                    w[taps] = wk;
                    ++taps;
                }
            }
            for (std::int64_t ch = 0; ch < right.channels; ++ch) {
                const T *src = right.data.data() + ch * plane;
                double acc = 0.0;
                for (int k = 0; k < taps; ++k) {
                    acc += w[k] * double(src[off[k]]);
                }
                out.at(ch, r, c) = static_cast<T>(acc);
            }
        }
    }
    return out;
}

template <std::floating_point T>
BasicGrid<T>
costVolume(const ImageFeatureMap<T> &left, const ImageFeatureMap<T> &right, std::span<const double> planes,
           CostMode mode) {
    if (planes.empty()) {
        fail(Errc::InvalidArgument, "cost_volume: plane list is empty");
    }
    if (left.channels != right.channels || left.stride != right.stride) {
        fail(Errc::ShapeMismatch, "cost_volume: left and right feature maps differ in channels or stride");
    }
    auto space = FrustumSpace::make(left.camera, std::vector<double>(planes.begin(), planes.end()), left.stride);
    const GridDims d = space->dims();
    if (d.x != left.rows || d.y != left.cols) {
        fail(Errc::ShapeMismatch, "cost_volume: left feature map does not match its camera");
    }
    const std::int64_t channels = mode == CostMode::Correlation ? 1 : 2 * left.channels;
    BasicGrid<T> out(space, left.camera.pose(), 1, channels);
    const std::int64_t pixels = left.rows * left.cols;
    for (std::size_t k = 0; k < planes.size(); ++k) {
        const ImageFeatureMap<T> warped = planeSweepWarp(right, left.camera, right.camera, planes[k]);
        if (mode == CostMode::Correlation) {
            for (std::int64_t p = 0; p < pixels; ++p) {
                double acc = 0.0;
                for (std::int64_t ch = 0; ch < left.channels; ++ch) {
                    acc += double(left.data[std::size_t(ch * pixels + p)]) *
                           double(warped.data[std::size_t(ch * pixels + p)]);
                }
                const double cost = left.channels > 0 ? acc / double(left.channels) : 0.0;
                out.data()[std::size_t(std::int64_t(k) * pixels + p)] = static_cast<T>(cost);
            }
        } else {
            for (std::int64_t ch = 0; ch < left.channels; ++ch) {
                for (std::int64_t p = 0; p < pixels; ++p) {
                    out.at(0, ch, std::int64_t(k), p / left.cols, p % left.cols) = left.data[std::size_t(ch * pixels + p)];
                    out.at(0, left.channels + ch, std::int64_t(k), p / left.cols, p % left.cols) =
                        warped.data[std::size_t(ch * pixels + p)];
                }
            }
        }
    }
    return out;
}

template <std::floating_point T>
BasicGrid<T>
frustumToCartesian(const BasicGrid<T> &cost_volume, std::shared_ptr<const CartesianSpace> target, const Pose &pose) {
    if (cost_volume.space().kind() != SpaceKind::Frustum) {
        fail(Errc::SpaceMismatch, "frustum_to_cartesian: source grid is not in a frustum space");
    }
    return spaceWarp(cost_volume, std::move(target), pose);
}

#define GSF_INSTANTIATE_STEREO(T)                                                                        \
    template ImageFeatureMap<T> planeSweepWarp(const ImageFeatureMap<T> &, const CameraModel &,          \
                                               const CameraModel &, double);                             \
    template BasicGrid<T> costVolume(const ImageFeatureMap<T> &, const ImageFeatureMap<T> &,             \
                                     std::span<const double>, CostMode);                                 \
    template BasicGrid<T> frustumToCartesian(const BasicGrid<T> &, std::shared_ptr<const CartesianSpace>, \
                                             const Pose &);

GSF_INSTANTIATE_STEREO(float)
GSF_INSTANTIATE_STEREO(double)

#undef GSF_INSTANTIATE_STEREO

} // namespace gsf
