// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gsf/error.h>
#include <gsf/geometry.h>

#include <concepts>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace gsf {

/// Planar float image, (channels, rows, cols).
struct Image {
    int channels = 0;
    int rows = 0;
    int cols = 0;
    std::vector<float> data;

    Image() = default;
    Image(int channels, int rows, int cols, float fill = 0.0f);

    float
    at(int c, int r, int col) const {
        return data[(std::size_t(c) * rows + r) * cols + col];
    }
    float &
    at(int c, int r, int col) {
        return data[(std::size_t(c) * rows + r) * cols + col];
    }
};

// FIMG planar float image: "FIMG" | u32 channels, rows, cols | f32 LE payload.
void writeImageFile(const Image &image, const std::filesystem::path &path);
/// Reads FIMG, or PNG (8/16-bit gray/RGB/RGBA, scaled to [0, 1]) by extension.
Image readImageFile(const std::filesystem::path &path);
/// 8-bit PNG of the first one or three channels, clamped to [0, 1].
void writePngFile(const Image &image, const std::filesystem::path &path);

/// Feature map of one camera, (C, rows, cols). Feature pixel (r, c) sits at
/// full-resolution pixel (r * stride, c * stride).
template <std::floating_point T> struct ImageFeatureMap {
    std::int64_t channels = 0;
    std::int64_t rows = 0;
    std::int64_t cols = 0;
    std::vector<T> data;
    CameraModel camera;
    int stride = 1;

    /// Throws unless rows/cols equal the camera image size divided by stride.
    ImageFeatureMap(std::int64_t channels, std::int64_t rows, std::int64_t cols, std::vector<T> data,
                    CameraModel camera, int stride = 1)
        : channels(channels), rows(rows), cols(cols), data(std::move(data)), camera(std::move(camera)),
          stride(stride) {
        if (stride < 1) {
            fail(Errc::InvalidArgument, "feature map stride must be >= 1");
        }
        if (rows != this->camera.rows() / stride || cols != this->camera.cols() / stride) {
            fail(Errc::ShapeMismatch, "feature map size does not match camera image size / stride");
        }
        if (channels < 0 || std::int64_t(this->data.size()) != channels * rows * cols) {
            fail(Errc::ShapeMismatch, "feature map payload does not match its shape");
        }
    }

    ImageFeatureMap(const Image &image, CameraModel camera, int stride = 1)
        : ImageFeatureMap(image.channels, image.rows, image.cols,
                          std::vector<T>(image.data.begin(), image.data.end()), std::move(camera), stride) {}

    T
    at(std::int64_t c, std::int64_t r, std::int64_t col) const {
        return data[std::size_t((c * rows + r) * cols + col)];
    }
    T &
    at(std::int64_t c, std::int64_t r, std::int64_t col) {
        return data[std::size_t((c * rows + r) * cols + col)];
    }
};

/// Subsamples raw image channels at the stride.
Image rawFeatures(const Image &image, int stride);

struct PatchFeaturizerConfig {
    std::uint64_t seed = 0;
    int out_channels = 8;
    int radius = 1;
    int stride = 1;
    /// Subtract the per-channel patch mean before projecting.
    bool zero_mean = false;
    /// Scale each output pixel's feature vector to unit L2 norm.
    bool normalize = false;
};

/// Fixed-seed random projection of (2r+1)² patches, zero-padded at borders.
/// Linear in the image when zero_mean and normalize are both off.
class PatchFeaturizer {
  public:
    PatchFeaturizer(PatchFeaturizerConfig config, int in_channels);

    Image apply(const Image &image) const;

    const PatchFeaturizerConfig &
    config() const {
        return config_;
    }

  private:
    PatchFeaturizerConfig config_;
    int in_channels_;
    std::vector<float> weights_; // out × (in · (2r+1)²)
};

} // namespace gsf
