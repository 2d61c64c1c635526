// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/image.h>

#include "binary_io.h"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <array>
#include <cmath>
#include <fstream>
#include <random>

namespace gsf {

namespace {

constexpr std::array<char, 4> kImageMagic{'F', 'I', 'M', 'G'};

bool
hasExtension(const std::filesystem::path &p, const char *ext) {
    std::string e = p.extension().string();
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char ch) { return char(std::tolower(ch)); });
    return e == ext;
}

Image
readPng(const std::filesystem::path &path) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.string().c_str())) {
        fail(Errc::Io, "cannot read PNG " + path.string() + ": " + png.message);
    }
    const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
    png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    const int channels = color ? 3 : 1;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
        png_image_free(&png);
        fail(Errc::Format, "cannot decode PNG " + path.string() + ": " + png.message);
    }
    Image img(channels, int(png.height), int(png.width));
    for (int r = 0; r < img.rows; ++r) {
        for (int c = 0; c < img.cols; ++c) {
            for (int ch = 0; ch < channels; ++ch) {
                img.at(ch, r, c) = float(buffer[(std::size_t(r) * img.cols + c) * channels + ch]) / 255.0f;
            }
        }
    }
    return img;
}

} // namespace

Image::Image(int channels, int rows, int cols, float fill)
    : channels(channels), rows(rows), cols(cols),
      data(std::size_t(std::max(channels, 0)) * std::max(rows, 0) * std::max(cols, 0), fill) {
    if (channels < 0 || rows < 0 || cols < 0) {
        fail(Errc::InvalidArgument, "image dims must be non-negative");
    }
}

void
writeImageFile(const Image &image, const std::filesystem::path &path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        fail(Errc::Io, "cannot open " + path.string() + " for writing");
    }
    os.write(kImageMagic.data(), kImageMagic.size());
    detail::putLE<std::uint32_t>(os, std::uint32_t(image.channels));
    detail::putLE<std::uint32_t>(os, std::uint32_t(image.rows));
    detail::putLE<std::uint32_t>(os, std::uint32_t(image.cols));
    detail::putArrayLE<float>(os, std::span<const float>(image.data));
    if (!os) {
        fail(Errc::Io, "failed writing " + path.string());
    }
}

Image
readImageFile(const std::filesystem::path &path) {
    if (hasExtension(path, ".png")) {
        return readPng(path);
    }
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        fail(Errc::Io, "cannot open image " + path.string());
    }
    std::array<char, 4> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != kImageMagic) {
        fail(Errc::Format, "bad magic in image " + path.string());
    }
    auto c = detail::getLE<std::uint32_t>(is);
    auto r = detail::getLE<std::uint32_t>(is);
    auto w = detail::getLE<std::uint32_t>(is);
    if (!c || !r || !w) {
        fail(Errc::Format, "truncated image header in " + path.string());
    }
    if (std::uint64_t(*c) * *r * *w > (std::uint64_t(1) << 31)) {
        fail(Errc::Format, "image dims overflow in " + path.string());
    }
    Image img(static_cast<int>(*c), static_cast<int>(*r), static_cast<int>(*w));
    if (!detail::getArrayLE<float>(is, std::span<float>(img.data))) {
        fail(Errc::Format, "truncated image payload in " + path.string());
    }
    return img;
}

void
writePngFile(const Image &image, const std::filesystem::path &path) {
    if (image.channels < 1) {
        fail(Errc::InvalidArgument, "cannot write an image without channels as PNG");
    }
    const int channels = image.channels >= 3 ? 3 : 1;
    std::vector<png_byte> buffer(std::size_t(image.rows) * image.cols * channels);
    for (int r = 0; r < image.rows; ++r) {
        for (int c = 0; c < image.cols; ++c) {
            for (int ch = 0; ch < channels; ++ch) {
                const float v = std::clamp(image.at(ch, r, c), 0.0f, 1.0f);
                buffer[(std::size_t(r) * image.cols + c) * channels + ch] = png_byte(std::lround(v * 255.0f));
            }
        }
    }
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = png_uint_32(image.cols);
    png.height = png_uint_32(image.rows);
    png.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&png, path.string().c_str(), 0, buffer.data(), 0, nullptr)) {
        fail(Errc::Io, "cannot write PNG " + path.string() + ": " + png.message);
    }
}

Image
rawFeatures(const Image &image, int stride) {
    if (stride < 1) {
        fail(Errc::InvalidArgument, "stride must be >= 1");
    }
    Image out(image.channels, image.rows / stride, image.cols / stride);
    for (int ch = 0; ch < out.channels; ++ch) {
        for (int r = 0; r < out.rows; ++r) {
            for (int c = 0; c < out.cols; ++c) {
                out.at(ch, r, c) = image.at(ch, r * stride, c * stride);
            }
        }
    }
    return out;
}

PatchFeaturizer::PatchFeaturizer(PatchFeaturizerConfig config, int in_channels)
    : config_(config), in_channels_(in_channels) {
    if (config_.out_channels < 1 || config_.radius < 0 || config_.stride < 1 || in_channels < 1) {
        fail(Errc::InvalidArgument, "invalid patch featurizer configuration");
    }
    const int side = 2 * config_.radius + 1;
    const std::size_t fan_in = std::size_t(in_channels) * side * side;
    weights_.resize(std::size_t(config_.out_channels) * fan_in);
    std::mt19937_64 rng(config_.seed);
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(double(fan_in)));
    for (float &w : weights_) {
        w = float(normal(rng));
    }
}

Image
PatchFeaturizer::apply(const Image &image) const {
    if (image.channels != in_channels_) {
        fail(Errc::ShapeMismatch, "patch featurizer channel count mismatch");
    }
    const int s = config_.stride, rad = config_.radius, side = 2 * rad + 1;
    const std::size_t fan_in = std::size_t(in_channels_) * side * side;
    Image out(config_.out_channels, image.rows / s, image.cols / s);
    std::vector<double> patch(fan_in);
    for (int r = 0; r < out.rows; ++r) {
        for (int c = 0; c < out.cols; ++c) {
            std::size_t k = 0;
            for (int ch = 0; ch < in_channels_; ++ch) {
                const std::size_t begin = k;
                double mean = 0.0;
                for (int dr = -rad; dr <= rad; ++dr) {
                    for (int dc = -rad; dc <= rad; ++dc, ++k) {
                        const int rr = r * s + dr, cc = c * s + dc;
                        const bool inside = rr >= 0 && rr < image.rows && cc >= 0 && cc < image.cols;
                        patch[k] = inside ? double(image.at(ch, rr, cc)) : 0.0;
                        mean += patch[k];
                    }
                }
                if (config_.zero_mean) {
                    mean /= double(side * side);
                    for (std::size_t i = begin; i < k; ++i) {
                        patch[i] -= mean;
                    }
                }
            }
            double norm = 0.0;
            std::vector<double> feat(std::size_t(config_.out_channels), 0.0);
            for (int o = 0; o < config_.out_channels; ++o) {
                const float *w = weights_.data() + std::size_t(o) * fan_in;
                double acc = 0.0;
                for (std::size_t i = 0; i < fan_in; ++i) {
                    acc += double(w[i]) * patch[i];
                }
                feat[std::size_t(o)] = acc;
                norm += acc * acc;
            }
            norm = std::sqrt(norm);
            for (int o = 0; o < config_.out_channels; ++o) {
                double v = feat[std::size_t(o)];
                if (config_.normalize) {
                    v = norm > 1e-12 ? v / norm : 0.0;
                }
                out.at(o, r, c) = float(v);
            }
        }
    }
    return out;
}

} // namespace gsf
