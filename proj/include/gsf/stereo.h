// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gsf/grid.h>
#include <gsf/image.h>

#include <memory>
#include <span>
#include <vector>

namespace gsf {

/// Resample `right` into the left image through the fronto-parallel plane at
/// `depth` in the left camera frame. Bilinear, zero outside the right image.
/// A zero-baseline pair logs a warning and returns `right` unchanged.
template <std::floating_point T>
ImageFeatureMap<T> planeSweepWarp(const ImageFeatureMap<T> &right, const CameraModel &left_camera,
                                  const CameraModel &right_camera, double depth);

enum class CostMode {
    /// C = 1: channel mean of left · warped right.
    Correlation,
    /// C = 2 * C_img: left channels followed by warped right channels.
    Concat,
};

/// Plane-sweep volume over (plane, row, col) in the left camera's
/// FrustumSpace. The grid pose is the left camera pose.
template <std::floating_point T>
BasicGrid<T> costVolume(const ImageFeatureMap<T> &left, const ImageFeatureMap<T> &right,
                        std::span<const double> planes, CostMode mode = CostMode::Correlation);

/// SpaceWarp of a frustum grid into a Cartesian space.
template <std::floating_point T>
BasicGrid<T> frustumToCartesian(const BasicGrid<T> &cost_volume, std::shared_ptr<const CartesianSpace> target,
                                const Pose &pose);

} // namespace gsf
