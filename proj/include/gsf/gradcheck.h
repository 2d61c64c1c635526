// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gsf {

inline constexpr double kGradcheckTolerance = 1e-4;

struct GradcheckResult {
    std::string name;
    std::int64_t entries = 0;
    double max_relative_error = 0.0;
    bool passed = false;
};

/// |a - n| / max(|a|, |n|, 1e-6).
double gradientRelativeError(double analytic, double numeric);

using ScalarLoss = std::function<double(std::span<const double>)>;

/// Central differences of `loss` around `x`, one entry at a time, compared
/// against `analytic`.
GradcheckResult compareWithFiniteDifferences(std::string name, const ScalarLoss &loss, std::vector<double> x,
                                             std::span<const double> analytic, double step,
                                             double tolerance = kGradcheckTolerance);

/// Called on the analytic gradient before comparison; lets tests inject faults.
using GradientTamper = std::function<void(std::vector<double> &)>;

struct GradcheckCase {
    std::uint64_t seed = 0;
    GradientTamper tamper;
};

/// Random source grid (≤ 5³) warped under a random rigid transform.
GradcheckResult gradcheckSpaceWarp(const GradcheckCase &c);
/// Warp to the source's own space and pose.
GradcheckResult gradcheckSpaceWarpIdentity(const GradcheckCase &c);
/// Raycast with bilinear sampling and mean reduction over two cameras.
GradcheckResult gradcheckRaycast(const GradcheckCase &c);
/// PointNet weights on ≤ 20 points.
GradcheckResult gradcheckPointNet(const GradcheckCase &c);

/// All of the above with seeds derived from `seed`.
std::vector<GradcheckResult> runGradcheckSuite(std::uint64_t seed, int instances_per_op = 3);

} // namespace gsf
