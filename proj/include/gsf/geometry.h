// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gsf {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Rigid transform mapping points of a child frame into `baseFrame()`.
///
/// Vehicle frames are right-handed with X forward, Y left and Z up. Camera
/// frames use Z forward, X right and Y down.
class Pose {
  public:
    Pose();
    /// Throws Errc::InvalidArgument unless `rotation` is orthonormal with
    /// determinant +1 (entrywise tolerance 1e-9 on RᵀR − I).
    Pose(const Mat3 &rotation, const Vec3 &translation, std::string base_frame = "reference");

    static Pose identity(std::string base_frame = "reference");
    static Pose translation(const Vec3 &t, std::string base_frame = "reference");

    const Mat3 &
    rotation() const {
        return rotation_;
    }
    const Vec3 &
    translation() const {
        return translation_;
    }
    const std::string &
    baseFrame() const {
        return base_frame_;
    }

    Vec3 apply(const Vec3 &point) const;
    Pose inverse() const;

    /// Row-major 3×4 [R | t].
    std::array<double, 12> toRowMajor() const;
    static Pose fromRowMajor(const std::array<double, 12> &values, std::string base_frame = "reference");

    bool operator==(const Pose &other) const;

  private:
    struct Unchecked {};
    Pose(Unchecked, const Mat3 &rotation, const Vec3 &translation, std::string base_frame);

    Mat3 rotation_;
    Vec3 translation_;
    std::string base_frame_;

    friend Pose compose(const Pose &a, const Pose &b);
};

/// Applying the result equals applying `b` first, then `a`.
Pose compose(const Pose &a, const Pose &b);
Vec3 applyPose(const Pose &p, const Vec3 &point);

/// Largest entry of |a.R − b.R| and |a.t − b.t|.
double maxPoseDifference(const Pose &a, const Pose &b);

Mat3 rotationX(double radians);
Mat3 rotationY(double radians);
Mat3 rotationZ(double radians);

/// Camera optical frame (Z forward, X right, Y down) expressed in a vehicle
/// frame (X forward, Y left, Z up) for a camera looking along vehicle +X.
Mat3 opticalToVehicle();

/// Minimum depth for a projection to count as in front of the camera.
inline constexpr double kMinProjectionDepth = 1e-3;

struct Projection {
    double u = 0.0;
    double v = 0.0;
    double depth = 0.0;
    bool valid = false;
};

/// Pinhole camera. Pixel centers sit at integer coordinates, so a projection
/// is in-bounds when 0 <= u <= cols-1 and 0 <= v <= rows-1.
class CameraModel {
  public:
    CameraModel(double fx, double fy, double cx, double cy, int rows, int cols, Pose pose = Pose());

    double
    fx() const {
        return fx_;
    }
    double
    fy() const {
        return fy_;
    }
    double
    cx() const {
        return cx_;
    }
    double
    cy() const {
        return cy_;
    }
    int
    rows() const {
        return rows_;
    }
    int
    cols() const {
        return cols_;
    }
    /// Camera-to-reference transform.
    const Pose &
    pose() const {
        return pose_;
    }

    CameraModel withPose(Pose pose) const;

    Projection projectCameraFrame(const Vec3 &point_camera) const;
    Projection project(const Vec3 &point_world) const;
    Vec3 unprojectCameraFrame(double u, double v, double depth) const;
    Vec3 unproject(double u, double v, double depth) const;

    bool operator==(const CameraModel &other) const;

  private:
    double fx_, fy_, cx_, cy_;
    int rows_, cols_;
    Pose pose_;
    Pose world_to_camera_;
};

/// Grid extents in (Z, X, Y) order.
struct GridDims {
    std::int64_t z = 0;
    std::int64_t x = 0;
    std::int64_t y = 0;

    std::int64_t
    count() const {
        return z * x * y;
    }
    bool operator==(const GridDims &) const = default;
};

std::string toString(const GridDims &dims);

/// Continuous (z, x, y) grid coordinate with an extent flag.
struct GridPoint {
    Vec3 index = Vec3::Zero();
    bool in_bounds = false;
};

enum class SpaceKind : std::uint8_t { Cartesian = 1, Frustum = 2 };

/// Coordinate system of a grid. "World" coordinates here are the space's own
/// frame; a Grid's Pose carries them into the reference frame.
class Space {
  public:
    virtual ~Space() = default;

    virtual SpaceKind kind() const = 0;
    virtual GridDims dims() const = 0;
    virtual Vec3 gridToWorld(const Vec3 &index) const = 0;
    virtual GridPoint worldToGrid(const Vec3 &point) const = 0;
    virtual bool equals(const Space &other) const = 0;
    virtual std::string describe() const = 0;
};

using SpacePtr = std::shared_ptr<const Space>;

/// Axis-aligned voxel space. Corners and cell sizes are (x, y, z) meters;
/// voxel centers are min_corner + (index + 0.5) * cell_size.
class CartesianSpace final : public Space {
  public:
    CartesianSpace(const Vec3 &min_corner, const Vec3 &max_corner, const Vec3 &cell_size);

    static std::shared_ptr<const CartesianSpace>
    make(const Vec3 &min_corner, const Vec3 &max_corner, const Vec3 &cell_size) {
        return std::make_shared<const CartesianSpace>(min_corner, max_corner, cell_size);
    }

    SpaceKind
    kind() const override {
        return SpaceKind::Cartesian;
    }
    GridDims
    dims() const override {
        return dims_;
    }
    Vec3 gridToWorld(const Vec3 &index) const override;
    /// in_bounds is true inside the closed physical extent.
    GridPoint worldToGrid(const Vec3 &point) const override;
    bool equals(const Space &other) const override;
    std::string describe() const override;

    const Vec3 &
    minCorner() const {
        return min_corner_;
    }
    const Vec3 &
    maxCorner() const {
        return max_corner_;
    }
    const Vec3 &
    cellSize() const {
        return cell_size_;
    }

    /// Throws Errc::OutOfRange for indices outside dims.
    Vec3 voxelCenter(std::int64_t z, std::int64_t x, std::int64_t y) const;
    Vec3 voxelCenter(std::int64_t flat_index) const;

    /// Cell containing `point` under the half-open rule [min, max).
    std::optional<std::array<std::int64_t, 3>> cellOf(const Vec3 &point) const;

    std::int64_t
    flatIndex(std::int64_t z, std::int64_t x, std::int64_t y) const {
        return (z * dims_.x + x) * dims_.y + y;
    }

  private:
    Vec3 min_corner_, max_corner_, cell_size_;
    GridDims dims_;
};

/// Camera frustum indexed by (depth plane, row, col). Rows and cols are
/// feature pixels at the given stride over the camera image. Local
/// coordinates are the camera frame; the camera's own pose is not applied.
class FrustumSpace final : public Space {
  public:
    FrustumSpace(CameraModel camera, std::vector<double> depth_planes, int stride = 1);

    static std::shared_ptr<const FrustumSpace>
    make(CameraModel camera, std::vector<double> depth_planes, int stride = 1) {
        return std::make_shared<const FrustumSpace>(std::move(camera), std::move(depth_planes), stride);
    }

    SpaceKind
    kind() const override {
        return SpaceKind::Frustum;
    }
    GridDims
    dims() const override {
        return dims_;
    }
    Vec3 gridToWorld(const Vec3 &index) const override;
    /// Points at or behind kMinProjectionDepth are never in bounds.
    GridPoint worldToGrid(const Vec3 &point) const override;
    bool equals(const Space &other) const override;
    std::string describe() const override;

    const CameraModel &
    camera() const {
        return camera_;
    }
    const std::vector<double> &
    depthPlanes() const {
        return planes_;
    }
    int
    stride() const {
        return stride_;
    }

    /// Piecewise-linear depth at a continuous plane coordinate, extrapolated
    /// with the end segments (unit spacing for a single plane).
    double depthAt(double plane_coord) const;
    double planeCoordinate(double depth) const;

  private:
    CameraModel camera_;
    std::vector<double> planes_;
    int stride_;
    GridDims dims_;
};

/// `count` depths uniform in inverse depth between near and far, increasing.
std::vector<double> inverseDepthPlanes(double near, double far, int count);

} // namespace gsf
