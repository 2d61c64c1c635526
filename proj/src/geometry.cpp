// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/error.h>
#include <gsf/geometry.h>

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gsf {

namespace {

constexpr double kOrthonormalTol = 1e-9;
constexpr double kExtentTol = 1e-6;

void
checkRotation(const Mat3 &r) {
    if (!r.allFinite()) {
        fail(Errc::InvalidArgument, "pose rotation is not finite");
    }
    const Mat3 err = r.transpose() * r - Mat3::Identity();
    if (err.cwiseAbs().maxCoeff() > kOrthonormalTol) {
        fail(Errc::InvalidArgument, "pose rotation is not orthonormal");
    }
    if (r.determinant() <= 0.0) {
        fail(Errc::InvalidArgument, "pose rotation has negative determinant");
    }
}

std::string
vecString(const Vec3 &v) {
    std::ostringstream os;
    os << "(" << v.x() << ", " << v.y() << ", " << v.z() << ")";
    return os.str();
}

} // namespace

// ---------------------------------------------------------------------------
// Pose

Pose::Pose() : rotation_(Mat3::Identity()), translation_(Vec3::Zero()), base_frame_("reference") {}

Pose::Pose(const Mat3 &rotation, const Vec3 &translation, std::string base_frame)
    : rotation_(rotation), translation_(translation), base_frame_(std::move(base_frame)) {
    checkRotation(rotation_);
    if (!translation_.allFinite()) {
        fail(Errc::InvalidArgument, "pose translation is not finite");
    }
}

Pose::Pose(Unchecked, const Mat3 &rotation, const Vec3 &translation, std::string base_frame)
    : rotation_(rotation), translation_(translation), base_frame_(std::move(base_frame)) {}

Pose
Pose::identity(std::string base_frame) {
    return Pose(Mat3::Identity(), Vec3::Zero(), std::move(base_frame));
}

Pose
Pose::translation(const Vec3 &t, std::string base_frame) {
    return Pose(Mat3::Identity(), t, std::move(base_frame));
}

Vec3
Pose::apply(const Vec3 &point) const {
    return rotation_ * point + translation_;
}

Pose
Pose::inverse() const {
    const Mat3 rt = rotation_.transpose();
    return Pose(Unchecked{}, rt, -(rt * translation_), base_frame_);
}

std::array<double, 12>
Pose::toRowMajor() const {
    std::array<double, 12> out{};
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            out[r * 4 + c] = rotation_(r, c);
        }
        out[r * 4 + 3] = translation_(r);
    }
    return out;
}

Pose
Pose::fromRowMajor(const std::array<double, 12> &values, std::string base_frame) {
    Mat3 r;
    Vec3 t;
    for (int i = 0; i < 3; ++i) {
        for (int c = 0; c < 3; ++c) {
            r(i, c) = values[i * 4 + c];
        }
        t(i) = values[i * 4 + 3];
    }
    return Pose(r, t, std::move(base_frame));
}

bool
Pose::operator==(const Pose &other) const {
    return rotation_ == other.rotation_ && translation_ == other.translation_ &&
           base_frame_ == other.base_frame_;
}

Pose
compose(const Pose &a, const Pose &b) {
    return Pose(Pose::Unchecked{},
                a.rotation_ * b.rotation_,
                a.rotation_ * b.translation_ + a.translation_,
                a.base_frame_);
}

Vec3
applyPose(const Pose &p, const Vec3 &point) {
    return p.apply(point);
}

double
maxPoseDifference(const Pose &a, const Pose &b) {
    return std::max((a.rotation() - b.rotation()).cwiseAbs().maxCoeff(),
                    (a.translation() - b.translation()).cwiseAbs().maxCoeff());
}

Mat3
rotationX(double radians) {
    const double c = std::cos(radians), s = std::sin(radians);
    Mat3 r;
    r << 1, 0, 0, 0, c, -s, 0, s, c;
    return r;
}

Mat3
rotationY(double radians) {
    const double c = std::cos(radians), s = std::sin(radians);
    Mat3 r;
    r << c, 0, s, 0, 1, 0, -s, 0, c;
    return r;
}

Mat3
rotationZ(double radians) {
    const double c = std::cos(radians), s = std::sin(radians);
    Mat3 r;
    r << c, -s, 0, s, c, 0, 0, 0, 1;
    return r;
}

Mat3
opticalToVehicle() {
    // Columns are the optical X (right), Y (down), Z (forward) axes.
    Mat3 r;
    r << 0, 0, 1, -1, 0, 0, 0, -1, 0;
    return r;
}

// ---------------------------------------------------------------------------
// CameraModel

CameraModel::CameraModel(double fx, double fy, double cx, double cy, int rows, int cols, Pose pose)
    : fx_(fx), fy_(fy), cx_(cx), cy_(cy), rows_(rows), cols_(cols), pose_(std::move(pose)),
      world_to_camera_(pose_.inverse()) {
    if (!(fx > 0.0) || !(fy > 0.0) || !std::isfinite(fx) || !std::isfinite(fy)) {
        fail(Errc::InvalidArgument, "camera focal lengths must be positive");
    }
    if (rows <= 0 || cols <= 0) {
        fail(Errc::InvalidArgument, "camera image size must be positive");
    }
    if (!(cx >= 0.0 && cx <= cols && cy >= 0.0 && cy <= rows)) {
        fail(Errc::InvalidArgument, "camera principal point lies outside the image");
    }
}

CameraModel
CameraModel::withPose(Pose pose) const {
    return CameraModel(fx_, fy_, cx_, cy_, rows_, cols_, std::move(pose));
}

Projection
CameraModel::projectCameraFrame(const Vec3 &pc) const {
    Projection out;
    out.depth = pc.z();
    if (!(pc.z() > kMinProjectionDepth)) {
        return out;
    }
    out.u = fx_ * pc.x() / pc.z() + cx_;
    out.v = fy_ * pc.y() / pc.z() + cy_;
    out.valid = out.u >= 0.0 && out.u <= cols_ - 1 && out.v >= 0.0 && out.v <= rows_ - 1;
    return out;
}

Projection
CameraModel::project(const Vec3 &point_world) const {
    return projectCameraFrame(world_to_camera_.apply(point_world));
}

Vec3
CameraModel::unprojectCameraFrame(double u, double v, double depth) const {
    return Vec3((u - cx_) / fx_ * depth, (v - cy_) / fy_ * depth, depth);
}

Vec3
CameraModel::unproject(double u, double v, double depth) const {
    return pose_.apply(unprojectCameraFrame(u, v, depth));
}

bool
CameraModel::operator==(const CameraModel &o) const {
    return fx_ == o.fx_ && fy_ == o.fy_ && cx_ == o.cx_ && cy_ == o.cy_ && rows_ == o.rows_ &&
           cols_ == o.cols_ && pose_ == o.pose_;
}

// ---------------------------------------------------------------------------
// Spaces

std::string
toString(const GridDims &d) {
    std::ostringstream os;
    os << "(" << d.z << ", " << d.x << ", " << d.y << ")";
    return os.str();
}

CartesianSpace::CartesianSpace(const Vec3 &min_corner, const Vec3 &max_corner, const Vec3 &cell_size)
    : min_corner_(min_corner), max_corner_(max_corner), cell_size_(cell_size) {
    if (!min_corner.allFinite() || !max_corner.allFinite() || !cell_size.allFinite()) {
        fail(Errc::InvalidArgument, "cartesian space parameters must be finite");
    }
    std::array<std::int64_t, 3> n{}; // x, y, z
    for (int k = 0; k < 3; ++k) {
        if (!(cell_size[k] > 0.0)) {
            fail(Errc::InvalidArgument, "cell size must be strictly positive");
        }
        const double extent = max_corner[k] - min_corner[k];
        const double count = std::round(extent / cell_size[k]);
        if (count < 1.0) {
            fail(Errc::InvalidArgument, "cartesian space extent is smaller than one cell");
        }
        if (std::abs(count * cell_size[k] - extent) > kExtentTol) {
            fail(Errc::InvalidArgument,
                 "cartesian extent " + vecString(max_corner - min_corner) +
                     " is not a whole number of cells " + vecString(cell_size));
        }
        n[k] = static_cast<std::int64_t>(count);
    }
    dims_ = GridDims{n[2], n[0], n[1]};
}

Vec3
CartesianSpace::gridToWorld(const Vec3 &index) const {
    return Vec3(min_corner_.x() + (index[1] + 0.5) * cell_size_.x(),
                min_corner_.y() + (index[2] + 0.5) * cell_size_.y(),
                min_corner_.z() + (index[0] + 0.5) * cell_size_.z());
}

GridPoint
CartesianSpace::worldToGrid(const Vec3 &p) const {
    GridPoint out;
    out.index = Vec3((p.z() - min_corner_.z()) / cell_size_.z() - 0.5,
                     (p.x() - min_corner_.x()) / cell_size_.x() - 0.5,
                     (p.y() - min_corner_.y()) / cell_size_.y() - 0.5);
    out.in_bounds = (p.array() >= min_corner_.array()).all() && (p.array() <= max_corner_.array()).all();
    return out;
}

bool
CartesianSpace::equals(const Space &other) const {
    const auto *o = dynamic_cast<const CartesianSpace *>(&other);
    return o != nullptr && o->min_corner_ == min_corner_ && o->max_corner_ == max_corner_ &&
           o->cell_size_ == cell_size_;
}

std::string
CartesianSpace::describe() const {
    return "cartesian " + vecString(min_corner_) + "->" + vecString(max_corner_) + " cell " +
           vecString(cell_size_) + " dims " + toString(dims_);
}

Vec3
CartesianSpace::voxelCenter(std::int64_t z, std::int64_t x, std::int64_t y) const {
    if (z < 0 || x < 0 || y < 0 || z >= dims_.z || x >= dims_.x || y >= dims_.y) {
        fail(Errc::OutOfRange,
             "voxel index (" + std::to_string(z) + ", " + std::to_string(x) + ", " + std::to_string(y) +
                 ") outside dims " + toString(dims_));
    }
    return gridToWorld(Vec3(double(z), double(x), double(y)));
}

Vec3
CartesianSpace::voxelCenter(std::int64_t flat) const {
    if (flat < 0 || flat >= dims_.count()) {
        fail(Errc::OutOfRange, "flat voxel index " + std::to_string(flat) + " out of range");
    }
    const std::int64_t y = flat % dims_.y;
    const std::int64_t x = (flat / dims_.y) % dims_.x;
    const std::int64_t z = flat / (dims_.y * dims_.x);
    return gridToWorld(Vec3(double(z), double(x), double(y)));
}

std::optional<std::array<std::int64_t, 3>>
CartesianSpace::cellOf(const Vec3 &p) const {
    const std::array<double, 3> rel{(p.z() - min_corner_.z()) / cell_size_.z(),
                                    (p.x() - min_corner_.x()) / cell_size_.x(),
                                    (p.y() - min_corner_.y()) / cell_size_.y()};
    const std::array<std::int64_t, 3> limit{dims_.z, dims_.x, dims_.y};
    std::array<std::int64_t, 3> out{};
    for (int k = 0; k < 3; ++k) {
        if (!std::isfinite(rel[k])) {
            return std::nullopt;
        }
        const double f = std::floor(rel[k]);
        if (f < 0.0 || f >= double(limit[k])) {
            return std::nullopt;
        }
        out[k] = static_cast<std::int64_t>(f);
    }
    return out;
}

FrustumSpace::FrustumSpace(CameraModel camera, std::vector<double> depth_planes, int stride)
    : camera_(std::move(camera)), planes_(std::move(depth_planes)), stride_(stride) {
    if (planes_.empty()) {
        fail(Errc::InvalidArgument, "frustum space needs at least one depth plane");
    }
    for (std::size_t i = 0; i < planes_.size(); ++i) {
        if (!(planes_[i] > 0.0) || !std::isfinite(planes_[i])) {
            fail(Errc::InvalidArgument, "depth planes must be positive and finite");
        }
        if (i > 0 && !(planes_[i] > planes_[i - 1])) {
            fail(Errc::InvalidArgument, "depth planes must be strictly increasing");
        }
    }
    if (stride_ < 1) {
        fail(Errc::InvalidArgument, "frustum stride must be >= 1");
    }
    dims_ = GridDims{std::int64_t(planes_.size()), camera_.rows() / stride_, camera_.cols() / stride_};
    if (dims_.x < 1 || dims_.y < 1) {
        fail(Errc::InvalidArgument, "frustum stride exceeds image size");
    }
}

double
FrustumSpace::depthAt(double k) const {
    const auto n = static_cast<std::int64_t>(planes_.size());
    if (n == 1) {
        return planes_[0] + k;
    }
    std::int64_t seg = static_cast<std::int64_t>(std::floor(k));
    seg = std::clamp<std::int64_t>(seg, 0, n - 2);
    const double t = k - double(seg);
    return planes_[seg] + t * (planes_[seg + 1] - planes_[seg]);
}

double
FrustumSpace::planeCoordinate(double depth) const {
    const auto n = static_cast<std::int64_t>(planes_.size());
    if (n == 1) {
        return depth - planes_[0];
    }
    auto it = std::upper_bound(planes_.begin(), planes_.end(), depth);
    std::int64_t seg = static_cast<std::int64_t>(it - planes_.begin()) - 1;
    seg = std::clamp<std::int64_t>(seg, 0, n - 2);
    return double(seg) + (depth - planes_[seg]) / (planes_[seg + 1] - planes_[seg]);
}

Vec3
FrustumSpace::gridToWorld(const Vec3 &index) const {
    const double depth = depthAt(index[0]);
    return camera_.unprojectCameraFrame(index[2] * stride_, index[1] * stride_, depth);
}

GridPoint
FrustumSpace::worldToGrid(const Vec3 &p) const {
    GridPoint out;
    if (!(p.z() > kMinProjectionDepth)) {
        return out;
    }
    const double u = camera_.fx() * p.x() / p.z() + camera_.cx();
    const double v = camera_.fy() * p.y() / p.z() + camera_.cy();
    out.index = Vec3(planeCoordinate(p.z()), v / stride_, u / stride_);
    const Vec3 hi(double(dims_.z) - 0.5, double(dims_.x) - 0.5, double(dims_.y) - 0.5);
    out.in_bounds = (out.index.array() >= -0.5).all() && (out.index.array() <= hi.array()).all();
    return out;
}

bool
FrustumSpace::equals(const Space &other) const {
    const auto *o = dynamic_cast<const FrustumSpace *>(&other);
    return o != nullptr && o->camera_ == camera_ && o->planes_ == planes_ && o->stride_ == stride_;
}

std::string
FrustumSpace::describe() const {
    std::ostringstream os;
    os << "frustum planes " << planes_.size() << " [" << planes_.front() << ", " << planes_.back()
       << "] stride " << stride_ << " dims " << toString(dims_);
    return os.str();
}

std::vector<double>
inverseDepthPlanes(double near, double far, int count) {
    if (!(near > 0.0) || !(far > near) || count < 1) {
        fail(Errc::InvalidArgument, "inverse-depth planes need 0 < near < far and count >= 1");
    }
    std::vector<double> planes(static_cast<std::size_t>(count));
    if (count == 1) {
        planes[0] = near;
        return planes;
    }
    const double inv_near = 1.0 / near, inv_far = 1.0 / far;
    for (int i = 0; i < count; ++i) {
        const double t = double(i) / double(count - 1);
        planes[static_cast<std::size_t>(i)] = 1.0 / (inv_near + t * (inv_far - inv_near));
    }
    planes.back() = far;
    return planes;
}

} // namespace gsf
