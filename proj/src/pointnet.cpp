// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/pointnet.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace gsf {

namespace {

Eigen::VectorXd
relu(const Eigen::VectorXd &x) {
    return x.cwiseMax(0.0);
}

} // namespace

PointNetWeights
PointNetWeights::init(int hidden, int embed, std::uint64_t seed) {
    if (hidden < 1 || embed < 1) {
        fail(Errc::InvalidArgument, "pointnet widths must be >= 1");
    }
    std::mt19937_64 rng(seed);
    auto fill = [&rng](Eigen::MatrixXd &m, Eigen::VectorXd &b, int out, int fan_in) {
        std::uniform_real_distribution<double> dist(-1.0 / std::sqrt(double(fan_in)), 1.0 / std::sqrt(double(fan_in)));
        m.resize(out, fan_in);
        b.resize(out);
        for (int r = 0; r < out; ++r) {
            for (int c = 0; c < fan_in; ++c) {
                m(r, c) = dist(rng);
            }
        }
        for (int r = 0; r < out; ++r) {
            b(r) = dist(rng);
        }
    };
    PointNetWeights w;
    fill(w.w1, w.b1, hidden, kPointFeatureCount);
    fill(w.w2, w.b2, embed, hidden);
    return w;
}

PointNetWeights
PointNetWeights::zerosLike(const PointNetWeights &o) {
    PointNetWeights w;
    w.w1 = Eigen::MatrixXd::Zero(o.w1.rows(), o.w1.cols());
    w.b1 = Eigen::VectorXd::Zero(o.b1.size());
    w.w2 = Eigen::MatrixXd::Zero(o.w2.rows(), o.w2.cols());
    w.b2 = Eigen::VectorXd::Zero(o.b2.size());
    return w;
}

std::int64_t
PointNetWeights::parameterCount() const {
    return w1.size() + b1.size() + w2.size() + b2.size();
}

void
PointNetWeights::validate() const {
    if (w1.cols() != kPointFeatureCount || b1.size() != w1.rows() || w2.cols() != w1.rows() ||
        b2.size() != w2.rows() || w1.rows() < 1 || w2.rows() < 1) {
        fail(Errc::ShapeMismatch, "pointnet weight shapes are inconsistent");
    }
    if (!w1.allFinite() || !b1.allFinite() || !w2.allFinite() || !b2.allFinite()) {
        fail(Errc::NonFinite, "pointnet weights contain NaN or Inf");
    }
}

Vec3
bucketCentroid(const VoxelBuckets &b, std::int64_t voxel) {
    Vec3 sum = Vec3::Zero();
    const std::int64_t begin = b.offsets[std::size_t(voxel)], end = b.offsets[std::size_t(voxel) + 1];
    for (std::int64_t k = begin; k < end; ++k) {
        sum += b.local_positions[std::size_t(b.point_indices[std::size_t(k)])];
    }
    return end > begin ? Vec3(sum / double(end - begin)) : Vec3(Vec3::Zero());
}

PointFeatures
pointFeatures(const VoxelBuckets &b, std::int64_t index, const Vec3 &centroid) {
    const Vec3 &p = b.local_positions[std::size_t(index)];
    PointFeatures f;
    f << p.x(), p.y(), p.z(), p.x() - centroid.x(), p.y() - centroid.y(), p.z() - centroid.z(),
        double(b.intensities[std::size_t(index)]);
    return f;
}

template <std::floating_point T>
BasicGrid<T>
pointnetEncode(const VoxelBuckets &buckets, const PointNetWeights &weights,
               std::shared_ptr<const CartesianSpace> space, const Pose &pose) {
    weights.validate();
    if (space->dims() != buckets.dims) {
        fail(Errc::ShapeMismatch, "pointnet_encode: buckets were built for a different space");
    }
    const int embed = weights.embed();
    BasicGrid<T> out(space, pose, 1, embed);
    const std::int64_t num_voxels = buckets.dims.count();
    for (std::int64_t v = 0; v < num_voxels; ++v) {
        const std::int64_t begin = buckets.offsets[std::size_t(v)], end = buckets.offsets[std::size_t(v) + 1];
        if (begin == end) {
            continue;
        }
        const Vec3 centroid = bucketCentroid(buckets, v);
        Eigen::VectorXd best = Eigen::VectorXd::Constant(embed, -std::numeric_limits<double>::infinity());
        for (std::int64_t k = begin; k < end; ++k) {
            const PointFeatures f = pointFeatures(buckets, buckets.point_indices[std::size_t(k)], centroid);
            const Eigen::VectorXd h = relu(weights.w1 * f + weights.b1);
            const Eigen::VectorXd e = relu(weights.w2 * h + weights.b2);
            best = best.cwiseMax(e);
        }
        for (int c = 0; c < embed; ++c) {
            out.channel(0, c)[std::size_t(v)] = static_cast<T>(best(c));
        }
    }
    return out;
}

template <std::floating_point T>
PointNetWeights
pointnetVjp(const BasicGrid<T> &upstream, const VoxelBuckets &buckets, const PointNetWeights &weights) {
    weights.validate();
    const int embed = weights.embed(), hidden = weights.hidden();
    const GridShape &us = upstream.shape();
    if (us.n != 1 || us.c != embed || us.dims() != buckets.dims) {
        fail(Errc::ShapeMismatch, "pointnet_vjp: upstream shape " + toString(us) + " does not match encoder output");
    }
    PointNetWeights grad = PointNetWeights::zerosLike(weights);
    const std::int64_t num_voxels = buckets.dims.count();

    std::vector<PointFeatures> feats;
    std::vector<Eigen::VectorXd> z1, h, z2;
    for (std::int64_t v = 0; v < num_voxels; ++v) {
        const std::int64_t begin = buckets.offsets[std::size_t(v)], end = buckets.offsets[std::size_t(v) + 1];
        if (begin == end) {
            continue;
        }
        const Vec3 centroid = bucketCentroid(buckets, v);
        const std::size_t m = std::size_t(end - begin);
        feats.resize(m);
        z1.resize(m);
        h.resize(m);
        z2.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            feats[i] = pointFeatures(buckets, buckets.point_indices[std::size_t(begin) + i], centroid);
            z1[i] = weights.w1 * feats[i] + weights.b1;
            h[i] = relu(z1[i]);
            z2[i] = weights.w2 * h[i] + weights.b2;
        }
        std::vector<Eigen::VectorXd> dh(m, Eigen::VectorXd::Zero(hidden));
        std::vector<bool> touched(m, false);
        for (int c = 0; c < embed; ++c) {
            const double up = double(upstream.channel(0, c)[std::size_t(v)]);
            // First strict maximum in bucket order is the lowest point index.
            std::size_t arg = 0;
            double best = std::max(z2[0](c), 0.0);
            for (std::size_t i = 1; i < m; ++i) {
                const double e = std::max(z2[i](c), 0.0);
                if (e > best) {
                    best = e;
                    arg = i;
                }
            }
            if (up == 0.0 || !(z2[arg](c) > 0.0)) {
                continue;
            }
            grad.w2.row(c) += up * h[arg].transpose();
            grad.b2(c) += up;
            dh[arg] += up * weights.w2.row(c).transpose();
            touched[arg] = true;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (!touched[i]) {
                continue;
            }
            const Eigen::VectorXd dz1 = dh[i].cwiseProduct((z1[i].array() > 0.0).cast<double>().matrix());
            grad.w1 += dz1 * feats[i].transpose();
            grad.b1 += dz1;
        }
    }
    return grad;
}

template BasicGrid<float> pointnetEncode(const VoxelBuckets &, const PointNetWeights &,
                                         std::shared_ptr<const CartesianSpace>, const Pose &);
template BasicGrid<double> pointnetEncode(const VoxelBuckets &, const PointNetWeights &,
                                          std::shared_ptr<const CartesianSpace>, const Pose &);
template PointNetWeights pointnetVjp(const BasicGrid<float> &, const VoxelBuckets &, const PointNetWeights &);
template PointNetWeights pointnetVjp(const BasicGrid<double> &, const VoxelBuckets &, const PointNetWeights &);

} // namespace gsf
