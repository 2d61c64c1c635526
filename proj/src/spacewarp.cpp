// Copyright 2026 The GSF Authors
// SPDX-License-Identifier: Apache-2.0

#include <gsf/spacewarp.h>

#include <cmath>

namespace gsf {

WarpSampler::WarpSampler(const Space &source_space, const Pose &source_pose, const Space &target_space,
                         const Pose &target_pose)
    : source_(source_space), target_(target_space),
      target_to_source_(compose(source_pose.inverse(), target_pose)), source_dims_(source_space.dims()) {}

GridPoint
WarpSampler::samplePoint(std::int64_t z, std::int64_t x, std::int64_t y) const {
    const Vec3 local = target_.gridToWorld(Vec3(double(z), double(x), double(y)));
    return source_.worldToGrid(target_to_source_.apply(local));
}

WarpStencil
WarpSampler::stencil(std::int64_t z, std::int64_t x, std::int64_t y) const {
    WarpStencil s;
    s.index.fill(-1);
    s.weight.fill(0.0);
    const GridPoint g = samplePoint(z, x, y);
    if (!g.in_bounds || !g.index.allFinite()) {
        return s;
    }
    const std::array<std::int64_t, 3> lim{source_dims_.z, source_dims_.x, source_dims_.y};
    std::array<std::int64_t, 3> base{};
    std::array<double, 3> frac{};
    for (int k = 0; k < 3; ++k) {
        const double f = std::floor(g.index[k]);
        base[k] = static_cast<std::int64_t>(f);
        frac[k] = g.index[k] - f;
    }
    for (int corner = 0; corner < 8; ++corner) {
        std::array<std::int64_t, 3> idx{};
        double w = 1.0;
        bool inside = true;
        for (int k = 0; k < 3; ++k) {
            const int bit = (corner >> (2 - k)) & 1;
            idx[k] = base[k] + bit;
            w *= bit ? frac[k] : 1.0 - frac[k];
            inside = inside && idx[k] >= 0 && idx[k] < lim[k];
        }
        if (inside) {
            s.index[corner] = (idx[0] * lim[1] + idx[1]) * lim[2] + idx[2];
            s.weight[corner] = w;
        }
    }
    return s;
}

template <std::floating_point T>
BasicGrid<T>
spaceWarp(const BasicGrid<T> &source, SpacePtr target_space, const Pose &target_pose) {
    requireFinite(source, "space_warp source");
    if (!target_space) {
        fail(Errc::InvalidArgument, "space_warp: missing target space");
    }
    const GridDims td = target_space->dims();
    if (td.z < 1 || td.x < 1 || td.y < 1) {
        fail(Errc::InvalidArgument, "space_warp: target dims must be positive");
    }
    const WarpSampler sampler(source.space(), source.pose(), *target_space, target_pose);
    BasicGrid<T> out(target_space, target_pose, source.shape().n, source.shape().c);
    const std::int64_t nc = source.shape().n * source.shape().c;
    const std::int64_t src_spatial = source.shape().spatial();
    const std::int64_t tgt_spatial = td.count();
    const T *src = source.data().data();
    T *dst = out.data().data();

    std::int64_t t = 0;
    for (std::int64_t z = 0; z < td.z; ++z) {
        for (std::int64_t x = 0; x < td.x; ++x) {
            for (std::int64_t y = 0; y < td.y; ++y, ++t) {
                const WarpStencil s = sampler.stencil(z, x, y);
                if (s.index[0] < 0 && s.index[1] < 0 && s.index[2] < 0 && s.index[3] < 0 &&
                    s.index[4] < 0 && s.index[5] < 0 && s.index[6] < 0 && s.index[7] < 0) {
                    continue;
                }
                for (std::int64_t b = 0; b < nc; ++b) {
                    const T *plane = src + b * src_spatial;
                    double acc = 0.0;
                    for (int k = 0; k < 8; ++k) {
                        if (s.index[k] >= 0) {
                            acc += s.weight[k] * double(plane[s.index[k]]);
                        }
                    }
                    dst[b * tgt_spatial + t] = static_cast<T>(acc);
                }
            }
        }
    }
    return out;
}

Pose
composeChain(std::span<const WarpHop> hops) {
    if (hops.empty()) {
        fail(Errc::InvalidArgument, "space_warp_chain: chain must not be empty");
    }
    Pose total = hops.front().pose;
    for (std::size_t i = 1; i < hops.size(); ++i) {
        total = compose(total, hops[i].pose);
    }
    return total;
}

template <std::floating_point T>
BasicGrid<T>
spaceWarpChain(const BasicGrid<T> &source, std::span<const WarpHop> hops) {
    const Pose total = composeChain(hops);
    for (const WarpHop &h : hops) {
        if (!h.space) {
            fail(Errc::InvalidArgument, "space_warp_chain: hop without a space");
        }
    }
    return spaceWarp(source, hops.back().space, total);
}

template <std::floating_point T>
BasicGrid<T>
spaceWarpVjp(const BasicGrid<T> &source, SpacePtr target_space, const Pose &target_pose,
             const BasicGrid<T> &upstream) {
    if (!target_space) {
        fail(Errc::InvalidArgument, "space_warp_vjp: missing target space");
    }
    const GridDims td = target_space->dims();
    const GridShape &us = upstream.shape();
    if (us.n != source.shape().n || us.c != source.shape().c || us.dims() != td) {
        fail(Errc::ShapeMismatch, "space_warp_vjp: upstream shape " + toString(us) +
                                      " does not match warp output " + toString(td));
    }
    const WarpSampler sampler(source.space(), source.pose(), *target_space, target_pose);
    BasicGrid<T> grad(source.spacePtr(), source.pose(), source.shape().n, source.shape().c);
    const std::int64_t nc = us.n * us.c;
    const std::int64_t src_spatial = source.shape().spatial();
    const std::int64_t tgt_spatial = td.count();
    const T *up = upstream.data().data();
    T *g = grad.data().data();

    // Serial scatter in target order keeps the accumulation order fixed.
    std::int64_t t = 0;
    for (std::int64_t z = 0; z < td.z; ++z) {
        for (std::int64_t x = 0; x < td.x; ++x) {
            for (std::int64_t y = 0; y < td.y; ++y, ++t) {
                const WarpStencil s = sampler.stencil(z, x, y);
                for (int k = 0; k < 8; ++k) {
                    if (s.index[k] < 0) {
                        continue;
                    }
                    for (std::int64_t b = 0; b < nc; ++b) {
                        T &dst = g[b * src_spatial + s.index[k]];
                        dst = static_cast<T>(double(dst) + s.weight[k] * double(up[b * tgt_spatial + t]));
                    }
                }
            }
        }
    }
    return grad;
}

template BasicGrid<float> spaceWarp(const BasicGrid<float> &, SpacePtr, const Pose &);
template BasicGrid<double> spaceWarp(const BasicGrid<double> &, SpacePtr, const Pose &);
template BasicGrid<float> spaceWarpChain(const BasicGrid<float> &, std::span<const WarpHop>);
template BasicGrid<double> spaceWarpChain(const BasicGrid<double> &, std::span<const WarpHop>);
template BasicGrid<float> spaceWarpVjp(const BasicGrid<float> &, SpacePtr, const Pose &,
                                       const BasicGrid<float> &);
template BasicGrid<double> spaceWarpVjp(const BasicGrid<double> &, SpacePtr, const Pose &,
                                        const BasicGrid<double> &);

} // namespace gsf
