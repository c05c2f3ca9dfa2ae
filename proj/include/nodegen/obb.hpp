#pragma once

#include <array>
#include <cmath>
#include <span>

#include "errors.hpp"
#include "linalg.hpp"
#include "vec.hpp"

namespace nodegen {

/// PCA-oriented bounding box. `axes[j]` is the j-th eigenvector of the point
/// covariance; a point is inside iff its projection onto every axis lies in
/// [lo, hi]. Corners are padded outward by 1e-9 of the longest side so that
/// the generating points always pass the containment test.
template <int D>
struct OrientedBox {
    std::array<Vec<D>, D> axes;                // rotation columns (orthonormal)
    Vec<D> lo{}, hi{};                         // padded corners in the rotated frame
    Vec<D> side{};                             // padded side lengths
    std::array<Vec<D>, (std::size_t{1} << D)> vertices{};  // world-frame corners
    bool degenerate = false;                   // covariance eigenvalue ratio below 1e-14

    Vec<D> to_frame(const Vec<D>& x) const {
        Vec<D> r{};
        for (int j = 0; j < D; ++j) r[j] = dot(x, axes[j]);
        return r;
    }

    Vec<D> from_frame(const Vec<D>& u) const {
        Vec<D> r{};
        for (int j = 0; j < D; ++j)
            for (int i = 0; i < D; ++i) r[i] += u[j] * axes[j][i];
        return r;
    }

    bool contains(const Vec<D>& x) const {
        for (int j = 0; j < D; ++j) {
            const double c = dot(x, axes[j]);
            // slack covers the world->frame rounding of points sitting on a
            // face (the box's own vertices must test inside)
            const double slack = 1e-13 * (std::abs(lo[j]) + std::abs(hi[j]));
            if (c < lo[j] - slack || c > hi[j] + slack) return false;
        }
        return true;
    }

    /// Perimeter (2D) or surface area (3D).
    double boundary_measure() const {
        if constexpr (D == 2) return 2.0 * (side[0] + side[1]);
        return 2.0 * (side[0] * side[1] + side[1] * side[2] + side[0] * side[2]);
    }

    /// Area (2D) or volume (3D).
    double volume_measure() const {
        double v = 1.0;
        for (int j = 0; j < D; ++j) v *= side[j];
        return v;
    }
};

/// Builds the OBB of a point cloud: centroid, normalized covariance
/// C = (X-M)^T (X-M) / N, eigenvectors as box axes, per-axis extents of the
/// projected points, padding, and the 2^D world-frame vertices.
template <int D>
OrientedBox<D> compute_obb(std::span<const Vec<D>> pts) {
    const std::size_t n = pts.size();
    if (n < static_cast<std::size_t>(D + 1)) throw PreconditionError("compute_obb: need at least D+1 points");

    Vec<D> centroid{};
    for (const auto& x : pts) centroid = centroid + x;
    centroid = (1.0 / static_cast<double>(n)) * centroid;

    DenseMatrix cov(D, D);
    for (const auto& x : pts) {
        const Vec<D> y = x - centroid;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) cov(i, j) += y[i] * y[j];
    }
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) cov(i, j) /= static_cast<double>(n);

    const EigResult eig = sym_eig(cov);
    if (eig.values[D - 1] <= 0.0) throw PreconditionError("compute_obb: all points identical");

    OrientedBox<D> box;
    for (int j = 0; j < D; ++j)
        for (int i = 0; i < D; ++i) box.axes[j][i] = eig.vectors(i, j);
    box.degenerate = eig.values[0] < 1e-14 * eig.values[D - 1];

    Vec<D> lo = box.to_frame(pts[0]), hi = lo;
    for (const auto& x : pts) {
        const Vec<D> u = box.to_frame(x);
        for (int j = 0; j < D; ++j) {
            lo[j] = std::min(lo[j], u[j]);
            hi[j] = std::max(hi[j], u[j]);
        }
    }
    double max_side = 0.0;
    for (int j = 0; j < D; ++j) max_side = std::max(max_side, hi[j] - lo[j]);
    const double pad = 1e-9 * max_side;
    for (int j = 0; j < D; ++j) {
        box.lo[j] = lo[j] - pad;
        box.hi[j] = hi[j] + pad;
        box.side[j] = box.hi[j] - box.lo[j];
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << D); ++mask) {
        Vec<D> u{};
        for (int j = 0; j < D; ++j) u[j] = (mask >> j) & 1 ? box.hi[j] : box.lo[j];
        box.vertices[mask] = box.from_frame(u);
    }
    return box;
}

}  // namespace nodegen
