#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "errors.hpp"
#include "kdtree.hpp"
#include "obb.hpp"
#include "sbf.hpp"
#include "sphere.hpp"
#include "vec.hpp"

namespace nodegen {

/// Boundary nodes with spacing h: surviving Cartesian points (exact model
/// evaluations), their parameters, and unit outward normals.
template <int D>
struct BoundarySample {
    std::vector<Vec<D>> points;
    ParamSet params;
    std::vector<Vec<D>> normals;
    double h = 0.0;
    double tau = 2.0;
};

/// Greedy sample elimination: walk the candidates in index order; each still-
/// active point deactivates every other point within closed distance h.
/// Survivor indices come back ascending; survivors are pairwise farther than
/// h apart and every eliminated point lies within h of some survivor.
template <int D>
std::vector<int> decimate(std::span<const Vec<D>> pts, double h) {
    if (h < 0.0) throw PreconditionError("decimate: negative spacing");
    const std::size_t n = pts.size();
    KdTree<D> tree(std::vector<Vec<D>>(pts.begin(), pts.end()));
    std::vector<char> active(n, 1);
    std::vector<int> survivors;
    for (std::size_t k = 0; k < n; ++k) {
        if (!active[k]) continue;
        for (int id : tree.within_radius(pts[k], h))
            if (static_cast<std::size_t>(id) != k) active[id] = 0;
        survivors.push_back(static_cast<int>(k));
    }
    return survivors;
}

/// Target boundary-node count for spacing h: the boundary measure a_d
/// (perimeter or surface area) of the seed cloud's OBB times h^{-(d-1)}.
template <int D>
std::size_t estimate_target_count(std::span<const Vec<D>> seeds, double h) {
    if (!(h > 0.0)) throw PreconditionError("estimate_target_count: h must be positive");
    const OrientedBox<D> box = compute_obb<D>(seeds);
    const double a_d = box.boundary_measure();
    // the 1e-8 backs out box padding and pow roundoff before the ceiling
    const double count = std::ceil(a_d * std::pow(h, -(D - 1)) * (1.0 - 1e-8));
    return static_cast<std::size_t>(std::max(1.0, count));
}

namespace detail {

template <int D>
ParamSet candidate_params(std::size_t count) {
    if constexpr (D == 2)
        return equispaced_circle(static_cast<int>(count));
    else
        return spiral_points(static_cast<int>(count)).params;
}

inline ParamSet subset(const ParamSet& p, const std::vector<int>& idx) {
    ParamSet out;
    out.sphere_dim = p.sphere_dim;
    out.lambda.reserve(idx.size());
    for (int i : idx) out.lambda.push_back(p.lambda[i]);
    if (!p.theta.empty()) {
        out.theta.reserve(idx.size());
        for (int i : idx) out.theta.push_back(p.theta[i]);
    }
    return out;
}

}  // namespace detail

/// Supersample-then-decimate with an explicit target count: evaluates the
/// model at tau * target candidate parameters (equispaced on the circle,
/// spiral points on the sphere), eliminates candidates closer than h, and
/// evaluates normals at the survivors.
template <int D>
BoundarySample<D> sample_boundary_with_target(const SbfModel<D>& model, double h, double tau, std::size_t target) {
    if (!(h > 0.0)) throw PreconditionError("sample_boundary: h must be positive");
    if (!(tau >= 1.0)) throw PreconditionError("sample_boundary: tau must be at least 1");
    const auto n_cand = static_cast<std::size_t>(std::ceil(tau * static_cast<double>(target)));
    if (n_cand < 4) throw PreconditionError("sample_boundary: too few candidates");

    const ParamSet cand = detail::candidate_params<D>(n_cand);
    const std::vector<Vec<D>> cand_pts = model.evaluate(cand);
    const std::vector<int> keep = decimate<D>(cand_pts, h);

    BoundarySample<D> out;
    out.params = detail::subset(cand, keep);
    out.h = h;
    out.tau = tau;
    model.evaluate_full(out.params, out.points, out.normals);
    return out;
}

/// Algorithm front door: target count from the OBB of the model's seeds.
template <int D>
BoundarySample<D> sample_boundary(const SbfModel<D>& model, double h, double tau = 2.0) {
    const std::size_t target = estimate_target_count<D>(model.seeds(), h);
    return sample_boundary_with_target(model, h, tau, target);
}

}  // namespace nodegen
