#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <vector>

#include "boundary.hpp"
#include "errors.hpp"
#include "kdtree.hpp"
#include "obb.hpp"
#include "poisson.hpp"
#include "sbf.hpp"
#include "vec.hpp"

namespace nodegen {

/// Wall-clock seconds per pipeline stage (monotonic clock).
struct StageTimes {
    double fit = 0.0;
    double boundary = 0.0;
    double obb = 0.0;
    double poisson = 0.0;
    double classify = 0.0;
    double total() const { return fit + boundary + obb + poisson + classify; }
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Complete node set for a domain: boundary nodes with normals, interior
/// nodes, and optional ghost / boundary-refinement layers, all at spacing h.
template <int D>
struct NodeSet {
    BoundarySample<D> boundary;
    std::vector<Vec<D>> interior;
    std::vector<Vec<D>> ghosts;
    std::vector<double> refine_offsets;
    std::vector<std::vector<Vec<D>>> refined;  // one layer per offset
    double h = 0.0;
};

/// Inner boundary: every boundary node moved distance h along its inward
/// normal.
template <int D>
std::vector<Vec<D>> project_inward(const BoundarySample<D>& boundary, double h) {
    std::vector<Vec<D>> inner(boundary.points.size());
    for (std::size_t i = 0; i < inner.size(); ++i) inner[i] = boundary.points[i] - h * boundary.normals[i];
    return inner;
}

/// Inside test against the inner boundary: a sample is kept iff it lies
/// strictly on the inner side of the outward normal at its closest inner-
/// boundary point (dot < 0); points on the fence are discarded.
template <int D>
std::vector<char> classify_interior(std::span<const Vec<D>> samples, const KdTree<D>& inner_tree,
                                    std::span<const Vec<D>> normals) {
    if (inner_tree.empty()) throw PreconditionError("classify_interior: empty inner boundary");
    std::vector<char> keep(samples.size(), 0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto hit = inner_tree.nearest(samples[i]);
        const Vec<D> zeta = inner_tree.point(hit.id);
        keep[i] = dot(samples[i] - zeta, normals[hit.id]) < 0.0 ? 1 : 0;
    }
    return keep;
}

/// End-to-end node generation: boundary sampling, inward projection, OBB of
/// the inner boundary, Poisson disk fill, and the inside test. Deterministic
/// for a fixed cfg.rng_seed.
template <int D>
NodeSet<D> generate(const SbfModel<D>& model, double h, double tau, const SamplerConfig& cfg,
                    StageTimes* times = nullptr) {
    using clock = std::chrono::steady_clock;
    NodeSet<D> out;
    out.h = h;

    auto t0 = clock::now();
    out.boundary = sample_boundary(model, h, tau);
    if (times) times->boundary = detail::seconds_since(t0);

    t0 = clock::now();
    const std::vector<Vec<D>> inner = project_inward(out.boundary, h);
    const OrientedBox<D> box = compute_obb<D>(std::span<const Vec<D>>(inner));
    if (times) times->obb = detail::seconds_since(t0);

    t0 = clock::now();
    SamplerConfig fill = cfg;
    fill.h = h;
    const std::vector<Vec<D>> samples = sample_box(box, fill);
    if (times) times->poisson = detail::seconds_since(t0);

    t0 = clock::now();
    KdTree<D> inner_tree{std::vector<Vec<D>>(inner)};
    const std::vector<char> keep =
        classify_interior<D>(samples, inner_tree, std::span<const Vec<D>>(out.boundary.normals));
    out.interior.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (keep[i]) out.interior.push_back(samples[i]);
    if (times) times->classify = detail::seconds_since(t0);
    return out;
}

/// Ghost layer: boundary nodes copied distance h outward along the normals.
template <int D>
std::vector<Vec<D>> ghost_nodes(const NodeSet<D>& nodes, double h) {
    std::vector<Vec<D>> out(nodes.boundary.points.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = nodes.boundary.points[i] + h * nodes.boundary.normals[i];
    return out;
}

/// Boundary-refinement layers: for each offset in (0, h), ascending, one
/// copy of the boundary nodes moved that distance inward. Layers sit between
/// the boundary and the inner boundary.
template <int D>
void refine_boundary(NodeSet<D>& nodes, std::span<const double> offsets) {
    double prev = 0.0;
    for (double off : offsets) {
        if (!(off > 0.0 && off < nodes.h)) throw PreconditionError("refine_boundary: offsets must lie in (0, h)");
        if (off <= prev) throw PreconditionError("refine_boundary: offsets must be ascending");
        prev = off;
    }
    nodes.refine_offsets.assign(offsets.begin(), offsets.end());
    nodes.refined.clear();
    for (double off : offsets) {
        std::vector<Vec<D>> layer(nodes.boundary.points.size());
        for (std::size_t i = 0; i < layer.size(); ++i)
            layer[i] = nodes.boundary.points[i] - off * nodes.boundary.normals[i];
        nodes.refined.push_back(std::move(layer));
    }
}

/// Diagnostic: interior nodes closer than `limit` to the nearest boundary
/// node. The inside test is approximate near concave features; callers can
/// report this count instead of silently deleting nodes.
template <int D>
std::size_t count_near_boundary(const NodeSet<D>& nodes, double limit) {
    if (nodes.boundary.points.empty() || nodes.interior.empty()) return 0;
    KdTree<D> tree{std::vector<Vec<D>>(nodes.boundary.points)};
    std::size_t count = 0;
    for (const auto& x : nodes.interior)
        if (tree.nearest(x).distance < limit) ++count;
    return count;
}

}  // namespace nodegen
