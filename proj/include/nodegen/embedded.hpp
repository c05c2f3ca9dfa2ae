#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "boundary.hpp"
#include "errors.hpp"
#include "kdtree.hpp"
#include "nodes.hpp"
#include "obb.hpp"
#include "sbf.hpp"
#include "vec.hpp"

namespace nodegen {

/// Per-node membership record: inside = 1 with owner = j when the node was
/// swallowed by embedded boundary j; {0, 0} otherwise. Parallel to the node
/// rows, so removed nodes can be restored without regeneration.
struct Membership {
    int inside = 0;
    int owner = 0;
};

using MembershipMap = std::vector<Membership>;

/// Seed data for one embedded boundary.
template <int D>
struct EmbedInput {
    std::vector<Vec<D>> seeds;
    ParamSet params;
    int m = SbfModel<D>::kDefaultOrder;
};

template <int D>
struct EmbedResult {
    NodeList<D> nodes;    // original rows (order preserved) + appended embedded-boundary rows
    MembershipMap zmap;   // one entry per row of `nodes`
    std::vector<int> ids; // id assigned to each input boundary, in order
    std::vector<OrientedBox<D>> boxes;  // containment box per boundary (inflated nodes + seeds)
};

namespace detail {

template <int D>
struct InflatedBoundary {
    int id = 0;
    std::vector<Vec<D>> nodes;     // boundary nodes on Gamma_j
    std::vector<Vec<D>> inflated;  // nodes pushed distance h into the bulk domain
    std::vector<Vec<D>> normals;   // unit normals pointing away from the object
    OrientedBox<D> box;            // OBB of the inflated points
};

}  // namespace detail

/// Local node-set modification for closed embedded boundaries. Each
/// boundary is fitted, sampled at spacing h with target count
/// ceil(alpha * N_b) (alpha <= 0 requests the OBB-measure ratio), inflated
/// by h along its normals, and indexed together with the domain boundary
/// nodes. Original nodes inside an inflated boundary are flagged in the
/// membership map; rows outside every OBB are untouched. The new boundary
/// nodes are appended as embedded-boundary rows.
template <int D>
EmbedResult<D> embed_boundaries(const NodeList<D>& nodes, const MembershipMap& zmap_in,
                                const std::vector<EmbedInput<D>>& objects, double h, double alpha = 0.0,
                                double tau = 2.0) {
    if (!(h > 0.0)) throw PreconditionError("embed_boundaries: h must be positive");
    if (!zmap_in.empty() && zmap_in.size() != nodes.size())
        throw PreconditionError("embed_boundaries: membership map length mismatch");

    EmbedResult<D> out;
    out.nodes = nodes;
    out.zmap = zmap_in.empty() ? MembershipMap(nodes.size()) : zmap_in;
    if (objects.empty()) return out;

    std::vector<Vec<D>> domain_boundary;
    int max_id = 0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (nodes[k].cls == NodeClass::Boundary) domain_boundary.push_back(nodes[k].x);
        max_id = std::max(max_id, nodes[k].owner);
        max_id = std::max(max_id, out.zmap[k].owner);
    }
    const std::size_t n_b = domain_boundary.size();
    if (n_b == 0) throw PreconditionError("embed_boundaries: node set has no boundary nodes");

    double domain_measure = 0.0;
    if (alpha <= 0.0) domain_measure = compute_obb<D>(std::span<const Vec<D>>(domain_boundary)).boundary_measure();

    KdTree<D> tree{std::vector<Vec<D>>(domain_boundary)};

    std::vector<detail::InflatedBoundary<D>> inflated;
    std::vector<Vec<D>> all_inflated;
    inflated.reserve(objects.size());
    for (const auto& obj : objects) {
        detail::InflatedBoundary<D> ib;
        ib.id = ++max_id;
        out.ids.push_back(ib.id);

        const SbfModel<D> model = SbfModel<D>::fit(obj.seeds, obj.params, obj.m);
        double a = alpha;
        if (a <= 0.0) {
            const double obj_measure = compute_obb<D>(std::span<const Vec<D>>(obj.seeds)).boundary_measure();
            a = obj_measure / domain_measure;
        }
        const auto target = static_cast<std::size_t>(std::ceil(a * static_cast<double>(n_b)));
        if (static_cast<std::size_t>(std::ceil(tau * static_cast<double>(target))) < 4)
            throw PreconditionError("embed_boundaries: alpha yields too few boundary nodes");
        const BoundarySample<D> bs = sample_boundary_with_target(model, h, tau, target);

        ib.nodes = bs.points;
        ib.normals = bs.normals;
        ib.inflated.resize(bs.points.size());
        for (std::size_t i = 0; i < bs.points.size(); ++i) ib.inflated[i] = bs.points[i] + h * bs.normals[i];
        // box over inflated points plus seeds: a coarse h can decimate the
        // boundary sample below the D+1 points an OBB needs, and the seeds
        // always cover the object itself
        std::vector<Vec<D>> hull = ib.inflated;
        hull.insert(hull.end(), obj.seeds.begin(), obj.seeds.end());
        ib.box = compute_obb<D>(std::span<const Vec<D>>(hull));
        all_inflated.insert(all_inflated.end(), ib.inflated.begin(), ib.inflated.end());
        inflated.push_back(std::move(ib));
    }
    tree.insert_batch(std::span<const Vec<D>>(all_inflated));

    // Augmented-tree hit -> (object index, normal index); ids below n_b are
    // domain boundary nodes.
    const auto locate = [&](int hit_id) -> std::pair<int, int> {
        std::size_t off = static_cast<std::size_t>(hit_id) - n_b;
        for (std::size_t j = 0; j < inflated.size(); ++j) {
            if (off < inflated[j].inflated.size()) return {static_cast<int>(j), static_cast<int>(off)};
            off -= inflated[j].inflated.size();
        }
        throw PreconditionError("embed_boundaries: hit id out of range");
    };

    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (out.zmap[k].inside) continue;                               // already removed by an earlier embed
        if (nodes[k].cls == NodeClass::EmbeddedBoundary) continue;      // prior boundaries stay put
        const Vec<D>& x = nodes[k].x;
        for (const auto& ib : inflated) {
            if (!ib.box.contains(x)) continue;
            // One query against the union of domain-boundary and inflated
            // nodes decides the test for every box that contains x.
            const auto hit = tree.nearest(x);
            if (static_cast<std::size_t>(hit.id) >= n_b) {
                const auto [oj, oi] = locate(hit.id);
                const Vec<D>& zeta = inflated[oj].inflated[oi];
                if (dot(x - zeta, inflated[oj].normals[oi]) <= 0.0) {
                    out.zmap[k].inside = 1;
                    out.zmap[k].owner = inflated[oj].id;
                }
            }
            break;
        }
    }

    for (const auto& ib : inflated) {
        for (const auto& x : ib.nodes) {
            out.nodes.push_back({x, NodeClass::EmbeddedBoundary, ib.id});
            out.zmap.push_back({0, 0});
        }
        out.boxes.push_back(ib.box);
    }
    return out;
}

/// Undoes one embedded boundary: restores every original node it swallowed
/// and deletes its embedded-boundary rows. Throws when the id is unknown or
/// was already removed.
template <int D>
void remove_embedded(NodeList<D>& nodes, MembershipMap& zmap, int id) {
    if (zmap.size() != nodes.size()) throw PreconditionError("remove_embedded: membership map length mismatch");
    bool has_rows = false;
    for (const auto& r : nodes)
        if (r.cls == NodeClass::EmbeddedBoundary && r.owner == id) {
            has_rows = true;
            break;
        }
    bool has_owned = false;
    for (const auto& z : zmap)
        if (z.inside && z.owner == id) {
            has_owned = true;
            break;
        }
    if (!has_rows && !has_owned) throw PreconditionError("remove_embedded: unknown embedded boundary id");
    if (!has_rows) throw PreconditionError("remove_embedded: boundary already removed");

    for (auto& z : zmap)
        if (z.inside && z.owner == id) z = {0, 0};
    NodeList<D> kept;
    MembershipMap kept_map;
    kept.reserve(nodes.size());
    kept_map.reserve(zmap.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (nodes[k].cls == NodeClass::EmbeddedBoundary && nodes[k].owner == id) continue;
        kept.push_back(nodes[k]);
        kept_map.push_back(zmap[k]);
    }
    nodes = std::move(kept);
    zmap = std::move(kept_map);
}

}  // namespace nodegen
