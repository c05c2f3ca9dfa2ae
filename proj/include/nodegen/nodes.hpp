#pragma once

#include <string>
#include <vector>

#include "errors.hpp"
#include "generator.hpp"
#include "vec.hpp"

namespace nodegen {

enum class NodeClass { Boundary, Interior, Ghost, Refined, EmbeddedBoundary };

inline std::string to_string(NodeClass c) {
    switch (c) {
        case NodeClass::Boundary: return "boundary";
        case NodeClass::Interior: return "interior";
        case NodeClass::Ghost: return "ghost";
        case NodeClass::Refined: return "refined";
        case NodeClass::EmbeddedBoundary: return "embedded-boundary";
    }
    throw PreconditionError("bad node class");
}

inline NodeClass node_class_from(const std::string& s) {
    if (s == "boundary") return NodeClass::Boundary;
    if (s == "interior") return NodeClass::Interior;
    if (s == "ghost") return NodeClass::Ghost;
    if (s == "refined") return NodeClass::Refined;
    if (s == "embedded-boundary") return NodeClass::EmbeddedBoundary;
    throw IoError("unknown node class: " + s);
}

template <int D>
struct NodeRecord {
    Vec<D> x{};
    NodeClass cls = NodeClass::Interior;
    int owner = 0;  // id of the embedded boundary that contributed/swallowed it, 0 otherwise
};

template <int D>
using NodeList = std::vector<NodeRecord<D>>;

/// Canonical row order for files: boundary, interior, ghost, then refined
/// layers in offset order.
template <int D>
NodeList<D> flatten(const NodeSet<D>& nodes) {
    NodeList<D> out;
    out.reserve(nodes.boundary.points.size() + nodes.interior.size() + nodes.ghosts.size());
    for (const auto& x : nodes.boundary.points) out.push_back({x, NodeClass::Boundary, 0});
    for (const auto& x : nodes.interior) out.push_back({x, NodeClass::Interior, 0});
    for (const auto& x : nodes.ghosts) out.push_back({x, NodeClass::Ghost, 0});
    for (const auto& layer : nodes.refined)
        for (const auto& x : layer) out.push_back({x, NodeClass::Refined, 0});
    return out;
}

}  // namespace nodegen
