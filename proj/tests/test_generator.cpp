#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include <nodegen/generator.hpp>
#include <nodegen/metrics.hpp>
#include <nodegen/nodes.hpp>

using namespace nodegen;

namespace {

SbfModel<2> circle_model(int nd) {
    ParamSet p = equispaced_circle(nd);
    std::vector<Vec<2>> seeds(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) seeds[k] = embed_circle(p.lambda[k]);
    return SbfModel<2>::fit(std::move(seeds), std::move(p), 7);
}

template <std::size_t D>
double min_nn2(const std::vector<Vec<D>>& pts) {
    KdTree<D> tree{std::vector<Vec<D>>(pts)};
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto hit = tree.nearest_excluding(pts[i], static_cast<int>(i));
        best = std::min(best, dist2(pts[i], tree.point(hit.id)));
    }
    return best;
}

}  // namespace

TEST_CASE("project_inward moves points by exactly h along the normals") {
    const auto model = circle_model(32);
    const double h = 0.1;
    const auto bs = sample_boundary(model, h, 2.0);
    const auto inner = project_inward(bs, h);
    for (std::size_t i = 0; i < inner.size(); ++i) {
        CHECK(dist(inner[i], bs.points[i]) == Catch::Approx(h).epsilon(1e-12));
        CHECK(norm(inner[i]) == Catch::Approx(0.9).margin(1e-4));  // radius 1 - h up to model error
    }
    const auto same = project_inward(bs, 0.0);
    for (std::size_t i = 0; i < same.size(); ++i) CHECK(same[i] == bs.points[i]);
}

TEST_CASE("classify_interior keeps strict insiders only") {
    // synthetic inner boundary: circle of radius 1 with radial normals
    std::vector<Vec<2>> inner;
    std::vector<Vec<2>> normals;
    for (int k = 0; k < 64; ++k) {
        const double l = -std::numbers::pi + 2.0 * std::numbers::pi * k / 64;
        inner.push_back({std::cos(l), std::sin(l)});
        normals.push_back({std::cos(l), std::sin(l)});
    }
    KdTree<2> tree{std::vector<Vec<2>>(inner)};
    std::vector<Vec<2>> samples{{0.0, 0.0}, {2.0, 0.0}, {1.0, 0.0}};
    const auto keep = classify_interior<2>(samples, tree, normals);
    CHECK(keep[0] == 1);  // center
    CHECK(keep[1] == 0);  // outside
    CHECK(keep[2] == 0);  // exactly on the inner boundary: dot = 0 discards
    KdTree<2> empty_tree;
    CHECK_THROWS_AS(classify_interior<2>(samples, empty_tree, normals), PreconditionError);
}

TEST_CASE("generate on the unit disk") {
    const auto model = circle_model(32);
    const double h = 0.05;
    const SamplerConfig cfg{h, 15, 1};
    const NodeSet<2> nodes = generate(model, h, 2.0, cfg);
    REQUIRE(nodes.interior.size() > 500);

    // interior pairwise separation is exact
    CHECK(min_nn2(nodes.interior) >= h * h);

    // every interior node keeps ~h distance from the true boundary (radius 1)
    double closest = 1e300;
    for (const auto& x : nodes.interior) closest = std::min(closest, 1.0 - norm(x));
    CHECK(closest >= 0.8 * h);

    // histogram mode sits in the bin containing h
    const auto hist = nn_histogram<2>(std::span<const Vec<2>>(nodes.interior), h / 4, 4 * h);
    CHECK(hist.mode_bin() == hist.bin_of(h));
    CHECK(hist.total() == nodes.interior.size());

    // determinism
    const NodeSet<2> again = generate(model, h, 2.0, cfg);
    REQUIRE(again.interior.size() == nodes.interior.size());
    for (std::size_t i = 0; i < nodes.interior.size(); ++i) {
        CHECK(again.interior[i][0] == nodes.interior[i][0]);
        CHECK(again.interior[i][1] == nodes.interior[i][1]);
    }

    // changing the seed moves the interior fill
    const NodeSet<2> other = generate(model, h, 2.0, {h, 15, 2});
    bool differs = other.interior.size() != nodes.interior.size();
    if (!differs)
        for (std::size_t i = 0; i < nodes.interior.size() && !differs; ++i)
            differs = other.interior[i] != nodes.interior[i];
    CHECK(differs);
}

TEST_CASE("ghost nodes sit outside at distance h") {
    const auto model = circle_model(32);
    const double h = 0.1;
    NodeSet<2> nodes = generate(model, h, 2.0, {h, 15, 3});
    nodes.ghosts = ghost_nodes(nodes, h);
    REQUIRE(nodes.ghosts.size() == nodes.boundary.points.size());
    for (const auto& g : nodes.ghosts) CHECK(norm(g) == Catch::Approx(1.1).margin(1e-4));

    // ghosts classify as outside the inner domain
    const auto inner = project_inward(nodes.boundary, h);
    KdTree<2> tree{std::vector<Vec<2>>(inner)};
    const auto keep = classify_interior<2>(nodes.ghosts, tree, nodes.boundary.normals);
    for (char k : keep) CHECK(k == 0);
}

TEST_CASE("boundary refinement layers") {
    const auto model = circle_model(32);
    const double h = 0.1;
    NodeSet<2> nodes = generate(model, h, 2.0, {h, 15, 4});

    refine_boundary(nodes, std::vector<double>{});
    CHECK(nodes.refined.empty());

    const std::vector<double> offsets{h / 3, 2 * h / 3};
    refine_boundary(nodes, offsets);
    REQUIRE(nodes.refined.size() == 2);
    for (std::size_t layer = 0; layer < 2; ++layer) {
        REQUIRE(nodes.refined[layer].size() == nodes.boundary.points.size());
        for (std::size_t i = 0; i < nodes.refined[layer].size(); ++i)
            CHECK(dist(nodes.refined[layer][i], nodes.boundary.points[i]) ==
                  Catch::Approx(offsets[layer]).epsilon(1e-12));
    }

    CHECK_THROWS_AS(refine_boundary(nodes, std::vector<double>{h * 1.5}), PreconditionError);
    CHECK_THROWS_AS(refine_boundary(nodes, std::vector<double>{2 * h / 3, h / 3}), PreconditionError);
    CHECK_THROWS_AS(refine_boundary(nodes, std::vector<double>{0.0}), PreconditionError);
}

TEST_CASE("near-boundary diagnostic counts close interior nodes") {
    const auto model = circle_model(32);
    const double h = 0.05;
    NodeSet<2> nodes = generate(model, h, 2.0, {h, 15, 5});
    CHECK(count_near_boundary(nodes, 0.5 * h) == 0);          // disk is convex
    CHECK(count_near_boundary(nodes, 10.0) == nodes.interior.size());
}
