#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <vector>

#include <nodegen/poisson.hpp>

using namespace nodegen;

namespace {

OrientedBox<2> unit_square_box() {
    std::vector<Vec<2>> corners{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    return compute_obb<2>(std::span<const Vec<2>>(corners));
}

template <std::size_t D>
double min_pairwise_dist2(const std::vector<Vec<D>>& pts) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, dist2(pts[i], pts[j]));
    return best;
}

}  // namespace

TEST_CASE("annulus sample stays in [h, 2h]") {
    Xoshiro256ss rng(1);
    const Vec<2> c2{0.5, -0.25};
    const Vec<3> c3{0.0, 1.0, 2.0};
    for (int i = 0; i < 100000; ++i) {
        const double r2 = dist(annulus_sample<2>(c2, 0.3, rng), c2);
        CHECK(r2 >= 0.3);
        CHECK(r2 <= 0.6);
    }
    for (int i = 0; i < 20000; ++i) {
        const double r3 = dist(annulus_sample<3>(c3, 0.3, rng), c3);
        CHECK(r3 >= 0.3);
        CHECK(r3 <= 0.6);
    }
}

TEST_CASE("annulus radius is area and volume uniform") {
    Xoshiro256ss rng(2);
    const Vec<2> c2{0.0, 0.0};
    const Vec<3> c3{0.0, 0.0, 0.0};
    const double h = 1.0;
    double sum2 = 0.0, sum3 = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum2 += dist(annulus_sample<2>(c2, h, rng), c2);
    for (int i = 0; i < n; ++i) sum3 += dist(annulus_sample<3>(c3, h, rng), c3);
    // analytic means: 14h/9 for disks, 45h/28 for balls
    CHECK(sum2 / n == Catch::Approx(14.0 / 9.0).epsilon(0.01));
    CHECK(sum3 / n == Catch::Approx(45.0 / 28.0).epsilon(0.01));
}

TEST_CASE("annulus directions are isotropic") {
    Xoshiro256ss rng(3);
    const Vec<2> c{0.0, 0.0};
    const int n = 100000;
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec<2> p = annulus_sample<2>(c, 1.0, rng);
        const double r = norm(p);
        mx += p[0] / r;
        my += p[1] / r;
    }
    // component stddev is sqrt(1/2); gate at 3 sigma of the mean
    const double bound = 3.0 * std::sqrt(0.5 / n);
    CHECK(std::abs(mx / n) <= bound);
    CHECK(std::abs(my / n) <= bound);
}

TEST_CASE("a box smaller than h in every dimension yields one sample") {
    std::vector<Vec<2>> corners{{0, 0}, {0.04, 0}, {0, 0.04}, {0.04, 0.04}};
    const auto box = compute_obb<2>(std::span<const Vec<2>>(corners));
    const auto pts = sample_box<2>(box, {0.1, 15, 9});
    CHECK(pts.size() == 1);
}

TEST_CASE("unit square fill: separation, maximality range, determinism") {
    const auto box = unit_square_box();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto pts = sample_box<2>(box, {0.1, 15, seed});
        CHECK(pts.size() >= 55);
        CHECK(pts.size() <= 90);
        CHECK(min_pairwise_dist2(pts) >= 0.1 * 0.1);
    }
    const auto a = sample_box<2>(box, {0.1, 15, 7});
    const auto b = sample_box<2>(box, {0.1, 15, 7});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i][0] == b[i][0]);
        CHECK(a[i][1] == b[i][1]);
    }
}

TEST_CASE("denser fills keep the exact separation guarantee") {
    const auto box = unit_square_box();
    const auto pts = sample_box<2>(box, {0.013, 15, 4});
    REQUIRE(pts.size() <= 5000);
    REQUIRE(pts.size() > 3000);
    CHECK(min_pairwise_dist2(pts) >= 0.013 * 0.013);
    for (const auto& p : pts) CHECK(box.contains(p));
}

TEST_CASE("3D fill respects separation and the box") {
    std::vector<Vec<3>> corners;
    for (double x : {0.0, 1.0})
        for (double y : {0.0, 1.0})
            for (double z : {0.0, 1.0}) corners.push_back({x, y, z});
    const auto box = compute_obb<3>(std::span<const Vec<3>>(corners));
    const auto pts = sample_box<3>(box, {0.12, 15, 11});
    CHECK(pts.size() > 300);
    CHECK(min_pairwise_dist2(pts) >= 0.12 * 0.12);
    for (const auto& p : pts) CHECK(box.contains(p));
}

TEST_CASE("sampling cost is linear in the output count") {
    const auto box = unit_square_box();
    std::vector<double> ns, ts;
    for (double h : {0.012, 0.006, 0.003}) {
        double best = 1e300;
        std::size_t produced = 0;
        for (int rep = 0; rep < 3; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto pts = sample_box<2>(box, {h, 15, 3});
            const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            best = std::min(best, dt);
            produced = pts.size();
        }
        ns.push_back(static_cast<double>(produced));
        ts.push_back(best);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double lx = std::log(ns[i]), ly = std::log(ts[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(ns.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope >= 0.85);
    CHECK(slope <= 1.25);
}

TEST_CASE("invalid sampler configs are rejected") {
    const auto box = unit_square_box();
    CHECK_THROWS_AS(sample_box<2>(box, {0.0, 15, 0}), PreconditionError);
    CHECK_THROWS_AS(sample_box<2>(box, {0.1, 0, 0}), PreconditionError);
    Xoshiro256ss rng(0);
    CHECK_THROWS_AS(annulus_sample<2>({0.0, 0.0}, 0.0, rng), PreconditionError);
}
