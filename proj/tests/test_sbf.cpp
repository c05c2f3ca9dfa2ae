#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include <nodegen/metrics.hpp>
#include <nodegen/rng.hpp>
#include <nodegen/sbf.hpp>
#include <nodegen/shapes.hpp>

using namespace nodegen;

namespace {

SbfModel<2> circle_model(int nd, int m = 7) {
    ParamSet p = equispaced_circle(nd);
    std::vector<Vec<2>> seeds(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) seeds[k] = embed_circle(p.lambda[k]);
    return SbfModel<2>::fit(std::move(seeds), std::move(p), m);
}

SbfModel<3> sphere_model(int nd, int m = 6) {
    SpiralPoints sp = spiral_points(nd);
    return SbfModel<3>::fit(sp.points, sp.params, m);
}

}  // namespace

TEST_CASE("kernel values") {
    CHECK(sbf_kernel(1.0, 7, 1) == 1.0);
    CHECK(sbf_kernel(0.0, 6, 2) == 0.0);
    CHECK(sbf_kernel(2.0, 6, 2) == Catch::Approx(64.0 * std::log(2.0)));
    CHECK_THROWS_AS(sbf_kernel(1.0, 6, 1), PreconditionError);  // even m on the circle
    CHECK_THROWS_AS(sbf_kernel(1.0, 7, 2), PreconditionError);  // odd m on the sphere
    CHECK_THROWS_AS(sbf_kernel(-1.0, 7, 1), PreconditionError);
}

TEST_CASE("fit reproduces the unit circle seeds") {
    const auto model = circle_model(8);
    const auto recon = model.evaluate(model.params());
    for (std::size_t k = 0; k < recon.size(); ++k) CHECK(dist(recon[k], model.seeds()[k]) <= 1e-10);
}

TEST_CASE("three-point fit matches a Cramer-rule oracle") {
    ParamSet p = equispaced_circle(3);
    std::vector<Vec<2>> seeds(3);
    for (int k = 0; k < 3; ++k) seeds[k] = embed_circle(p.lambda[k]);
    const auto model = SbfModel<2>::fit(seeds, p, 7);

    // independent 3x3 solve per coordinate via Cramer's rule
    double a[3][3];
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            a[i][k] = std::pow(std::max(0.0, 2.0 - 2.0 * std::cos(p.lambda[i] - p.lambda[k])), 3.5);
    const auto det3 = [](const double m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double det = det3(a);
    REQUIRE(std::abs(det) > 1e-12);
    for (int j = 0; j < 2; ++j) {
        for (int col = 0; col < 3; ++col) {
            double mod[3][3];
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) mod[r][c] = (c == col) ? seeds[r][j] : a[r][c];
            CHECK(model.coefficients()(col, j) == Catch::Approx(det3(mod) / det).margin(1e-12));
        }
    }
    const auto recon = model.evaluate(p);
    for (int k = 0; k < 3; ++k) CHECK(dist(recon[k], seeds[k]) <= 1e-10);
}

TEST_CASE("fit rejects bad inputs") {
    ParamSet p = equispaced_circle(4);
    std::vector<Vec<2>> seeds(4, Vec<2>{1.0, 0.0});
    p.lambda[1] = p.lambda[0];  // duplicate parameter
    CHECK_THROWS_AS(SbfModel<2>::fit(seeds, p, 7), PreconditionError);

    ParamSet ok = equispaced_circle(4);
    std::vector<Vec<2>> nan_seeds(4, Vec<2>{1.0, 0.0});
    nan_seeds[2][0] = std::nan("");
    CHECK_THROWS_AS(SbfModel<2>::fit(nan_seeds, ok, 7), PreconditionError);

    std::vector<Vec<2>> two(2, Vec<2>{1.0, 0.0});
    ParamSet p2;
    p2.sphere_dim = 1;
    p2.lambda = {0.0, 1.0};
    CHECK_THROWS_AS(SbfModel<2>::fit(two, p2, 7), PreconditionError);
}

TEST_CASE("interpolation invariant holds for fitted models") {
    for (int nd : {8, 24, 64}) {
        const auto model = circle_model(nd);
        const auto recon = model.evaluate(model.params());
        double scale = 0.0, err = 0.0;
        for (std::size_t k = 0; k < recon.size(); ++k) {
            err = std::max(err, dist(recon[k], model.seeds()[k]));
            scale = std::max(scale, norm(model.seeds()[k]));
        }
        CHECK(err <= 1e-9 * scale);
    }
    const auto m3 = sphere_model(200);
    const auto recon = m3.evaluate(m3.params());
    for (std::size_t k = 0; k < recon.size(); ++k) CHECK(dist(recon[k], m3.seeds()[k]) <= 1e-9);
}

TEST_CASE("circle model evaluates between data sites") {
    const auto model = circle_model(32);
    ParamSet at;
    at.sphere_dim = 1;
    at.lambda = {std::numbers::pi / 4};
    const auto pts = model.evaluate(at);
    CHECK(dist(pts[0], Vec<2>{std::cos(std::numbers::pi / 4), std::sin(std::numbers::pi / 4)}) <= 1e-6);

    ParamSet empty;
    empty.sphere_dim = 1;
    CHECK(model.evaluate(empty).empty());
}

TEST_CASE("circle tangent at lambda = 0") {
    const auto model = circle_model(32);
    ParamSet at;
    at.sphere_dim = 1;
    at.lambda = {0.0};
    const auto t = model.tangents(at);
    CHECK(dist(t.d_lambda[0], Vec<2>{0.0, 1.0}) <= 1e-6);
}

TEST_CASE("degenerate all-zero model has zero tangents and no normals") {
    ParamSet p = equispaced_circle(6);
    std::vector<Vec<2>> seeds(6, Vec<2>{0.0, 0.0});
    const SbfModel<2> zero(7, p, seeds, DenseMatrix(6, 2));
    const auto t = zero.tangents(p);
    for (const auto& v : t.d_lambda) CHECK(norm(v) == 0.0);
    CHECK_THROWS_AS(zero.normals(p), PreconditionError);
}

TEST_CASE("tangents agree with central finite differences") {
    const double step = 1e-6;
    {
        const auto model = circle_model(24);
        Xoshiro256ss rng(11);
        ParamSet at, lo, hi;
        at.sphere_dim = lo.sphere_dim = hi.sphere_dim = 1;
        for (int i = 0; i < 50; ++i) {
            const double l = -3.0 + 6.0 * rng.next_double();
            at.lambda.push_back(l);
            lo.lambda.push_back(l - step);
            hi.lambda.push_back(l + step);
        }
        const auto t = model.tangents(at);
        const auto plo = model.evaluate(lo), phi = model.evaluate(hi);
        for (int i = 0; i < 50; ++i) {
            const Vec<2> fd = (1.0 / (2.0 * step)) * (phi[i] - plo[i]);
            CHECK(dist(fd, t.d_lambda[i]) <= 1e-5 * std::max(1.0, norm(t.d_lambda[i])));
        }
    }
    {
        const auto model = sphere_model(150);
        Xoshiro256ss rng(12);
        ParamSet at, llo, lhi, tlo, thi;
        for (auto* p : {&at, &llo, &lhi, &tlo, &thi}) p->sphere_dim = 2;
        for (int i = 0; i < 50; ++i) {
            const double l = -3.0 + 6.0 * rng.next_double();
            const double th = -1.4 + 2.8 * rng.next_double();
            at.lambda.push_back(l);
            at.theta.push_back(th);
            llo.lambda.push_back(l - step);
            llo.theta.push_back(th);
            lhi.lambda.push_back(l + step);
            lhi.theta.push_back(th);
            tlo.lambda.push_back(l);
            tlo.theta.push_back(th - step);
            thi.lambda.push_back(l);
            thi.theta.push_back(th + step);
        }
        const auto t = model.tangents(at);
        const auto pl0 = model.evaluate(llo), pl1 = model.evaluate(lhi);
        const auto pt0 = model.evaluate(tlo), pt1 = model.evaluate(thi);
        for (int i = 0; i < 50; ++i) {
            const Vec<3> fdl = (1.0 / (2.0 * step)) * (pl1[i] - pl0[i]);
            const Vec<3> fdt = (1.0 / (2.0 * step)) * (pt1[i] - pt0[i]);
            CHECK(dist(fdl, t.d_lambda[i]) <= 1e-5 * std::max(1.0, norm(t.d_lambda[i])));
            CHECK(dist(fdt, t.d_theta[i]) <= 1e-5 * std::max(1.0, norm(t.d_theta[i])));
        }
    }
}

TEST_CASE("normals of circle and sphere models point outward") {
    {
        const auto model = circle_model(32);
        const ParamSet at = equispaced_circle(64);
        const auto n = model.normals(at);
        for (std::size_t i = 0; i < at.size(); ++i) {
            CHECK(std::abs(norm(n[i]) - 1.0) <= 1e-12);
            CHECK(dist(n[i], Vec<2>{std::cos(at.lambda[i]), std::sin(at.lambda[i])}) <= 1e-6);
        }
    }
    {
        const auto model = sphere_model(400);
        const ParamSet at = spiral_points(300).params;
        const auto n = model.normals(at);
        const auto pts = model.evaluate(at);
        for (std::size_t i = 0; i < at.size(); ++i) {
            CHECK(std::abs(norm(n[i]) - 1.0) <= 1e-12);
            CHECK(dist(n[i], (1.0 / norm(pts[i])) * pts[i]) <= 1e-5);
        }
    }
}

TEST_CASE("star model normals are unit and outward on a convex lobe") {
    const Shape star = Shape::resolve({"star", {}});
    ParamSet p = equispaced_circle(128);
    const auto model = SbfModel<2>::fit(star.sample2(p), p, 7);
    const ParamSet at = equispaced_circle(512);
    const auto n = model.normals(at);
    const auto pts = model.evaluate(at);
    Vec<2> centroid{};
    for (const auto& x : pts) centroid = centroid + x;
    centroid = (1.0 / static_cast<double>(pts.size())) * centroid;
    for (std::size_t i = 0; i < at.size(); ++i) {
        CHECK(std::abs(norm(n[i]) - 1.0) <= 1e-12);
        // tip of a lobe: locally convex, so the centroid test must pass there
        if (std::abs(at.lambda[i] + std::numbers::pi / 4) < 0.25) CHECK(dot(pts[i] - centroid, n[i]) > 0.0);
    }
}

TEST_CASE("model json round trip is exact") {
    const auto model = circle_model(16);
    const std::string text = model.to_json();
    const auto back = SbfModel<2>::from_json(text);
    CHECK(back.order() == model.order());
    REQUIRE(back.site_count() == model.site_count());
    for (std::size_t k = 0; k < model.site_count(); ++k) {
        CHECK(back.params().lambda[k] == model.params().lambda[k]);
        for (int j = 0; j < 2; ++j) {
            CHECK(back.seeds()[k][j] == model.seeds()[k][j]);
            CHECK(back.coefficients()(k, j) == model.coefficients()(k, j));
        }
    }
    CHECK_THROWS_AS(SbfModel<3>::from_json(text), IoError);   // wrong dimension
    CHECK_THROWS_AS(SbfModel<2>::from_json("{]"), IoError);   // malformed
    CHECK_THROWS_AS(SbfModel<2>::from_json("{}"), IoError);   // missing keys
}

TEST_CASE("smooth-shape convergence orders") {
    const Shape cinf = Shape::resolve({"bump-cinf-2d", {}});
    const Shape c2 = Shape::resolve({"bump-c2-2d", {}});
    std::vector<double> nds{20, 40, 80, 160};
    std::vector<double> e_inf, e_c2, d_inf;
    for (double ndv : nds) {
        const int nd = static_cast<int>(ndv);
        ParamSet p = equispaced_circle(nd);
        const auto minf = SbfModel<2>::fit(cinf.sample2(p), p, 7);
        const auto mc2 = SbfModel<2>::fit(c2.sample2(p), p, 7);
        const ParamSet dense = equispaced_circle(10 * nd);
        e_inf.push_back(shape_error(minf, cinf, dense, ErrorNorm::Linf));
        d_inf.push_back(tangent_error(minf, cinf, dense, ErrorNorm::Linf));
        e_c2.push_back(shape_error(mc2, c2, dense, ErrorNorm::Linf));
    }
    const double s_inf = fit_slope(nds, e_inf);
    const double s_d = fit_slope(nds, d_inf);
    const double s_c2 = fit_slope(nds, e_c2);
    CHECK(s_inf <= -8.0);
    const double gap = std::abs(s_inf) - std::abs(s_d);
    CHECK(gap >= 0.0);
    CHECK(gap <= 2.0);
    CHECK(std::abs(s_c2) < std::abs(s_inf));
}
