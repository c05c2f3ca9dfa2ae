#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <vector>

#include "embedded.hpp"
#include "generator.hpp"
#include "metrics.hpp"
#include "nodes.hpp"
#include "sbf.hpp"
#include "shapes.hpp"
#include "sphere.hpp"

namespace nodegen::bench {

struct GeneratePoint {
    double h = 0.0;
    std::size_t n = 0;        // boundary + interior nodes produced
    StageTimes stages;        // min over repeats, per stage
    double total = 0.0;       // min over repeats of full-pipeline time
    std::vector<StageTimes> repeat_stages;  // one entry per repeat, in order
};

struct GenerateScaling {
    std::vector<GeneratePoint> points;
    double slope = 0.0;  // log total time vs log N
};

namespace detail {

template <int D>
SbfModel<D> fit_shape_model(const Shape& shape, int nd, double* fit_seconds) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    ParamSet params;
    if constexpr (D == 2)
        params = equispaced_circle(nd);
    else
        params = spiral_points(nd).params;
    auto seeds = shape.template sample<D>(params);
    auto model = SbfModel<D>::fit(std::move(seeds), std::move(params));
    if (fit_seconds) *fit_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    return model;
}

inline double slope_of(const std::vector<std::size_t>& ns, const std::vector<double>& ts) {
    std::vector<double> xs(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) xs[i] = static_cast<double>(ns[i]);
    return fit_slope(xs, ts);
}

}  // namespace detail

/// Times the full generation pipeline over an h ladder. Every ladder point
/// is run `repeats` times (>= 1) and the minimum wall time is kept;
/// timings use the monotonic clock. The slope is the least-squares fit of
/// log total time against log node count.
template <int D>
GenerateScaling scale_generate(const Shape& shape, int nd, std::span<const double> h_ladder, int khat, double tau,
                               int repeats, std::uint64_t seed) {
    GenerateScaling out;
    std::vector<std::size_t> ns;
    std::vector<double> totals;
    for (double h : h_ladder) {
        GeneratePoint pt;
        pt.h = h;
        double best = 0.0;
        for (int r = 0; r < repeats; ++r) {
            StageTimes st;
            const SbfModel<D> model = detail::fit_shape_model<D>(shape, nd, &st.fit);
            SamplerConfig cfg{h, khat, seed};
            const NodeSet<D> nodes = generate(model, h, tau, cfg, &st);
            pt.n = nodes.boundary.points.size() + nodes.interior.size();
            pt.repeat_stages.push_back(st);
            const double total = st.total();
            if (r == 0 || total < best) {
                best = total;
                pt.stages = st;
            }
        }
        pt.total = best;
        ns.push_back(pt.n);
        totals.push_back(best);
        out.points.push_back(pt);
    }
    out.slope = detail::slope_of(ns, totals);
    return out;
}

struct ModifyPoint {
    double h = 0.0;
    std::size_t n = 0;          // nodes prior to modification
    double modify_time = 0.0;   // min over repeats
    double generate_time = 0.0; // min over repeats, same h
};

struct ModifyScaling {
    std::vector<ModifyPoint> points;
    double slope = 0.0;  // log modify time vs log N
};

/// Times local node-set modification against regeneration over the same
/// ladder: each node set is generated once per repeat (timed, giving the
/// regeneration baseline) and then modified with the embedded object.
template <int D>
ModifyScaling scale_modify(const Shape& domain, int domain_nd, const Shape& object, int object_nd,
                           std::span<const double> h_ladder, int khat, double tau, int repeats, std::uint64_t seed) {
    using clock = std::chrono::steady_clock;
    ModifyScaling out;
    std::vector<std::size_t> ns;
    std::vector<double> times;
    for (double h : h_ladder) {
        ModifyPoint pt;
        pt.h = h;
        for (int r = 0; r < repeats; ++r) {
            StageTimes st;
            const SbfModel<D> model = detail::fit_shape_model<D>(domain, domain_nd, &st.fit);
            SamplerConfig cfg{h, khat, seed};
            const NodeSet<D> nodes = generate(model, h, tau, cfg, &st);
            const double gen_time = st.total();

            NodeList<D> rows = flatten(nodes);
            pt.n = rows.size();

            EmbedInput<D> obj;
            ParamSet params;
            if constexpr (D == 2)
                params = equispaced_circle(object_nd);
            else
                params = spiral_points(object_nd).params;
            obj.seeds = object.template sample<D>(params);
            obj.params = std::move(params);

            const auto t0 = clock::now();
            const auto result = embed_boundaries<D>(rows, {}, {obj}, h, 0.0, tau);
            const double mod_time = std::chrono::duration<double>(clock::now() - t0).count();
            (void)result;

            if (r == 0 || gen_time < pt.generate_time) pt.generate_time = gen_time;
            if (r == 0 || mod_time < pt.modify_time) pt.modify_time = mod_time;
        }
        ns.push_back(pt.n);
        times.push_back(pt.modify_time);
        out.points.push_back(pt);
    }
    out.slope = detail::slope_of(ns, times);
    return out;
}

}  // namespace nodegen::bench
