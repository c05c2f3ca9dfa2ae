#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "errors.hpp"
#include "kdtree.hpp"
#include "sbf.hpp"
#include "shapes.hpp"
#include "vec.hpp"

namespace nodegen {

struct Histogram {
    double bin_width = 0.0;
    std::vector<double> left_edges;
    std::vector<std::size_t> counts;
    std::size_t overflow = 0;  // distances at or beyond max_dist

    std::size_t total() const {
        std::size_t t = overflow;
        for (auto c : counts) t += c;
        return t;
    }

    /// Bin index for a value; values sitting on a bin edge (to rounding)
    /// count into the right bin.
    std::size_t bin_of(double value) const {
        const double idx = value / bin_width * (1.0 + 8.0 * 2.220446049250313e-16);
        return static_cast<std::size_t>(idx);
    }

    std::size_t mode_bin() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < counts.size(); ++i)
            if (counts[i] > counts[best]) best = i;
        return best;
    }
};

/// Distance from each point to its nearest other point.
template <int D>
std::vector<double> nn_distances(std::span<const Vec<D>> pts) {
    if (pts.size() < 2) throw PreconditionError("nn_distances: need at least two points");
    KdTree<D> tree{std::vector<Vec<D>>(pts.begin(), pts.end())};
    std::vector<double> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        out[i] = tree.nearest_excluding(pts[i], static_cast<int>(i)).distance;
    return out;
}

/// Histogram of nearest-neighbor distances over [0, max_dist) in uniform
/// bins, with a final overflow bucket. Counts sum to the point count.
template <int D>
Histogram nn_histogram(std::span<const Vec<D>> pts, double bin_width, double max_dist) {
    if (!(bin_width > 0.0)) throw PreconditionError("nn_histogram: bin width must be positive");
    if (!(max_dist > 0.0)) throw PreconditionError("nn_histogram: max distance must be positive");
    Histogram h;
    h.bin_width = bin_width;
    const auto nbins = static_cast<std::size_t>(std::ceil(max_dist / bin_width - 1e-9));
    h.counts.assign(nbins, 0);
    h.left_edges.resize(nbins);
    for (std::size_t i = 0; i < nbins; ++i) h.left_edges[i] = bin_width * static_cast<double>(i);
    for (double d : nn_distances<D>(pts)) {
        const std::size_t b = h.bin_of(d);
        if (b < nbins)
            ++h.counts[b];
        else
            ++h.overflow;
    }
    return h;
}

enum class ErrorNorm { Linf, L2 };

/// Pointwise Euclidean deviation of the model from the exact shape over the
/// given parameters, reduced with the requested norm (L2 is scaled by
/// 1/sqrt(count)).
template <int D>
double shape_error(const SbfModel<D>& model, const Shape& shape, const ParamSet& at, ErrorNorm norm) {
    const std::vector<Vec<D>> approx = model.evaluate(at);
    const std::vector<Vec<D>> exact = shape.template sample<D>(at);
    double linf = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < approx.size(); ++i) {
        const double e = dist<D>(approx[i], exact[i]);
        linf = std::max(linf, e);
        sum2 += e * e;
    }
    if (norm == ErrorNorm::Linf) return linf;
    return approx.empty() ? 0.0 : std::sqrt(sum2 / static_cast<double>(approx.size()));
}

/// Same reduction for the first parametric derivative (d/d lambda).
template <int D>
double tangent_error(const SbfModel<D>& model, const Shape& shape, const ParamSet& at, ErrorNorm norm) {
    const auto tang = model.tangents(at);
    double linf = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < at.size(); ++i) {
        Vec<D> exact{};
        if constexpr (D == 2)
            exact = shape.dlambda2(at.lambda[i]);
        else
            exact = shape.dlambda3(at.lambda[i], at.theta[i]);
        const double e = dist<D>(tang.d_lambda[i], exact);
        linf = std::max(linf, e);
        sum2 += e * e;
    }
    if (norm == ErrorNorm::Linf) return linf;
    return at.size() == 0 ? 0.0 : std::sqrt(sum2 / static_cast<double>(at.size()));
}

/// Least-squares slope of log(ys) against log(xs).
inline double fit_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 3) throw PreconditionError("fit_slope: need at least 3 points");
    const auto n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw PreconditionError("fit_slope: values must be positive");
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace nodegen
