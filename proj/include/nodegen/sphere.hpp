#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "vec.hpp"

namespace nodegen {

/// Parameter tuples on S^1 (lambda only) or S^2 (lambda, theta), with
/// lambda in [-pi, pi) and theta in [-pi/2, pi/2).
struct ParamSet {
    int sphere_dim = 1;  // 1 -> circle, 2 -> sphere
    std::vector<double> lambda;
    std::vector<double> theta;  // empty for sphere_dim == 1

    std::size_t size() const { return lambda.size(); }
};

namespace detail {

inline void check_lambda(double l) {
    if (!(l >= -std::numbers::pi && l < std::numbers::pi))
        throw PreconditionError("parameter lambda out of [-pi, pi)");
}

inline void check_theta(double t) {
    if (!(t >= -0.5 * std::numbers::pi && t < 0.5 * std::numbers::pi))
        throw PreconditionError("parameter theta out of [-pi/2, pi/2)");
}

}  // namespace detail

/// lambda -> (cos lambda, sin lambda) on the unit circle.
inline Vec<2> embed_circle(double lambda) {
    detail::check_lambda(lambda);
    return {std::cos(lambda), std::sin(lambda)};
}

/// (lambda, theta) -> (cos l cos t, sin l cos t, sin t) on the unit sphere.
inline Vec<3> embed_sphere(double lambda, double theta) {
    detail::check_lambda(lambda);
    detail::check_theta(theta);
    const double ct = std::cos(theta);
    return {std::cos(lambda) * ct, std::sin(lambda) * ct, std::sin(theta)};
}

template <int D>
inline Vec<D> embed_param(const ParamSet& p, std::size_t k) {
    if constexpr (D == 2)
        return embed_circle(p.lambda[k]);
    else
        return embed_sphere(p.lambda[k], p.theta[k]);
}

/// N equispaced circle parameters lambda_k = -pi + 2 pi k / N.
inline ParamSet equispaced_circle(int n) {
    if (n < 3) throw PreconditionError("equispaced_circle: need at least 3 parameters");
    ParamSet p;
    p.sphere_dim = 1;
    p.lambda.resize(n);
    for (int k = 0; k < n; ++k) p.lambda[k] = -std::numbers::pi + 2.0 * std::numbers::pi * k / n;
    return p;
}

struct SpiralPoints {
    std::vector<Vec<3>> points;  // unit vectors on S^2
    ParamSet params;             // matching (lambda, theta) tuples
};

/// Quasi-uniform spiral points on the unit sphere. Latitudes descend in
/// uniform z steps z_k = 1 - 2 (k + 1/2 + eps) / (N + 2 eps) with pole
/// offset eps = 1.2, and longitudes advance by the golden angle
/// pi (3 - sqrt 5) per point. The offset keeps the polar caps from
/// producing nearest-neighbor outliers.
inline SpiralPoints spiral_points(int n) {
    if (n < 4) throw PreconditionError("spiral_points: need at least 4 points");
    constexpr double kPoleOffset = 1.2;
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const double theta_cap = 0.5 * std::numbers::pi - 1e-9;

    SpiralPoints out;
    out.points.resize(n);
    out.params.sphere_dim = 2;
    out.params.lambda.resize(n);
    out.params.theta.resize(n);
    for (int k = 0; k < n; ++k) {
        const double z = 1.0 - 2.0 * (k + 0.5 + kPoleOffset) / (n + 2.0 * kPoleOffset);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double lon = golden_angle * k;
        const Vec<3> x{r * std::cos(lon), r * std::sin(lon), z};
        double lambda = std::atan2(x[1], x[0]);
        if (lambda >= std::numbers::pi) lambda = -std::numbers::pi;  // half-open range
        double theta = std::asin(std::clamp(z, -1.0, 1.0));
        theta = std::clamp(theta, -theta_cap, theta_cap);
        out.params.lambda[k] = lambda;
        out.params.theta[k] = theta;
        out.points[k] = x;
    }
    return out;
}

}  // namespace nodegen
