#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "sphere.hpp"
#include "vec.hpp"

namespace nodegen {

/// Named closed-form boundary plus parameter overrides. Unknown names and
/// parameters are rejected when the spec is resolved.
struct ShapeSpec {
    std::string name;
    std::map<std::string, double> params;
};

enum class ShapeKind { BumpCinf2d, BumpC2_2d, BumpCinf3d, BumpC3_3d, Star, Ellipse, Rbc, BumpySphere };

/// Closed-form test boundary with exact evaluation and (where the shape is
/// smooth) exact parametric derivatives.
class Shape {
  public:
    static Shape resolve(const ShapeSpec& spec) {
        Shape s;
        if (spec.name == "bump-cinf-2d") {
            s.kind_ = ShapeKind::BumpCinf2d;
            s.p_ = {{"xc", 0.9}, {"yc", 0.9}, {"a", 0.04}, {"b", 0.05}, {"amp", 0.09}, {"sigma", 0.1}};
        } else if (spec.name == "bump-c2-2d") {
            s.kind_ = ShapeKind::BumpC2_2d;
            s.p_ = {{"xc", 0.2}, {"yc", 0.2}, {"a", 0.1}, {"b", 0.1}, {"amp", 0.04}, {"sigma", 0.9}};
        } else if (spec.name == "bump-cinf-3d") {
            s.kind_ = ShapeKind::BumpCinf3d;
            s.p_ = {{"xc", 0.9}, {"yc", 0.9}, {"zc", 0.9}, {"a", 0.1},     {"b", 0.2},
                    {"c", 0.09}, {"amp", 0.09}, {"sigma", 0.2}, {"lamc", 0.0}, {"thc", 0.5 * std::numbers::pi}};
        } else if (spec.name == "bump-c3-3d") {
            s.kind_ = ShapeKind::BumpC3_3d;
            s.p_ = {{"xc", 0.1}, {"yc", 0.1}, {"zc", 0.2}, {"a", 0.1},        {"b", 0.1},
                    {"c", 0.1},  {"amp", 0.04}, {"sigma", 0.64}, {"lamc", 0.0}, {"thc", 0.5 * std::numbers::pi}};
        } else if (spec.name == "star") {
            s.kind_ = ShapeKind::Star;
        } else if (spec.name == "ellipse") {
            s.kind_ = ShapeKind::Ellipse;
            s.p_ = {{"xc", 0.0}, {"yc", 0.0}, {"a", 1.0}, {"b", 0.5}, {"tilt", 0.0}};
        } else if (spec.name == "rbc") {
            s.kind_ = ShapeKind::Rbc;
            s.p_ = {{"xc", 0.0}, {"yc", 0.0}, {"zc", 0.0}, {"scale", 1.0}};
        } else if (spec.name == "bumpy-sphere") {
            s.kind_ = ShapeKind::BumpySphere;
            s.p_ = {{"xc", 0.0}, {"yc", 0.0}, {"zc", 0.0}, {"radius", 1.0}, {"amp", 0.8}};
        } else {
            throw IoError("unknown shape: " + spec.name);
        }
        for (const auto& [k, v] : spec.params) {
            if (!std::isfinite(v)) throw IoError("shape parameter " + k + " is not finite");
            auto it = s.p_.find(k);
            if (it == s.p_.end()) throw IoError("shape " + spec.name + " has no parameter " + k);
            it->second = v;
        }
        return s;
    }

    ShapeKind kind() const { return kind_; }

    int dim() const {
        switch (kind_) {
            case ShapeKind::BumpCinf2d:
            case ShapeKind::BumpC2_2d:
            case ShapeKind::Star:
            case ShapeKind::Ellipse:
                return 2;
            default:
                return 3;
        }
    }

    /// Derivatives are available for every smooth shape; the star is only C0.
    bool has_derivatives() const { return kind_ != ShapeKind::Star; }

    Vec<2> point2(double lambda) const {
        switch (kind_) {
            case ShapeKind::BumpCinf2d:
            case ShapeKind::BumpC2_2d: {
                const auto [f, fp] = bump2(lambda);
                (void)fp;
                const Vec<2> xi{p("xc") + p("a") * std::cos(lambda), p("yc") + p("b") * std::sin(lambda)};
                return f * xi;
            }
            case ShapeKind::Star: {
                const double r = std::pow(std::abs(std::cos(1.5 * lambda)), std::sin(3.0 * lambda));
                return {r * std::cos(lambda), r * std::sin(lambda)};
            }
            case ShapeKind::Ellipse: {
                const double ct = std::cos(p("tilt")), st = std::sin(p("tilt"));
                const double u = p("a") * std::cos(lambda), v = p("b") * std::sin(lambda);
                return {p("xc") + ct * u - st * v, p("yc") + st * u + ct * v};
            }
            default:
                throw PreconditionError("shape is not 2D");
        }
    }

    Vec<2> dlambda2(double lambda) const {
        switch (kind_) {
            case ShapeKind::BumpCinf2d:
            case ShapeKind::BumpC2_2d: {
                const auto [f, fp] = bump2(lambda);
                const Vec<2> xi{p("xc") + p("a") * std::cos(lambda), p("yc") + p("b") * std::sin(lambda)};
                const Vec<2> dxi{-p("a") * std::sin(lambda), p("b") * std::cos(lambda)};
                return fp * xi + f * dxi;
            }
            case ShapeKind::Ellipse: {
                const double ct = std::cos(p("tilt")), st = std::sin(p("tilt"));
                const double du = -p("a") * std::sin(lambda), dv = p("b") * std::cos(lambda);
                return {ct * du - st * dv, st * du + ct * dv};
            }
            default:
                throw PreconditionError("shape has no closed-form 2D derivative");
        }
    }

    Vec<3> point3(double lambda, double theta) const {
        switch (kind_) {
            case ShapeKind::BumpCinf3d:
            case ShapeKind::BumpC3_3d: {
                const auto [f, dfl, dft] = bump3(lambda, theta);
                (void)dfl;
                (void)dft;
                return f * ideal3(lambda, theta);
            }
            case ShapeKind::Rbc: {
                // axisymmetric biconcave profile: unit equatorial radius,
                // thickness 0.5 sin(theta) (c0 + c1 cos^2 + c2 cos^4) with
                // the Evans-Fung coefficients 0.207, 2.003, -1.123
                const double ct = std::cos(theta), st = std::sin(theta);
                const double c2 = ct * ct;
                const double z = 0.5 * st * (0.207 + 2.003 * c2 - 1.123 * c2 * c2);
                const double s = p("scale");
                return {p("xc") + s * ct * std::cos(lambda), p("yc") + s * ct * std::sin(lambda), p("zc") + s * z};
            }
            case ShapeKind::BumpySphere: {
                // sphere with a smooth cubic bump field R = 1 + amp * x y z
                const Vec<3> u = embed_sphere_raw(lambda, theta);
                const double rr = p("radius") * (1.0 + p("amp") * u[0] * u[1] * u[2]);
                return {p("xc") + rr * u[0], p("yc") + rr * u[1], p("zc") + rr * u[2]};
            }
            default:
                throw PreconditionError("shape is not 3D");
        }
    }

    Vec<3> dlambda3(double lambda, double theta) const { return deriv3(lambda, theta, true); }
    Vec<3> dtheta3(double lambda, double theta) const { return deriv3(lambda, theta, false); }

    std::vector<Vec<2>> sample2(const ParamSet& at) const {
        std::vector<Vec<2>> out(at.size());
        for (std::size_t i = 0; i < at.size(); ++i) out[i] = point2(at.lambda[i]);
        return out;
    }

    std::vector<Vec<3>> sample3(const ParamSet& at) const {
        std::vector<Vec<3>> out(at.size());
        for (std::size_t i = 0; i < at.size(); ++i) out[i] = point3(at.lambda[i], at.theta[i]);
        return out;
    }

    template <int D>
    std::vector<Vec<D>> sample(const ParamSet& at) const {
        if (dim() != D) throw PreconditionError("shape dimension mismatch");
        if constexpr (D == 2)
            return sample2(at);
        else
            return sample3(at);
    }

    double param(const std::string& name) const { return p(name); }

  private:
    ShapeKind kind_ = ShapeKind::Star;
    std::map<std::string, double> p_;

    double p(const std::string& k) const { return p_.at(k); }

    static Vec<3> embed_sphere_raw(double l, double t) {
        const double ct = std::cos(t);
        return {std::cos(l) * ct, std::sin(l) * ct, std::sin(t)};
    }

    Vec<3> ideal3(double l, double t) const {
        return {p("xc") + p("a") * std::cos(l) * std::cos(t), p("yc") + p("b") * std::sin(l) * std::cos(t),
                p("zc") + p("c") * std::sin(t)};
    }

    // bump factor and its lambda derivative for the 2D shapes
    std::pair<double, double> bump2(double l) const {
        const double amp = p("amp"), sig = p("sigma");
        if (kind_ == ShapeKind::BumpCinf2d) {
            const double u = 1.0 - std::cos(l);
            const double e = amp * std::exp(-u * u / sig);
            return {1.0 + e, e * (-2.0 * u * std::sin(l) / sig)};
        }
        const double s2 = std::sin(l) * std::sin(l);
        const double g = std::pow(s2, 1.5);
        const double gp = 3.0 * std::abs(std::sin(l)) * std::sin(l) * std::cos(l);
        const double e = amp * std::exp(-g / sig);
        return {1.0 + e, e * (-gp / sig)};
    }

    // bump factor and its partial derivatives for the 3D shapes, driven by
    // r_c = 1 - cos(theta) cos(thc) cos(lambda - lamc) - sin(theta) sin(thc)
    std::tuple<double, double, double> bump3(double l, double t) const {
        const double amp = p("amp"), sig = p("sigma"), lc = p("lamc"), tc = p("thc");
        const double rc = 1.0 - std::cos(t) * std::cos(tc) * std::cos(l - lc) - std::sin(t) * std::sin(tc);
        const double drl = std::cos(t) * std::cos(tc) * std::sin(l - lc);
        const double drt = std::sin(t) * std::cos(tc) * std::cos(l - lc) - std::cos(t) * std::sin(tc);
        double e, de;  // bump value and d(bump)/d(rc)
        if (kind_ == ShapeKind::BumpCinf3d) {
            e = amp * std::exp(-rc * rc / sig);
            de = e * (-2.0 * rc / sig);
        } else {
            const double rcp = std::max(rc, 0.0);
            e = amp * std::exp(-std::pow(rcp, 1.5) / sig);
            de = e * (-1.5 * std::sqrt(rcp) / sig);
        }
        return {1.0 + e, de * drl, de * drt};
    }

    Vec<3> deriv3(double l, double t, bool wrt_lambda) const {
        switch (kind_) {
            case ShapeKind::BumpCinf3d:
            case ShapeKind::BumpC3_3d: {
                const auto [f, dfl, dft] = bump3(l, t);
                const Vec<3> xi = ideal3(l, t);
                const double ct = std::cos(t), st = std::sin(t);
                const Vec<3> dxi = wrt_lambda
                                       ? Vec<3>{-p("a") * std::sin(l) * ct, p("b") * std::cos(l) * ct, 0.0}
                                       : Vec<3>{-p("a") * std::cos(l) * st, -p("b") * std::sin(l) * st, p("c") * ct};
                return (wrt_lambda ? dfl : dft) * xi + f * dxi;
            }
            case ShapeKind::Rbc: {
                const double ct = std::cos(t), st = std::sin(t);
                const double c2 = ct * ct;
                const double s = p("scale");
                if (wrt_lambda) return {-s * ct * std::sin(l), s * ct * std::cos(l), 0.0};
                const double prof = 0.207 + 2.003 * c2 - 1.123 * c2 * c2;
                const double dprof = (-2.0 * 2.003 + 4.0 * 1.123 * c2) * ct * st;
                const double dz = 0.5 * (ct * prof + st * dprof);
                return {-s * st * std::cos(l), -s * st * std::sin(l), s * dz};
            }
            case ShapeKind::BumpySphere: {
                const double ct = std::cos(t), st = std::sin(t);
                const Vec<3> u = embed_sphere_raw(l, t);
                const Vec<3> du = wrt_lambda ? Vec<3>{-std::sin(l) * ct, std::cos(l) * ct, 0.0}
                                             : Vec<3>{-std::cos(l) * st, -std::sin(l) * st, ct};
                const double amp = p("amp"), rad = p("radius");
                const double f = u[0] * u[1] * u[2];
                const double df = du[0] * u[1] * u[2] + u[0] * du[1] * u[2] + u[0] * u[1] * du[2];
                const double rr = rad * (1.0 + amp * f);
                const double drr = rad * amp * df;
                return {drr * u[0] + rr * du[0], drr * u[1] + rr * du[1], drr * u[2] + rr * du[2]};
            }
            default:
                throw PreconditionError("shape has no closed-form 3D derivative");
        }
    }
};

}  // namespace nodegen
