#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "linalg.hpp"
#include "sphere.hpp"
#include "vec.hpp"

namespace nodegen {

namespace detail {

inline double powi(double x, int n) {
    double r = 1.0;
    while (n-- > 0) r *= x;
    return r;
}

inline void check_kernel_order(int m, int sphere_dim) {
    if (sphere_dim == 1) {
        if (m < 1 || m % 2 == 0) throw PreconditionError("kernel order m must be odd on the circle");
    } else if (sphere_dim == 2) {
        if (m < 2 || m % 2 != 0) throw PreconditionError("kernel order m must be even on the sphere");
    } else {
        throw PreconditionError("sphere dimension must be 1 or 2");
    }
}

// Kernel in the squared chordal distance t = r^2 = 2 (1 - xi . xi_k).
// Circle: phi = r^m (m odd). Sphere: phi = r^m log r = t^{m/2} log(t)/2
// (m even), continuously extended by 0 at t = 0.
inline double phi_t(double t, int m, int sphere_dim) {
    if (t <= 0.0) return 0.0;
    if (sphere_dim == 1) return powi(std::sqrt(t), m);
    return 0.5 * powi(t, m / 2) * std::log(t);
}

// d phi / d t; the r^{m-2} log r terms vanish at t = 0 for m >= 3 (circle)
// and m >= 4 (sphere).
inline double dphi_dt(double t, int m, int sphere_dim) {
    if (t <= 0.0) return 0.0;
    if (sphere_dim == 1) return 0.5 * m * powi(std::sqrt(t), m - 2);
    const int p = m / 2;
    return 0.5 * powi(t, p - 1) * (p * std::log(t) + 1.0);
}

}  // namespace detail

/// Polyharmonic-spline spherical kernel phi(r): r^m on S^1 (odd m),
/// r^m log r on S^2 (even m, value 0 at r = 0).
inline double sbf_kernel(double r, int m, int sphere_dim) {
    if (r < 0.0) throw PreconditionError("sbf_kernel: negative radius");
    detail::check_kernel_order(m, sphere_dim);
    return detail::phi_t(r * r, m, sphere_dim);
}

/// Parametric boundary model: each Cartesian coordinate of the boundary is
/// interpolated over S^{D-1} parameters with a parameter-free PHS spherical
/// kernel. A fitted model maps parameters to boundary points, tangent
/// vectors, and unit outward normals.
template <int D>
class SbfModel {
    static_assert(D == 2 || D == 3);

  public:
    static constexpr int kDefaultOrder = (D == 2) ? 7 : 6;

    SbfModel() = default;

    /// Assembles a model from parts without solving (deserialization and
    /// synthetic models); sizes must be consistent.
    SbfModel(int m, ParamSet params, std::vector<Vec<D>> seeds, DenseMatrix coeffs)
        : m_(m), params_(std::move(params)), seeds_(std::move(seeds)), coeffs_(std::move(coeffs)) {
        detail::check_kernel_order(m_, D - 1);
        if (params_.size() != seeds_.size() || coeffs_.rows() != seeds_.size() || coeffs_.cols() != D)
            throw PreconditionError("SbfModel: inconsistent component sizes");
        cache_site_units();
    }

    /// Fits the interpolation system: one dense factorization shared by all
    /// D coordinate right-hand sides. Throws on duplicate parameters or a
    /// singular system.
    static SbfModel fit(std::vector<Vec<D>> seeds, ParamSet params, int m = kDefaultOrder) {
        detail::check_kernel_order(m, D - 1);
        const std::size_t n = seeds.size();
        if (params.size() != n) throw PreconditionError("SbfModel::fit: seed/parameter count mismatch");
        if (n < static_cast<std::size_t>(D + 1))
            throw PreconditionError("SbfModel::fit: need at least " + std::to_string(D + 1) + " seeds");
        if (params.sphere_dim != D - 1) throw PreconditionError("SbfModel::fit: parameter set has wrong sphere dimension");
        for (const auto& s : seeds)
            if (!all_finite<D>(s)) throw PreconditionError("SbfModel::fit: non-finite seed coordinate");

        std::vector<Vec<D>> units(n);
        for (std::size_t k = 0; k < n; ++k) units[k] = embed_param<D>(params, k);

        DenseMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = i + 1; k < n; ++k) {
                const double t = std::max(0.0, 2.0 - 2.0 * dot(units[i], units[k]));
                if (t < 1e-24) throw PreconditionError("SbfModel::fit: duplicate parameters");
                const double v = detail::phi_t(t, m, D - 1);
                a(i, k) = v;
                a(k, i) = v;
            }
        }
        DenseMatrix b(n, D);
        for (std::size_t k = 0; k < n; ++k)
            for (int j = 0; j < D; ++j) b(k, j) = seeds[k][j];

        SbfModel out;
        out.m_ = m;
        out.params_ = std::move(params);
        out.seeds_ = std::move(seeds);
        out.coeffs_ = solve_dense(std::move(a), std::move(b));
        out.site_units_ = std::move(units);
        return out;
    }

    int order() const { return m_; }
    const ParamSet& params() const { return params_; }
    const std::vector<Vec<D>>& seeds() const { return seeds_; }
    const DenseMatrix& coefficients() const { return coeffs_; }
    std::size_t site_count() const { return seeds_.size(); }

    std::vector<Vec<D>> evaluate(const ParamSet& at) const {
        std::vector<Vec<D>> pts;
        eval_rows(at, &pts, nullptr, nullptr);
        return pts;
    }

    struct Tangents {
        std::vector<Vec<D>> d_lambda;
        std::vector<Vec<D>> d_theta;  // empty when D == 2
    };

    /// Analytic first parametric derivatives of the interpolant.
    Tangents tangents(const ParamSet& at) const {
        Tangents t;
        eval_rows(at, nullptr, &t.d_lambda, D == 3 ? &t.d_theta : nullptr);
        return t;
    }

    /// Unit outward normals. In 2D the unit tangent is rotated by -pi/2
    /// (outward for a counterclockwise parametrization); in 3D the two
    /// tangents are crossed. A centroid majority vote fixes the global sign.
    std::vector<Vec<D>> normals(const ParamSet& at) const {
        std::vector<Vec<D>> pts, dl, dt;
        eval_rows(at, &pts, &dl, D == 3 ? &dt : nullptr);
        return normals_from(pts, dl, dt);
    }

    /// One-pass evaluation of points, tangents, and normals.
    void evaluate_full(const ParamSet& at, std::vector<Vec<D>>& pts, std::vector<Vec<D>>& nrm) const {
        std::vector<Vec<D>> dl, dt;
        eval_rows(at, &pts, &dl, D == 3 ? &dt : nullptr);
        nrm = normals_from(pts, dl, dt);
    }

    std::string to_json() const {
        nlohmann::json j;
        j["format"] = "nodegen-sbf-model";
        j["version"] = 1;
        j["dim"] = D;
        j["m"] = m_;
        j["lambda"] = params_.lambda;
        if (D == 3) j["theta"] = params_.theta;
        nlohmann::json seeds = nlohmann::json::array();
        for (const auto& s : seeds_) seeds.push_back(std::vector<double>(s.begin(), s.end()));
        j["seeds"] = std::move(seeds);
        nlohmann::json coeffs = nlohmann::json::array();
        for (std::size_t kk = 0; kk < coeffs_.rows(); ++kk) {
            std::vector<double> row(coeffs_.row(kk), coeffs_.row(kk) + D);
            coeffs.push_back(std::move(row));
        }
        j["coefficients"] = std::move(coeffs);
        return j.dump(2);
    }

    static SbfModel from_json(const std::string& text) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw IoError(std::string("model file: ") + e.what());
        }
        try {
            if (j.at("format") != "nodegen-sbf-model") throw IoError("model file: unknown format tag");
            if (j.at("version") != 1) throw IoError("model file: unsupported version");
            if (j.at("dim") != D) throw IoError("model file: dimension mismatch");
            ParamSet p;
            p.sphere_dim = D - 1;
            p.lambda = j.at("lambda").get<std::vector<double>>();
            if (D == 3) p.theta = j.at("theta").get<std::vector<double>>();
            std::vector<Vec<D>> seeds;
            for (const auto& row : j.at("seeds")) {
                if (row.size() != D) throw IoError("model file: bad seed row");
                Vec<D> s{};
                for (int i = 0; i < D; ++i) s[i] = row[i].get<double>();
                seeds.push_back(s);
            }
            DenseMatrix coeffs(seeds.size(), D);
            std::size_t kk = 0;
            for (const auto& row : j.at("coefficients")) {
                if (row.size() != D || kk >= seeds.size()) throw IoError("model file: bad coefficient row");
                for (int i = 0; i < D; ++i) coeffs(kk, i) = row[i].get<double>();
                ++kk;
            }
            if (kk != seeds.size()) throw IoError("model file: coefficient row count mismatch");
            return SbfModel(j.at("m").get<int>(), std::move(p), std::move(seeds), std::move(coeffs));
        } catch (const nlohmann::json::exception& e) {
            throw IoError(std::string("model file: ") + e.what());
        }
    }

  private:
    int m_ = kDefaultOrder;
    ParamSet params_;
    std::vector<Vec<D>> seeds_;
    std::vector<Vec<D>> site_units_;  // cached embeddings of the data-site parameters
    DenseMatrix coeffs_;              // N_d x D, column j interpolates coordinate j

    void cache_site_units() {
        site_units_.resize(params_.size());
        for (std::size_t k = 0; k < params_.size(); ++k) site_units_[k] = embed_param<D>(params_, k);
    }

    // Shared accumulation pass over data sites. Requesting derivatives costs
    // one extra kernel-derivative term per site; the chordal distance and
    // logs are reused.
    void eval_rows(const ParamSet& at, std::vector<Vec<D>>* pts, std::vector<Vec<D>>* dl,
                   std::vector<Vec<D>>* dt) const {
        if (at.sphere_dim != D - 1) throw PreconditionError("SbfModel: parameter set has wrong sphere dimension");
        const std::size_t ne = at.size();
        const std::size_t n = site_units_.size();
        if (pts) pts->assign(ne, Vec<D>{});
        if (dl) dl->assign(ne, Vec<D>{});
        if (dt) dt->assign(ne, Vec<D>{});
        for (std::size_t e = 0; e < ne; ++e) {
            Vec<D> xe{}, del{}, det{};
            if constexpr (D == 2) {
                const double l = at.lambda[e];
                xe = embed_circle(l);
                del = {-xe[1], xe[0]};
            } else {
                const double l = at.lambda[e], th = at.theta[e];
                xe = embed_sphere(l, th);
                const double cl = std::cos(l), sl = std::sin(l);
                const double ct = std::cos(th), st = std::sin(th);
                del = {-sl * ct, cl * ct, 0.0};
                det = {-cl * st, -sl * st, ct};
            }
            Vec<D> acc_p{}, acc_l{}, acc_t{};
            for (std::size_t k = 0; k < n; ++k) {
                const Vec<D>& xk = site_units_[k];
                const double t = std::max(0.0, 2.0 - 2.0 * dot(xe, xk));
                const double* ck = coeffs_.row(k);
                if (pts) {
                    const double w = detail::phi_t(t, m_, D - 1);
                    for (int j = 0; j < D; ++j) acc_p[j] += ck[j] * w;
                }
                if (dl || dt) {
                    const double g = detail::dphi_dt(t, m_, D - 1);
                    if (dl) {
                        const double wl = g * (-2.0 * dot(del, xk));
                        for (int j = 0; j < D; ++j) acc_l[j] += ck[j] * wl;
                    }
                    if (dt) {
                        const double wt = g * (-2.0 * dot(det, xk));
                        for (int j = 0; j < D; ++j) acc_t[j] += ck[j] * wt;
                    }
                }
            }
            if (pts) (*pts)[e] = acc_p;
            if (dl) (*dl)[e] = acc_l;
            if (dt) (*dt)[e] = acc_t;
        }
    }

    std::vector<Vec<D>> normals_from(const std::vector<Vec<D>>& pts, const std::vector<Vec<D>>& dl,
                                     const std::vector<Vec<D>>& dt) const {
        const std::size_t ne = pts.size();
        std::vector<Vec<D>> nrm(ne);
        for (std::size_t e = 0; e < ne; ++e) {
            Vec<D> raw{};
            if constexpr (D == 2) {
                raw = {dl[e][1], -dl[e][0]};
            } else {
                raw = cross(dl[e], dt[e]);
            }
            const double len = norm<D>(raw);
            if (len < 1e-14) throw PreconditionError("SbfModel::normals: degenerate (zero) tangent");
            nrm[e] = (1.0 / len) * raw;
        }
        if (ne == 0) return nrm;
        Vec<D> centroid{};
        for (const auto& p : pts) centroid = centroid + p;
        centroid = (1.0 / static_cast<double>(ne)) * centroid;
        std::size_t outward = 0;
        for (std::size_t e = 0; e < ne; ++e)
            if (dot(pts[e] - centroid, nrm[e]) > 0.0) ++outward;
        if (2 * outward < ne)
            for (auto& v : nrm) v = -1.0 * v;
        return nrm;
    }
};

}  // namespace nodegen
