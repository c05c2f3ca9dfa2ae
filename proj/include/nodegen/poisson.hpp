#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "obb.hpp"
#include "rng.hpp"
#include "vec.hpp"

namespace nodegen {

/// Poisson disk sampler parameters: minimum separation h, neighborhood size
/// k_hat (candidates per active sample), and the PRNG seed.
struct SamplerConfig {
    double h = 0.0;
    int k_hat = 15;
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (!(h > 0.0)) throw PreconditionError("SamplerConfig: h must be positive");
        if (k_hat < 1) throw PreconditionError("SamplerConfig: k_hat must be at least 1");
    }
};

/// Uniform sample (w.r.t. area in 2D, volume in 3D) from the annulus of
/// inner radius h and outer radius 2h around `center`. Radius by inverse
/// transform r = h (1 + (2^D - 1) u)^{1/D}, direction uniform on the sphere.
template <int D>
Vec<D> annulus_sample(const Vec<D>& center, double h, Xoshiro256ss& rng) {
    static_assert(D == 2 || D == 3);
    if (!(h > 0.0)) throw PreconditionError("annulus_sample: h must be positive");
    const double u = rng.next_double();
    const double r = h * std::pow(1.0 + ((1 << D) - 1) * u, 1.0 / D);
    if constexpr (D == 2) {
        const double ang = 2.0 * std::numbers::pi * rng.next_double();
        return {center[0] + r * std::cos(ang), center[1] + r * std::sin(ang)};
    } else {
        const double z = 2.0 * rng.next_double() - 1.0;
        const double phi = 2.0 * std::numbers::pi * rng.next_double();
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {center[0] + r * rho * std::cos(phi), center[1] + r * rho * std::sin(phi), center[2] + r * z};
    }
}

namespace detail {

// Background grid with cell size h/sqrt(D): a cell holds at most one sample
// index, and any point within h of a cell lies in the surrounding block of
// half-width 2.
template <int D>
class BackgroundGrid {
  public:
    BackgroundGrid(const Vec<D>& lo, const Vec<D>& side, double h) : lo_(lo), cell_(h / std::sqrt(double(D))) {
        std::size_t total = 1;
        for (int j = 0; j < D; ++j) {
            dims_[j] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(side[j] / cell_)));
            total *= static_cast<std::size_t>(dims_[j]);
        }
        cells_.assign(total, -1);
    }

    void insert(const Vec<D>& p, int id) { cells_[flat(coords(p))] = id; }

    /// True when some accepted sample lies strictly within h of p.
    template <typename PointAt>
    bool has_neighbor_within(const Vec<D>& p, double h2, PointAt&& point_at) const {
        const auto c = coords(p);
        std::array<std::int64_t, D> it{};
        std::array<std::int64_t, D> from{}, to{};
        for (int j = 0; j < D; ++j) {
            from[j] = std::max<std::int64_t>(0, c[j] - 2);
            to[j] = std::min<std::int64_t>(dims_[j] - 1, c[j] + 2);
            it[j] = from[j];
        }
        for (;;) {
            const int id = cells_[flat(it)];
            if (id >= 0 && dist2(point_at(id), p) < h2) return true;
            int j = 0;
            for (; j < D; ++j) {
                if (++it[j] <= to[j]) break;
                it[j] = from[j];
            }
            if (j == D) return false;
        }
    }

  private:
    Vec<D> lo_;
    double cell_;
    std::array<std::int64_t, D> dims_{};
    std::vector<int> cells_;

    std::array<std::int64_t, D> coords(const Vec<D>& p) const {
        std::array<std::int64_t, D> c{};
        for (int j = 0; j < D; ++j) {
            auto i = static_cast<std::int64_t>((p[j] - lo_[j]) / cell_);
            c[j] = std::clamp<std::int64_t>(i, 0, dims_[j] - 1);
        }
        return c;
    }

    std::size_t flat(const std::array<std::int64_t, D>& c) const {
        std::size_t f = 0;
        for (int j = D - 1; j >= 0; --j) f = f * static_cast<std::size_t>(dims_[j]) + static_cast<std::size_t>(c[j]);
        return f;
    }
};

}  // namespace detail

/// Bridson dart throwing inside an oriented box. Samples are generated in
/// the box's rotated frame and rotated back on output. The returned set is
/// maximal (the active list is exhausted), pairwise separation is >= h
/// exactly, and the sequence is deterministic for a fixed seed.
template <int D>
std::vector<Vec<D>> sample_box(const OrientedBox<D>& box, const SamplerConfig& cfg) {
    static_assert(D == 2 || D == 3);
    cfg.validate();
    const double h = cfg.h;
    const double h2 = h * h;

    detail::BackgroundGrid<D> grid(box.lo, box.side, h);
    std::vector<Vec<D>> samples;   // rotated frame
    std::vector<int> active;
    Xoshiro256ss rng(cfg.rng_seed);

    Vec<D> first{};
    for (int j = 0; j < D; ++j) first[j] = box.lo[j] + rng.next_double() * box.side[j];
    samples.push_back(first);
    grid.insert(first, 0);
    active.push_back(0);

    const auto point_at = [&samples](int id) -> const Vec<D>& { return samples[std::size_t(id)]; };
    const auto in_box = [&box](const Vec<D>& p) {
        for (int j = 0; j < D; ++j)
            if (p[j] < box.lo[j] || p[j] > box.hi[j]) return false;
        return true;
    };

    while (!active.empty()) {
        const std::size_t slot = rng.next_index(active.size());
        const int center = active[slot];
        bool any_accepted = false;
        for (int c = 0; c < cfg.k_hat; ++c) {
            const Vec<D> cand = annulus_sample<D>(samples[std::size_t(center)], h, rng);
            if (!in_box(cand)) continue;
            if (grid.has_neighbor_within(cand, h2, point_at)) continue;
            const int id = static_cast<int>(samples.size());
            samples.push_back(cand);
            grid.insert(cand, id);
            active.push_back(id);
            any_accepted = true;
        }
        if (!any_accepted) {
            active[slot] = active.back();
            active.pop_back();
        }
    }

    std::vector<Vec<D>> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) out[i] = box.from_frame(samples[i]);
    return out;
}

}  // namespace nodegen
