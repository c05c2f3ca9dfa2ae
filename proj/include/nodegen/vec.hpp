#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace nodegen {

template <std::size_t D>
using Vec = std::array<double, D>;

template <std::size_t D>
constexpr Vec<D> operator+(const Vec<D>& a, const Vec<D>& b) {
    Vec<D> r{};
    for (std::size_t i = 0; i < D; ++i) r[i] = a[i] + b[i];
    return r;
}

template <std::size_t D>
constexpr Vec<D> operator-(const Vec<D>& a, const Vec<D>& b) {
    Vec<D> r{};
    for (std::size_t i = 0; i < D; ++i) r[i] = a[i] - b[i];
    return r;
}

template <std::size_t D>
constexpr Vec<D> operator*(double s, const Vec<D>& a) {
    Vec<D> r{};
    for (std::size_t i = 0; i < D; ++i) r[i] = s * a[i];
    return r;
}

template <std::size_t D>
constexpr double dot(const Vec<D>& a, const Vec<D>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < D; ++i) s += a[i] * b[i];
    return s;
}

template <std::size_t D>
constexpr double dist2(const Vec<D>& a, const Vec<D>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < D; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

template <std::size_t D>
inline double norm(const Vec<D>& a) {
    return std::sqrt(dot(a, a));
}

template <std::size_t D>
inline double dist(const Vec<D>& a, const Vec<D>& b) {
    return std::sqrt(dist2(a, b));
}

inline Vec<3> cross(const Vec<3>& a, const Vec<3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <std::size_t D>
inline bool all_finite(const Vec<D>& a) {
    for (std::size_t i = 0; i < D; ++i)
        if (!std::isfinite(a[i])) return false;
    return true;
}

}  // namespace nodegen
