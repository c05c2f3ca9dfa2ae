#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace nodegen {

/// Row-major dense matrix of doubles.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    double* row(std::size_t i) { return a_.data() + i * cols_; }
    const double* row(std::size_t i) const { return a_.data() + i * cols_; }

    const std::vector<double>& data() const { return a_; }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

/// Solves A X = B by Gaussian elimination with partial pivoting. A must be
/// square, B must have matching row count; all right-hand sides share one
/// elimination pass. Throws SingularMatrixError when a pivot falls below
/// 1e-14 times the largest initial magnitude of its column.
inline DenseMatrix solve_dense(DenseMatrix a, DenseMatrix b) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw PreconditionError("solve_dense: matrix is not square");
    if (b.rows() != n) throw PreconditionError("solve_dense: right-hand side row count mismatch");

    std::vector<double> col_scale(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) col_scale[j] = std::max(col_scale[j], std::abs(a(i, j)));

    const std::size_t k = b.cols();
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t piv = p;
        double best = std::abs(a(p, p));
        for (std::size_t i = p + 1; i < n; ++i) {
            const double v = std::abs(a(i, p));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= 1e-14 * col_scale[p])
            throw SingularMatrixError("solve_dense: singular pivot in column " + std::to_string(p));
        if (piv != p) {
            std::swap_ranges(a.row(p), a.row(p) + n, a.row(piv));
            std::swap_ranges(b.row(p), b.row(p) + k, b.row(piv));
        }
        const double inv = 1.0 / a(p, p);
        for (std::size_t i = p + 1; i < n; ++i) {
            const double f = a(i, p) * inv;
            if (f == 0.0) continue;
            a(i, p) = 0.0;
            double* ai = a.row(i);
            const double* ap = a.row(p);
            for (std::size_t j = p + 1; j < n; ++j) ai[j] -= f * ap[j];
            double* bi = b.row(i);
            const double* bp = b.row(p);
            for (std::size_t j = 0; j < k; ++j) bi[j] -= f * bp[j];
        }
    }
    // back substitution
    for (std::size_t pi = n; pi-- > 0;) {
        double* bp = b.row(pi);
        const double* ap = a.row(pi);
        for (std::size_t i = pi + 1; i < n; ++i) {
            const double f = ap[i];
            if (f == 0.0) continue;
            const double* bi = b.row(i);
            for (std::size_t j = 0; j < k; ++j) bp[j] -= f * bi[j];
        }
        const double inv = 1.0 / ap[pi];
        for (std::size_t j = 0; j < k; ++j) bp[j] *= inv;
    }
    return b;
}

struct EigResult {
    DenseMatrix vectors;         // orthonormal eigenvector columns
    std::vector<double> values;  // ascending
};

namespace detail {

// Largest-magnitude component of each eigenvector is made positive so the
// decomposition is deterministic.
inline void fix_eigvec_signs(DenseMatrix& v) {
    const std::size_t n = v.rows();
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(v(i, j)) > best) {
                best = std::abs(v(i, j));
                arg = i;
            }
        }
        if (v(arg, j) < 0.0)
            for (std::size_t i = 0; i < n; ++i) v(i, j) = -v(i, j);
    }
}

}  // namespace detail

/// Symmetric eigendecomposition for d in {2,3}: C = V diag(values) V^T with
/// eigenvalues ascending. 2x2 is closed form; 3x3 uses cyclic Jacobi
/// rotations until the off-diagonal norm drops below 1e-13 relative.
inline EigResult sym_eig(const DenseMatrix& c) {
    const std::size_t n = c.rows();
    if (n != c.cols() || (n != 2 && n != 3)) throw PreconditionError("sym_eig: expected a 2x2 or 3x3 matrix");

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(c(i, j)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(c(i, j) - c(j, i)) > 1e-12 * std::max(scale, 1e-300))
                throw PreconditionError("sym_eig: matrix is not symmetric");

    EigResult out;
    out.vectors = DenseMatrix(n, n);
    out.values.assign(n, 0.0);

    if (n == 2) {
        const double a = c(0, 0), b = 0.5 * (c(0, 1) + c(1, 0)), d = c(1, 1);
        const double mid = 0.5 * (a + d);
        const double rad = std::hypot(0.5 * (a - d), b);
        out.values[0] = mid - rad;
        out.values[1] = mid + rad;
        if (rad <= 1e-300 || std::abs(b) == 0.0) {
            // already diagonal: order columns by the diagonal entries
            const bool swap = a > d;
            out.vectors(0, swap ? 1 : 0) = 1.0;
            out.vectors(1, swap ? 0 : 1) = 1.0;
        } else {
            // one eigenvector from the better-conditioned null-space form,
            // the other as its exact perpendicular (keeps V orthonormal even
            // for nearly repeated eigenvalues)
            const double mu = out.values[1];
            double vx = b, vy = mu - a;
            if (std::hypot(mu - d, b) > std::hypot(vx, vy)) {
                vx = mu - d;
                vy = b;
            }
            const double nv = std::hypot(vx, vy);
            vx /= nv;
            vy /= nv;
            out.vectors(0, 1) = vx;
            out.vectors(1, 1) = vy;
            out.vectors(0, 0) = -vy;
            out.vectors(1, 0) = vx;
        }
    } else {
        // cyclic Jacobi on a working copy, accumulating rotations
        double w[3][3], v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) w[i][j] = 0.5 * (c(i, j) + c(j, i));
        double fro = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) fro += w[i][j] * w[i][j];
        fro = std::sqrt(fro);
        const double tol = 1e-13 * std::max(fro, 1e-300);
        for (int sweep = 0; sweep < 64; ++sweep) {
            double off = std::sqrt(w[0][1] * w[0][1] + w[0][2] * w[0][2] + w[1][2] * w[1][2]);
            if (off <= tol) break;
            for (int p = 0; p < 2; ++p) {
                for (int q = p + 1; q < 3; ++q) {
                    if (w[p][q] == 0.0) continue;
                    const double theta = 0.5 * (w[q][q] - w[p][p]) / w[p][q];
                    const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double cs = 1.0 / std::sqrt(t * t + 1.0);
                    const double sn = t * cs;
                    for (int i = 0; i < 3; ++i) {
                        const double wip = w[i][p], wiq = w[i][q];
                        w[i][p] = cs * wip - sn * wiq;
                        w[i][q] = sn * wip + cs * wiq;
                    }
                    for (int i = 0; i < 3; ++i) {
                        const double wpi = w[p][i], wqi = w[q][i];
                        w[p][i] = cs * wpi - sn * wqi;
                        w[q][i] = sn * wpi + cs * wqi;
                    }
                    for (int i = 0; i < 3; ++i) {
                        const double vip = v[i][p], viq = v[i][q];
                        v[i][p] = cs * vip - sn * viq;
                        v[i][q] = sn * vip + cs * viq;
                    }
                }
            }
        }
        int order[3] = {0, 1, 2};
        std::sort(order, order + 3, [&](int x, int y) { return w[x][x] < w[y][y]; });
        for (int j = 0; j < 3; ++j) {
            out.values[j] = w[order[j]][order[j]];
            for (int i = 0; i < 3; ++i) out.vectors(i, j) = v[i][order[j]];
        }
    }
    detail::fix_eigvec_signs(out.vectors);
    return out;
}

}  // namespace nodegen
