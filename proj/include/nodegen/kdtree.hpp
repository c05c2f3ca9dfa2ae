#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "errors.hpp"
#include "vec.hpp"

namespace nodegen {

/// kd-tree over D-dimensional points with stable integer ids (insertion
/// order). Construction uses median splits on the widest-spread axis.
/// Queries return exactly the brute-force answer set; nearest-neighbor ties
/// break toward the smaller id.
template <int D>
class KdTree {
  public:
    struct Hit {
        int id = -1;
        double distance = std::numeric_limits<double>::infinity();
    };

    KdTree() = default;

    explicit KdTree(std::vector<Vec<D>> points) : pts_(std::move(points)) { rebuild(); }

    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const Vec<D>& point(int id) const { return pts_[static_cast<std::size_t>(id)]; }
    const std::vector<Vec<D>>& points() const { return pts_; }

    /// Appends points with fresh ids. Rebuilds the whole tree once the
    /// points inserted since the last build exceed 25% of its size;
    /// otherwise they are threaded into existing leaves.
    void insert_batch(std::span<const Vec<D>> points) {
        if (points.empty()) return;
        const std::size_t first = pts_.size();
        pts_.insert(pts_.end(), points.begin(), points.end());
        pending_ += points.size();
        if (built_ == 0 || pending_ * 4 > built_) {
            rebuild();
        } else {
            for (std::size_t id = first; id < pts_.size(); ++id) insert_one(static_cast<int>(id));
        }
    }

    /// Closest stored point to q (ties by smallest id). Throws on empty.
    Hit nearest(const Vec<D>& q) const { return nearest_impl(q, -1); }

    /// Closest stored point to q excluding the point with id `skip`.
    Hit nearest_excluding(const Vec<D>& q, int skip) const {
        if (pts_.size() < 2) throw PreconditionError("KdTree::nearest_excluding: need at least two points");
        return nearest_impl(q, skip);
    }

    /// Ids of all points within closed distance r of q, ascending.
    std::vector<int> within_radius(const Vec<D>& q, double r) const {
        if (r < 0.0) throw PreconditionError("KdTree::within_radius: negative radius");
        std::vector<int> out;
        if (root_ >= 0) radius_rec(root_, q, r * r, out);
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    struct Node {
        int point = -1;
        int axis = 0;
        int left = -1, right = -1;
    };

    std::vector<Vec<D>> pts_;
    std::vector<Node> nodes_;
    int root_ = -1;
    std::size_t built_ = 0;    // size at last full build
    std::size_t pending_ = 0;  // inserted since last full build

    void rebuild() {
        nodes_.clear();
        nodes_.reserve(pts_.size());
        std::vector<int> ids(pts_.size());
        std::iota(ids.begin(), ids.end(), 0);
        root_ = build_range(ids.data(), ids.data() + ids.size());
        built_ = pts_.size();
        pending_ = 0;
    }

    int build_range(int* first, int* last) {
        if (first == last) return -1;
        // split axis: widest coordinate spread over the range
        Vec<D> lo = pts_[*first], hi = pts_[*first];
        for (int* it = first; it != last; ++it)
            for (int a = 0; a < D; ++a) {
                lo[a] = std::min(lo[a], pts_[*it][a]);
                hi[a] = std::max(hi[a], pts_[*it][a]);
            }
        int axis = 0;
        for (int a = 1; a < D; ++a)
            if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;

        int* mid = first + (last - first) / 2;
        std::nth_element(first, mid, last, [&](int x, int y) {
            if (pts_[x][axis] != pts_[y][axis]) return pts_[x][axis] < pts_[y][axis];
            return x < y;
        });
        Node n;
        n.point = *mid;
        n.axis = axis;
        const int self = static_cast<int>(nodes_.size());
        nodes_.push_back(n);
        const int l = build_range(first, mid);
        const int r = build_range(mid + 1, last);
        nodes_[self].left = l;
        nodes_[self].right = r;
        return self;
    }

    void insert_one(int id) {
        Node fresh;
        fresh.point = id;
        if (root_ < 0) {
            fresh.axis = 0;
            root_ = 0;
            nodes_.push_back(fresh);
            return;
        }
        int cur = root_;
        for (;;) {
            Node& n = nodes_[cur];
            const int a = n.axis;
            int& child = (pts_[id][a] < pts_[n.point][a]) ? n.left : n.right;
            if (child < 0) {
                fresh.axis = (a + 1) % D;
                child = static_cast<int>(nodes_.size());
                nodes_.push_back(fresh);
                return;
            }
            cur = child;
        }
    }

    Hit nearest_impl(const Vec<D>& q, int skip) const {
        if (root_ < 0) throw PreconditionError("KdTree::nearest: empty index");
        Hit best;
        double best2 = std::numeric_limits<double>::infinity();
        nearest_rec(root_, q, skip, best, best2);
        best.distance = std::sqrt(best2);
        return best;
    }

    void nearest_rec(int ni, const Vec<D>& q, int skip, Hit& best, double& best2) const {
        const Node& n = nodes_[ni];
        if (n.point != skip) {
            const double d2 = dist2(q, pts_[n.point]);
            if (d2 < best2 || (d2 == best2 && n.point < best.id)) {
                best2 = d2;
                best.id = n.point;
            }
        }
        const double diff = q[n.axis] - pts_[n.point][n.axis];
        const int near = diff < 0.0 ? n.left : n.right;
        const int far = diff < 0.0 ? n.right : n.left;
        if (near >= 0) nearest_rec(near, q, skip, best, best2);
        if (far >= 0 && diff * diff <= best2) nearest_rec(far, q, skip, best, best2);
    }

    void radius_rec(int ni, const Vec<D>& q, double r2, std::vector<int>& out) const {
        const Node& n = nodes_[ni];
        if (dist2(q, pts_[n.point]) <= r2) out.push_back(n.point);
        const double diff = q[n.axis] - pts_[n.point][n.axis];
        const int near = diff < 0.0 ? n.left : n.right;
        const int far = diff < 0.0 ? n.right : n.left;
        if (near >= 0) radius_rec(near, q, r2, out);
        if (far >= 0 && diff * diff <= r2) radius_rec(far, q, r2, out);
    }
};

}  // namespace nodegen
