#pragma once

#include <cmath>
#include <vector>

#include "isoclust/cluster.hpp"

namespace fixtures {

using isoclust::Vec2;

/// Standard lens shifted by (dx, 0); rays stay on the axis and keep their anchors.
inline isoclust::DiscreteCluster shifted_lens(const isoclust::Window& w, int resolution, double dx) {
    isoclust::DiscreteCluster c = isoclust::build_standard_lens(w, resolution);
    for (auto& node : c.nodes)
        if (node.kind == isoclust::NodeKind::triple_junction) node.position.x += dx;
    for (auto& f : c.interfaces) {
        if (f.id == "upper" || f.id == "lower") {
            for (auto& p : f.points) p.x += dx;
        } else {
            const Vec2 a = c.find_node(f.end_nodes[0])->position;
            const Vec2 b = c.find_node(f.end_nodes[1])->position;
            f.points = isoclust::straight_polyline(a, b, static_cast<int>(f.points.size()) - 1);
        }
    }
    return c;
}

/// Closed counterclockwise loop of the lens of radius s centred at `at`.
inline std::vector<Vec2> lens_loop(double s, Vec2 at, int resolution) {
    const double a = 0.5 * std::sqrt(3.0) * s;
    auto upper = isoclust::circular_arc(at + Vec2{a, 0}, at + Vec2{-a, 0}, M_PI / 3, resolution);
    auto lower = isoclust::circular_arc(at + Vec2{-a, 0}, at + Vec2{a, 0}, M_PI / 3, resolution);
    std::vector<Vec2> loop(upper.begin(), upper.end() - 1);
    loop.insert(loop.end(), lower.begin(), lower.end() - 1);
    return loop;
}

/// Exact membership in the lens of radius s centred at `at`.
inline bool in_lens(Vec2 p, double s, Vec2 at) {
    const Vec2 d = p - at;
    return std::hypot(d.x, d.y - s / 2) <= s && std::hypot(d.x, d.y + s / 2) <= s;
}

/// Area of {p in box : pred(p)} by midpoint sampling on an n x n grid.
template <class Pred>
double grid_area(Vec2 lo, Vec2 hi, int n, Pred pred) {
    const double hx = (hi.x - lo.x) / n, hy = (hi.y - lo.y) / n;
    long count = 0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) count += pred(Vec2{lo.x + (i + 0.5) * hx, lo.y + (j + 0.5) * hy});
    return count * hx * hy;
}

}  // namespace fixtures
