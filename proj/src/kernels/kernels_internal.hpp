#pragma once

#include <cmath>

#include "isoclust/vec2.hpp"

namespace isoclust::kernels::detail {

// Shared by both variants so that remainder lanes and degenerate vertices
// agree with the reference path.

inline double crossing_x(double x_lo, double y_lo, double dxdy, double y) {
    const double t = (y - y_lo) * dxdy;
    return x_lo + t;
}

inline void turning_at(Vec2 a, Vec2 b, Vec2 c, double& curvature, Vec2& normal, double& mass) {
    const Vec2 e0 = b - a;
    const Vec2 e1 = c - b;
    const double l0 = std::sqrt(e0.x * e0.x + e0.y * e0.y);
    const double l1 = std::sqrt(e1.x * e1.x + e1.y * e1.y);
    const Vec2 t0 = e0 / l0;
    const Vec2 t1 = e1 / l1;
    const double s = t0.x * t1.y - t0.y * t1.x;
    const double c1 = 1.0 + (t0.x * t1.x + t0.y * t1.y);
    const Vec2 bis = t0 + t1;
    const double bl = std::sqrt(bis.x * bis.x + bis.y * bis.y);
    mass = 0.5 * (l0 + l1);
    if (c1 < 1e-12 || bl < 1e-12) {
        // cusp: the polyline doubles back on itself
        curvature = (s < 0.0 ? -M_PI : M_PI) / mass;
        normal = perp(t0);
        return;
    }
    curvature = 2.0 * std::atan(s / c1) / mass;
    normal = Vec2{-bis.y / bl, bis.x / bl};
}

}  // namespace isoclust::kernels::detail
