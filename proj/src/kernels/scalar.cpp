#include <cmath>

#include "isoclust/kernels.hpp"
#include "kernels_internal.hpp"

namespace isoclust::kernels {

namespace {

double polyline_length_scalar(const Vec2* p, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dx = p[i + 1].x - p[i].x;
        const double dy = p[i + 1].y - p[i].y;
        sum += std::sqrt(dx * dx + dy * dy);
    }
    return sum;
}

double signed_area_scalar(const Vec2* p, std::size_t n) {
    if (n < 3) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) sum += p[i].x * p[i + 1].y - p[i].y * p[i + 1].x;
    sum += p[n - 1].x * p[0].y - p[n - 1].y * p[0].x;
    return 0.5 * sum;
}

void turning_scalar(const Vec2* p, std::size_t n, double* curvature, Vec2* normal, double* mass) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
        detail::turning_at(p[i - 1], p[i], p[i + 1], curvature[i - 1], normal[i - 1], mass[i - 1]);
    }
}

std::size_t row_crossings_scalar(const double* y_lo, const double* y_hi, const double* x_lo,
                                 const double* dxdy, std::size_t n, double y, double* out) {
    std::size_t count = 0;
    for (std::size_t e = 0; e < n; ++e) {
        if (y_lo[e] <= y && y < y_hi[e]) out[count++] = detail::crossing_x(x_lo[e], y_lo[e], dxdy[e], y);
    }
    return count;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar", polyline_length_scalar, signed_area_scalar, turning_scalar,
                                   row_crossings_scalar};
    return table;
}

void ScanEdges::add(Vec2 a, Vec2 b) {
    if (a.y == b.y) return;
    if (a.y > b.y) std::swap(a, b);
    y_lo.push_back(a.y);
    y_hi.push_back(b.y);
    x_lo.push_back(a.x);
    dxdy.push_back((b.x - a.x) / (b.y - a.y));
}

}  // namespace isoclust::kernels
