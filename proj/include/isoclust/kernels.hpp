#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference implementation
// and, on x86-64, an AVX2 variant; the variant is chosen once at runtime from
// CPUID. ISOCLUST_KERNELS=scalar in the environment forces the reference path.

#include <cstddef>
#include <span>
#include <vector>

#include "isoclust/vec2.hpp"

namespace isoclust::kernels {

/// Edges of a polygon set prepared for horizontal scanlines. Every edge is
/// stored with y_lo < y_hi (horizontal edges are dropped); it crosses the row
/// at height y iff y_lo <= y < y_hi, at x = x_lo + (y - y_lo) * dxdy.
struct ScanEdges {
    std::vector<double> y_lo;
    std::vector<double> y_hi;
    std::vector<double> x_lo;
    std::vector<double> dxdy;

    std::size_t size() const { return y_lo.size(); }
    void add(Vec2 a, Vec2 b);
};

struct KernelTable {
    const char* name;
    /// Sum of segment lengths of an open polyline of n points.
    double (*polyline_length)(const Vec2* pts, std::size_t n);
    /// Shoelace area of the closed loop p0..p(n-1); positive when counterclockwise.
    double (*signed_area)(const Vec2* pts, std::size_t n);
    /// For each interior vertex i in [1, n-2] writes, at index i-1: the signed
    /// discrete curvature (turning angle over mean adjacent segment length,
    /// positive for a left turn), the unit left normal along the angle bisector,
    /// and the mean adjacent segment length.
    void (*turning)(const Vec2* pts, std::size_t n, double* curvature, Vec2* normal, double* mass);
    /// Appends the x coordinates of every edge crossing the row at height y to
    /// out (unsorted, in edge order) and returns the count.
    std::size_t (*row_crossings)(const double* y_lo, const double* y_hi, const double* x_lo,
                                 const double* dxdy, std::size_t n, double y, double* out);
};

const KernelTable& scalar_table();
/// nullptr when the binary or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();
/// The table selected for this process.
const KernelTable& active();

inline double polyline_length(std::span<const Vec2> pts) {
    return active().polyline_length(pts.data(), pts.size());
}
inline double signed_area(std::span<const Vec2> loop) {
    return active().signed_area(loop.data(), loop.size());
}

}  // namespace isoclust::kernels
