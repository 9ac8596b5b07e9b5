#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace isoclust::detail {

/// Gaussian elimination with partial pivoting; a is n x n, b is overwritten
/// with the solution. Returns false when a pivot vanishes relative to the
/// largest entry.
inline bool solve_dense(std::vector<std::vector<double>> a, std::vector<double>& b) {
    const std::size_t n = b.size();
    double scale = 0.0;
    for (const auto& row : a)
        for (double v : row) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) return n == 0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) <= 1e-14 * scale) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= m * a[col][c];
            b[r] -= m * b[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * b[c];
        b[i] = s / a[i][i];
    }
    return true;
}

}  // namespace isoclust::detail
