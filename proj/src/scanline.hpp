#pragma once

// Horizontal-scanline quadrature over polygon sets. Rows are sampled at cell
// centres; along each row the chamber is an exact union of x-intervals found
// from even-odd edge crossings, so only the y direction is discretised.

#include <functional>
#include <vector>

#include "isoclust/cluster.hpp"
#include "isoclust/kernels.hpp"

namespace isoclust::detail {

class ScanShape {
public:
    ScanShape() = default;
    explicit ScanShape(const std::vector<std::vector<Vec2>>& loops);

    bool empty() const { return edges_.size() == 0; }
    /// Sorted crossing abscissae of the row at height y (even count).
    void crossings(double y, std::vector<double>& xs) const;

private:
    struct Block {
        std::size_t begin;
        std::size_t end;
        double y_min;
        double y_max;
    };
    kernels::ScanEdges edges_;
    std::vector<Block> blocks_;
};

/// Lengths of [lo, hi] covered by none, exactly one, and more than one of
/// the interval sets (each given as sorted crossings, inside between pairs).
struct CoverCounts {
    double none = 0.0;
    double one = 0.0;
    double many = 0.0;
};
CoverCounts cover_counts(const std::vector<const std::vector<double>*>& sets, double lo, double hi,
                         std::vector<std::pair<double, int>>& scratch);

/// Midpoint-in-y rule over the window `region`: sum over rows of h * row(y, x0, x1).
double integrate_rows(const Window& region, int rows,
                      const std::function<double(double y, double x0, double x1)>& row);

struct RefinedValue {
    double value = 0.0;
    double previous = 0.0;
    int level = 0;
    bool converged = false;
};
/// Evaluates estimate(rows) at initial_grid * 2^k rows for k = 0, 1, ... until
/// two successive values differ by less than q.tolerance.
RefinedValue refine(const QuadratureParams& q, const std::function<double(int rows)>& estimate);

}  // namespace isoclust::detail
