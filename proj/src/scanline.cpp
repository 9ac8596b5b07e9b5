#include "scanline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isoclust::detail {

namespace {
constexpr std::size_t kBlock = 32;
}

ScanShape::ScanShape(const std::vector<std::vector<Vec2>>& loops) {
    kernels::ScanEdges raw;
    for (const auto& loop : loops) {
        const std::size_t n = loop.size();
        for (std::size_t i = 0; i < n; ++i) raw.add(loop[i], loop[(i + 1) % n]);
    }
    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return raw.y_lo[a] < raw.y_lo[b]; });
    for (std::size_t k : order) {
        edges_.y_lo.push_back(raw.y_lo[k]);
        edges_.y_hi.push_back(raw.y_hi[k]);
        edges_.x_lo.push_back(raw.x_lo[k]);
        edges_.dxdy.push_back(raw.dxdy[k]);
    }
    for (std::size_t b = 0; b < edges_.size(); b += kBlock) {
        const std::size_t e = std::min(edges_.size(), b + kBlock);
        Block blk{b, e, edges_.y_lo[b], edges_.y_hi[b]};
        for (std::size_t i = b; i < e; ++i) blk.y_max = std::max(blk.y_max, edges_.y_hi[i]);
        blocks_.push_back(blk);
    }
}

void ScanShape::crossings(double y, std::vector<double>& xs) const {
    xs.resize(edges_.size());
    std::size_t count = 0;
    const auto& k = kernels::active();
    for (const Block& b : blocks_) {
        if (b.y_min > y) break;  // blocks are sorted by y_lo
        if (b.y_max <= y) continue;
        count += k.row_crossings(edges_.y_lo.data() + b.begin, edges_.y_hi.data() + b.begin,
                                 edges_.x_lo.data() + b.begin, edges_.dxdy.data() + b.begin, b.end - b.begin, y,
                                 xs.data() + count);
    }
    xs.resize(count);
    std::sort(xs.begin(), xs.end());
    if (xs.size() % 2 != 0) xs.pop_back();
}

CoverCounts cover_counts(const std::vector<const std::vector<double>*>& sets, double lo, double hi,
                         std::vector<std::pair<double, int>>& scratch) {
    CoverCounts out;
    if (!(hi > lo)) return out;
    scratch.clear();
    for (const auto* s : sets)
        for (std::size_t i = 0; i + 1 < s->size(); i += 2) {
            scratch.emplace_back((*s)[i], +1);
            scratch.emplace_back((*s)[i + 1], -1);
        }
    std::sort(scratch.begin(), scratch.end());
    int depth = 0;
    double x = lo;
    auto credit = [&](double to) {
        const double a = std::max(x, lo);
        const double b = std::min(to, hi);
        if (b > a) {
            if (depth == 0)
                out.none += b - a;
            else if (depth == 1)
                out.one += b - a;
            else
                out.many += b - a;
        }
    };
    for (const auto& [pos, delta] : scratch) {
        credit(pos);
        x = std::max(x, pos);
        depth += delta;
    }
    credit(hi);
    return out;
}

double integrate_rows(const Window& region, int rows,
                      const std::function<double(double y, double x0, double x1)>& row) {
    const auto [lo, hi] = region.bounds();
    const double h = (hi.y - lo.y) / rows;
    double sum = 0.0;
    for (int j = 0; j < rows; ++j) {
        const double y = lo.y + (j + 0.5) * h;
        const auto span = region.row_span(y);
        if (!span) continue;
        sum += row(y, span->first, span->second);
    }
    return sum * h;
}

RefinedValue refine(const QuadratureParams& q, const std::function<double(int rows)>& estimate) {
    RefinedValue r;
    int rows = q.initial_grid;
    r.value = estimate(rows);
    r.previous = r.value;
    for (int level = 1; level <= q.max_refinements; ++level) {
        rows *= 2;
        r.previous = r.value;
        r.value = estimate(rows);
        r.level = level;
        if (std::fabs(r.value - r.previous) < q.tolerance) {
            r.converged = true;
            return r;
        }
    }
    return r;
}

}  // namespace isoclust::detail
