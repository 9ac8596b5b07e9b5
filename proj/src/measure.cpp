#include "isoclust/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "isoclust/errors.hpp"
#include "isoclust/kernels.hpp"
#include "scanline.hpp"

namespace isoclust {

namespace {

double clipped_polyline(const Window& sub, const Interface& f) {
    const std::size_t n = f.points.size();
    const std::size_t segs = f.closed() ? n : n - 1;
    double sum = 0.0;
    for (std::size_t i = 0; i < segs; ++i) sum += sub.clipped_length(f.points[i], f.points[(i + 1) % n]);
    return sum;
}

void require_inside(const Window& outer, const Window& sub) {
    if (!outer.contains(sub, 1e-12 * std::max(1.0, outer.boundary_length())))
        throw DomainError("measuring window exceeds the cluster window");
}

}  // namespace

double chamber_area(const DiscreteCluster& c, const std::string& label) {
    double area = 0.0;
    for (const auto& loop : chamber_polygon(c, label)) area += kernels::signed_area(loop);
    return area;
}

double relative_perimeter(const DiscreteCluster& c, const Window& sub) {
    require_inside(c.window, sub);
    double sum = 0.0;
    for (const Interface& f : c.interfaces) sum += clipped_polyline(sub, f);
    return sum;
}

double perimeter_halving_check(const DiscreteCluster& c, const Window& sub) {
    const double total = relative_perimeter(c, sub);
    double chambers = 0.0;
    for (const ChamberSpec& ch : c.chambers) {
        for (const Interface& f : c.interfaces) {
            const bool on_left = f.left == ch.label;
            const bool on_right = f.right == ch.label;
            if (on_left != on_right) chambers += clipped_polyline(sub, f);
        }
    }
    return std::fabs(total - 0.5 * chambers);
}

LabelPairing identity_pairing(const DiscreteCluster& c) {
    LabelPairing p;
    for (const auto& ch : c.chambers) p.emplace_back(ch.label, ch.label);
    return p;
}

DistanceResult cluster_distance(const DiscreteCluster& a, const DiscreteCluster& b, const Window& sub,
                                const QuadratureParams& q, const LabelPairing& pairing) {
    q.check();
    require_inside(a.window, sub);
    require_inside(b.window, sub);
    if (pairing.size() != a.chambers.size() || pairing.size() != b.chambers.size())
        throw DomainError("pairing must match every chamber of both clusters");
    std::set<std::string> seen_a, seen_b;
    for (const auto& [la, lb] : pairing) {
        if (!a.find_chamber(la) || !b.find_chamber(lb)) throw DomainError("pairing names an unknown chamber");
        if (!seen_a.insert(la).second || !seen_b.insert(lb).second) throw DomainError("pairing is not a bijection");
    }

    std::vector<detail::ScanShape> sa, sb;
    for (const auto& [la, lb] : pairing) {
        sa.emplace_back(chamber_polygon(a, la));
        sb.emplace_back(chamber_polygon(b, lb));
    }
    std::vector<double> xa, xb;
    std::vector<std::pair<double, int>> scratch;
    const std::vector<const std::vector<double>*> sets{&xa, &xb};
    auto estimate = [&](int rows) {
        return detail::integrate_rows(sub, rows, [&](double y, double x0, double x1) {
            double sum = 0.0;
            for (std::size_t k = 0; k < sa.size(); ++k) {
                sa[k].crossings(y, xa);
                sb[k].crossings(y, xb);
                sum += detail::cover_counts(sets, x0, x1, scratch).one;
            }
            return sum;
        });
    };
    const detail::RefinedValue r = detail::refine(q, estimate);
    if (!r.converged) throw ConvergenceError("cluster distance did not settle within the refinement budget", r.previous, r.value);
    return {r.value, r.previous, r.level};
}

double hausdorff_distance(const std::vector<std::vector<Vec2>>& a, const std::vector<std::vector<Vec2>>& b) {
    auto one_way = [](const std::vector<std::vector<Vec2>>& from, const std::vector<std::vector<Vec2>>& to) {
        double worst = 0.0;
        for (const auto& line : from)
            for (Vec2 p : line) {
                double best = std::numeric_limits<double>::infinity();
                for (const auto& other : to) {
                    if (other.size() == 1) best = std::min(best, distance(p, other[0]));
                    for (std::size_t i = 0; i + 1 < other.size(); ++i)
                        best = std::min(best, point_segment_distance(p, other[i], other[i + 1]));
                }
                worst = std::max(worst, best);
            }
        return worst;
    };
    return std::max(one_way(a, b), one_way(b, a));
}

double interface_hausdorff(const DiscreteCluster& a, const DiscreteCluster& b) {
    auto lines = [](const DiscreteCluster& c) {
        std::vector<std::vector<Vec2>> out;
        for (const Interface& f : c.interfaces) {
            out.push_back(f.points);
            if (f.closed()) out.back().push_back(f.points.front());
        }
        return out;
    };
    return hausdorff_distance(lines(a), lines(b));
}

}  // namespace isoclust
