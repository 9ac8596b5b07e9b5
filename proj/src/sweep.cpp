#include "isoclust/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "isoclust/errors.hpp"

namespace isoclust {

LabelPairing double_bubble_to_lens_pairing() { return {{"D1", "E1"}, {"D2", "F1"}, {"D3", "F2"}}; }

SweepRow sweep_row(double A, double window_r, int resolution, const QuadratureParams& q) {
    if (!(window_r >= 2.0)) throw DomainError("sweep: the window radius must be at least 2");
    const Window w = Window::disk(window_r);
    const Window b2 = Window::disk(2.0);
    const DoubleBubbleGeometry g = solve_double_bubble(A);
    const DiscreteCluster d = build_double_bubble(g, w, resolution);
    const DiscreteCluster lens = build_standard_lens(w, resolution);

    SweepRow row;
    row.A = A;
    row.r1 = g.r1;
    row.theta0 = g.theta0;
    row.theta1 = g.theta1;
    if (const auto gap = limit_gap(g)) {
        row.r0 = *g.r0;
        row.gap_r0 = gap->dr0;
        row.gap_r1 = gap->dr1;
        row.gap_theta0 = gap->dtheta0;
        row.gap_theta1 = gap->dtheta1;
    } else {
        const double inf = std::numeric_limits<double>::infinity();
        const double R = standard_lens_radius();
        row.r0 = inf;
        row.gap_r0 = inf;
        row.gap_r1 = std::fabs(g.r1 - R);
        row.gap_theta0 = std::fabs(g.theta0 - M_PI / 3);
        row.gap_theta1 = std::fabs(g.theta1 - M_PI / 3);
    }
    row.distance_B2 = cluster_distance(d, lens, b2, q, double_bubble_to_lens_pairing()).value;
    row.perimeter_B2 = relative_perimeter(d, b2);
    return row;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = kSweepHeader;
    out += '\n';
    char buf[32];
    auto put = [&](double v, char sep) {
        if (std::isinf(v))
            out += v > 0 ? "inf" : "-inf";
        else {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
        }
        out += sep;
    };
    for (const SweepRow& r : rows) {
        put(r.A, ',');
        put(r.r0, ',');
        put(r.r1, ',');
        put(r.theta0, ',');
        put(r.theta1, ',');
        put(r.gap_r0, ',');
        put(r.gap_r1, ',');
        put(r.gap_theta0, ',');
        put(r.gap_theta1, ',');
        put(r.distance_B2, ',');
        put(r.perimeter_B2, '\n');
    }
    return out;
}

}  // namespace isoclust
