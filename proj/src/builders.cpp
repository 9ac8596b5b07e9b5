#include <algorithm>
#include <cmath>
#include <numbers>

#include "isoclust/cluster.hpp"
#include "isoclust/errors.hpp"
#include "isoclust/kernels.hpp"

namespace isoclust {

namespace {

constexpr double kPi = std::numbers::pi;

void require_centred(const Window& w) {
    if (!(w.center() == Vec2{})) throw DomainError("cluster windows must be centred at the origin");
}

void require_resolution(int resolution) {
    if (resolution < 8) throw DomainError("resolution must be at least 8");
}

/// Point where the ray from `origin` along `dir` leaves the window.
Vec2 ray_exit(const Window& w, Vec2 origin, Vec2 dir) {
    const auto [lo, hi] = w.bounds();
    double far = 2.0 * norm(hi - lo) + norm(origin - w.center());
    double a = 0.0, b = far;
    for (int i = 0; i < 200 && b - a > 0.0; ++i) {
        const double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        (w.inset(origin + dir * m) > 0.0 ? a : b) = m;
    }
    Vec2 p = origin + dir * b;
    // snap exactly onto a disk boundary when possible
    if (w.is_disk()) {
        const Vec2 d = p - w.center();
        p = w.center() + d * (w.radius() / norm(d));
    }
    return p;
}

int segments_for(double length, double spacing) {
    return std::max(1, static_cast<int>(std::ceil(length / spacing - 1e-9)));
}

/// Counterclockwise (phi1 > phi0) or clockwise arc about `center`.
std::vector<Vec2> arc_about(Vec2 center, double r, double phi0, double phi1, int n, Vec2 from, Vec2 to) {
    std::vector<Vec2> pts(static_cast<std::size_t>(n) + 1);
    pts.front() = from;
    pts.back() = to;
    for (int i = 1; i < n; ++i) {
        const double phi = phi0 + (phi1 - phi0) * (static_cast<double>(i) / n);
        pts[i] = center + Vec2{r * std::cos(phi), r * std::sin(phi)};
    }
    return pts;
}

double polygon_min_inset(const Window& w, const std::vector<Vec2>& pts) {
    double m = std::numeric_limits<double>::infinity();
    for (Vec2 p : pts) m = std::min(m, w.inset(p));
    return m;
}

void append_loop(std::vector<Vec2>& loop, const std::vector<Vec2>& piece) {
    loop.insert(loop.end(), piece.begin(), piece.end() - 1);
}

Interface make_interface(std::string id, std::string left, std::string right, std::vector<Vec2> pts,
                         std::string from, std::string to) {
    return Interface{std::move(id), std::move(left), std::move(right), std::move(pts), {std::move(from), std::move(to)}};
}

}  // namespace

std::vector<Vec2> circular_arc(Vec2 from, Vec2 to, double half_angle, int segments) {
    if (segments < 1) throw DomainError("arc needs at least one segment");
    if (from == to) throw DomainError("arc endpoints coincide");
    if (!(std::fabs(half_angle) < kPi)) throw DomainError("arc half angle must lie in (-pi, pi)");
    if (half_angle == 0.0) return straight_polyline(from, to, segments);
    const Vec2 d = to - from;
    const double ch = 0.5 * norm(d);
    const Vec2 u = d / (2.0 * ch);
    const double r = ch / std::sin(std::fabs(half_angle));
    const Vec2 center = (from + to) * 0.5 + perp(u) * (ch / std::tan(half_angle));
    const Vec2 a = from - center;
    const double phi0 = std::atan2(a.y, a.x);
    return arc_about(center, r, phi0, phi0 + 2.0 * half_angle, segments, from, to);
}

std::vector<Vec2> straight_polyline(Vec2 a, Vec2 b, int segments) {
    if (segments < 1) throw DomainError("polyline needs at least one segment");
    std::vector<Vec2> pts(static_cast<std::size_t>(segments) + 1);
    pts.front() = a;
    pts.back() = b;
    for (int i = 1; i < segments; ++i) {
        const double t = static_cast<double>(i) / segments;
        pts[i] = a + (b - a) * t;
    }
    return pts;
}

DiscreteCluster build_lens(const Window& w, double radius, int resolution) {
    require_centred(w);
    require_resolution(resolution);
    const LensGeometry g = lens_from_radius(radius);
    std::vector<Vec2> upper = circular_arc(g.junction_right, g.junction_left, kPi / 3.0, resolution);
    std::vector<Vec2> lower = circular_arc(g.junction_left, g.junction_right, kPi / 3.0, resolution);
    if (!(polygon_min_inset(w, upper) > kGeometricTolerance) || !(polygon_min_inset(w, lower) > kGeometricTolerance))
        throw DomainError("window does not strictly contain the lens");

    const Vec2 anchor_left = ray_exit(w, {}, {-1.0, 0.0});
    const Vec2 anchor_right = ray_exit(w, {}, {1.0, 0.0});
    const double spacing = g.arc_angle * radius / resolution;

    DiscreteCluster c;
    c.window = w;
    c.chambers = {ChamberSpec::make_proper("E1", g.area), ChamberSpec::make_improper("F1"),
                  ChamberSpec::make_improper("F2")};
    c.nodes = {{"JL", g.junction_left, NodeKind::triple_junction},
               {"JR", g.junction_right, NodeKind::triple_junction},
               {"AL", anchor_left, NodeKind::window_anchor},
               {"AR", anchor_right, NodeKind::window_anchor}};
    const int n_left = segments_for(distance(anchor_left, g.junction_left), spacing);
    const int n_right = segments_for(distance(anchor_right, g.junction_right), spacing);
    c.interfaces.push_back(make_interface("upper", "E1", "F1", std::move(upper), "JR", "JL"));
    c.interfaces.push_back(make_interface("lower", "E1", "F2", std::move(lower), "JL", "JR"));
    c.interfaces.push_back(
        make_interface("ray_left", "F1", "F2", straight_polyline(anchor_left, g.junction_left, n_left), "AL", "JL"));
    c.interfaces.push_back(make_interface("ray_right", "F1", "F2",
                                          straight_polyline(g.junction_right, anchor_right, n_right), "JR", "AR"));
    return c;
}

DiscreteCluster build_standard_lens(const Window& w, int resolution) {
    DiscreteCluster c = build_lens(w, standard_lens_radius(), resolution);
    c.chambers[0].target_area = 1.0;
    return c;
}

namespace {

struct C2Trace {
    double phi_qr = 0.0;  ///< angle of QR about the C2 centre
    double phi_ql = 0.0;  ///< angle of QL, unwrapped so phi_ql > phi_qr
    bool clipped = false;
    double phi_exit = 0.0;   ///< first window crossing going counterclockwise from QR
    double phi_entry = 0.0;  ///< last crossing before QL
};

C2Trace trace_c2(const DoubleBubbleGeometry& g, const Window& w) {
    C2Trace t;
    const Vec2 c2 = g.center2;
    const Vec2 ql = g.junctions[0], qr = g.junctions[1];
    t.phi_qr = std::atan2(qr.y - c2.y, qr.x - c2.x);
    t.phi_ql = std::atan2(ql.y - c2.y, ql.x - c2.x);
    while (t.phi_ql <= t.phi_qr) t.phi_ql += 2.0 * kPi;
    auto point = [&](double phi) { return c2 + Vec2{g.r2 * std::cos(phi), g.r2 * std::sin(phi)}; };
    const int samples = 1 << 15;
    const double dphi = (t.phi_ql - t.phi_qr) / samples;
    int transitions = 0;
    bool inside = true;
    auto bisect = [&](double a, double b) {
        // a inside, b outside
        for (int i = 0; i < 200; ++i) {
            const double m = 0.5 * (a + b);
            if (m == a || m == b) break;
            (w.inset(point(m)) > 0.0 ? a : b) = m;
        }
        return b;
    };
    for (int i = 1; i < samples; ++i) {
        const double phi = t.phi_qr + i * dphi;
        const bool in = w.inset(point(phi)) > 0.0;
        if (in == inside) continue;
        ++transitions;
        if (!in) {
            t.phi_exit = bisect(phi - dphi, phi);
        } else {
            t.phi_entry = bisect(phi, phi - dphi);
        }
        inside = in;
    }
    if (!inside || (transitions != 0 && transitions != 2))
        throw DomainError("outer arc of the second chamber crosses the window more than twice");
    t.clipped = transitions == 2;
    return t;
}

}  // namespace

bool double_bubble_clipped(const DoubleBubbleGeometry& g, const Window& w) {
    require_centred(w);
    return trace_c2(g, w).clipped;
}

DiscreteCluster build_double_bubble(const DoubleBubbleGeometry& g, const Window& w, int resolution) {
    require_centred(w);
    require_resolution(resolution);
    const Vec2 ql = g.junctions[0], qr = g.junctions[1];
    if (!(w.inset(ql) > kGeometricTolerance) || !(w.inset(qr) > kGeometricTolerance))
        throw DomainError("window does not contain the double-bubble junctions");

    std::vector<Vec2> c0 = g.flat_middle() ? straight_polyline(qr, ql, resolution)
                                           : circular_arc(qr, ql, g.theta0, resolution);
    std::vector<Vec2> c1 = circular_arc(ql, qr, g.theta1, resolution);
    if (!(polygon_min_inset(w, c0) > kGeometricTolerance) || !(polygon_min_inset(w, c1) > kGeometricTolerance))
        throw DomainError("window does not contain the unit-area chamber");

    const C2Trace t = trace_c2(g, w);
    const double spacing = 2.0 * std::fabs(g.theta1) * g.r1 / resolution;
    const Vec2 c2 = g.center2;
    auto point = [&](double phi) { return c2 + Vec2{g.r2 * std::cos(phi), g.r2 * std::sin(phi)}; };

    DiscreteCluster c;
    c.window = w;
    c.chambers = {ChamberSpec::make_proper("D1", 1.0),
                  t.clipped ? ChamberSpec::make_improper("D2") : ChamberSpec::make_proper("D2", g.area_A),
                  ChamberSpec::make_improper("D3")};
    c.nodes = {{"QL", ql, NodeKind::triple_junction}, {"QR", qr, NodeKind::triple_junction}};
    c.interfaces.push_back(make_interface("C0", "D1", "D2", std::move(c0), "QR", "QL"));
    c.interfaces.push_back(make_interface("C1", "D1", "D3", std::move(c1), "QL", "QR"));
    if (!t.clipped) {
        const int n = segments_for(g.r2 * (t.phi_ql - t.phi_qr), spacing);
        c.interfaces.push_back(make_interface("C2", "D2", "D3", arc_about(c2, g.r2, t.phi_qr, t.phi_ql, n, qr, ql),
                                              "QR", "QL"));
        return c;
    }
    Vec2 wr = point(t.phi_exit);
    Vec2 wl = point(t.phi_entry);
    if (w.is_disk()) {
        wr = wr * (w.radius() / norm(wr));
        wl = wl * (w.radius() / norm(wl));
    }
    c.nodes.push_back({"WL", wl, NodeKind::window_anchor});
    c.nodes.push_back({"WR", wr, NodeKind::window_anchor});
    const int nr = segments_for(g.r2 * (t.phi_exit - t.phi_qr), spacing);
    const int nl = segments_for(g.r2 * (t.phi_ql - t.phi_entry), spacing);
    c.interfaces.push_back(
        make_interface("C2R", "D2", "D3", arc_about(c2, g.r2, t.phi_qr, t.phi_exit, nr, qr, wr), "QR", "WR"));
    c.interfaces.push_back(
        make_interface("C2L", "D2", "D3", arc_about(c2, g.r2, t.phi_entry, t.phi_ql, nl, wl, ql), "WL", "QL"));
    return c;
}

namespace {

DiscreteCluster peanut_seed(const Window& w, int resolution) {
    // Two lens-like lobes sharing a vertical wall; scaled so each lobe has unit area.
    const double alpha = kPi / 3.0;
    auto lobe_area = [&](double a, double h) {
        std::vector<Vec2> loop;
        append_loop(loop, circular_arc({-a, 0.0}, {0.0, -h}, alpha, resolution));
        append_loop(loop, straight_polyline({0.0, -h}, {0.0, h}, 1));
        append_loop(loop, circular_arc({0.0, h}, {-a, 0.0}, alpha, resolution));
        return kernels::signed_area(loop);
    };
    const double h0 = 0.55;
    const double scale = 1.0 / std::sqrt(lobe_area(1.0, h0));
    const double a = scale, h = h0 * scale;
    const Vec2 jl{-a, 0.0}, jr{a, 0.0}, top{0.0, h}, bottom{0.0, -h};

    std::vector<Vec2> e1_lower = circular_arc(jl, bottom, alpha, resolution);
    std::vector<Vec2> e1_upper = circular_arc(top, jl, alpha, resolution);
    std::vector<Vec2> e2_lower = circular_arc(bottom, jr, alpha, resolution);
    std::vector<Vec2> e2_upper = circular_arc(jr, top, alpha, resolution);
    for (const auto* arc : {&e1_lower, &e1_upper, &e2_lower, &e2_upper})
        if (!(polygon_min_inset(w, *arc) > 1e-3)) throw DomainError("window too small for the peanut seed");

    const double spacing = kernels::polyline_length(e1_lower) / resolution;
    const Vec2 al = ray_exit(w, {}, {-1.0, 0.0});
    const Vec2 ar = ray_exit(w, {}, {1.0, 0.0});

    DiscreteCluster c;
    c.window = w;
    c.chambers = {ChamberSpec::make_proper("E1", 1.0), ChamberSpec::make_proper("E2", 1.0),
                  ChamberSpec::make_improper("F1"), ChamberSpec::make_improper("F2")};
    c.nodes = {{"JL", jl, NodeKind::triple_junction}, {"T", top, NodeKind::triple_junction},
               {"B", bottom, NodeKind::triple_junction}, {"JR", jr, NodeKind::triple_junction},
               {"AL", al, NodeKind::window_anchor},       {"AR", ar, NodeKind::window_anchor}};
    c.interfaces.push_back(make_interface("ray_left", "F1", "F2",
                                          straight_polyline(al, jl, segments_for(distance(al, jl), spacing)), "AL", "JL"));
    c.interfaces.push_back(make_interface("E1_lower", "E1", "F2", std::move(e1_lower), "JL", "B"));
    c.interfaces.push_back(make_interface("wall", "E1", "E2",
                                          straight_polyline(bottom, top, segments_for(2.0 * h, spacing)), "B", "T"));
    c.interfaces.push_back(make_interface("E1_upper", "E1", "F1", std::move(e1_upper), "T", "JL"));
    c.interfaces.push_back(make_interface("E2_lower", "E2", "F2", std::move(e2_lower), "B", "JR"));
    c.interfaces.push_back(make_interface("E2_upper", "E2", "F1", std::move(e2_upper), "JR", "T"));
    c.interfaces.push_back(make_interface("ray_right", "F1", "F2",
                                          straight_polyline(jr, ar, segments_for(distance(jr, ar), spacing)), "JR", "AR"));
    return c;
}

DiscreteCluster chalk_seed(const Window& w, int resolution) {
    // Rounded triangle at the meeting point of three rays 120 degrees apart.
    const double beta = kPi / 12.0;
    auto corner = [](double d, int k) {
        const double phi = kPi / 2.0 + k * kTwoPiOverThree;
        return Vec2{d * std::cos(phi), d * std::sin(phi)};
    };
    auto area_at = [&](double d) {
        std::vector<Vec2> loop;
        for (int k = 0; k < 3; ++k) append_loop(loop, circular_arc(corner(d, k), corner(d, (k + 1) % 3), beta, resolution));
        return kernels::signed_area(loop);
    };
    const double d = 1.0 / std::sqrt(area_at(1.0));

    DiscreteCluster c;
    c.window = w;
    c.chambers = {ChamberSpec::make_proper("E1", 1.0), ChamberSpec::make_improper("F1"),
                  ChamberSpec::make_improper("F2"), ChamberSpec::make_improper("F3")};
    std::vector<std::vector<Vec2>> arcs;
    double spacing = 0.0;
    for (int k = 0; k < 3; ++k) {
        arcs.push_back(circular_arc(corner(d, k), corner(d, (k + 1) % 3), beta, resolution));
        if (!(polygon_min_inset(w, arcs.back()) > 1e-3)) throw DomainError("window too small for the chalk seed");
        spacing = kernels::polyline_length(arcs.back()) / resolution;
    }
    const std::string sector[3] = {"F1", "F2", "F3"};
    for (int k = 0; k < 3; ++k) {
        const Vec2 j = corner(d, k);
        c.nodes.push_back({"J" + std::to_string(k + 1), j, NodeKind::triple_junction});
    }
    for (int k = 0; k < 3; ++k) {
        const Vec2 j = corner(d, k);
        const Vec2 anchor = ray_exit(w, {}, normalized(j));
        c.nodes.push_back({"A" + std::to_string(k + 1), anchor, NodeKind::window_anchor});
        c.interfaces.push_back(make_interface("ray" + std::to_string(k + 1), sector[k], sector[(k + 2) % 3],
                                              straight_polyline(j, anchor, segments_for(distance(j, anchor), spacing)),
                                              "J" + std::to_string(k + 1), "A" + std::to_string(k + 1)));
    }
    for (int k = 0; k < 3; ++k)
        c.interfaces.push_back(make_interface("arc" + std::to_string(k + 1), "E1", sector[k], std::move(arcs[k]),
                                              "J" + std::to_string(k + 1), "J" + std::to_string((k + 1) % 3 + 1)));
    return c;
}

}  // namespace

DiscreteCluster build_conjecture_seed(ConjectureShape kind, const Window& w, int resolution) {
    require_centred(w);
    require_resolution(resolution);
    return kind == ConjectureShape::peanut ? peanut_seed(w, resolution) : chalk_seed(w, resolution);
}

}  // namespace isoclust
