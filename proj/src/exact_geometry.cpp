#include "isoclust/exact_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isoclust/errors.hpp"

namespace isoclust {

namespace {

using ld = long double;

constexpr ld kPiL = 3.141592653589793238462643383279502884L;
constexpr ld kSqrt3L = 1.732050807568877293527446341505872367L;

// (theta - sin cos) / sin^2: area of a circular segment of half-angle theta per
// unit squared half-chord. Odd in theta.
ld segment_factor(ld t) {
    if (std::fabs(t) < 0.02L) {
        const ld t2 = t * t;
        return t * (2.0L / 3 + t2 * (4.0L / 45 + t2 * (4.0L / 315 + t2 * (8.0L / 4725 + t2 * (4.0L / 18711)))));
    }
    const ld s = std::sin(t);
    return (t - s * std::cos(t)) / (s * s);
}

ld segment_factor_derivative(ld t) {
    if (std::fabs(t) < 0.02L) {
        const ld t2 = t * t;
        return 2.0L / 3 + t2 * (4.0L / 15 + t2 * (4.0L / 63 + t2 * (8.0L / 675 + t2 * (4.0L / 2079))));
    }
    return 2.0L - 2.0L * std::cos(t) * segment_factor(t) / std::sin(t);
}

struct Angles {
    ld theta0, theta1, theta2;
};

// Junction balance fixes theta0 = theta2 - 2pi/3 and theta1 = 4pi/3 - theta2.
Angles angles_from_theta2(ld theta2) {
    return {theta2 - 2 * kPiL / 3, 4 * kPiL / 3 - theta2, theta2};
}

// theta2 = pi/3 + (2pi/3) * logistic(u); u is unbounded, which keeps Newton
// well behaved as theta2 approaches either end of (pi/3, pi).
ld theta2_from_u(ld u) { return kPiL / 3 + (2 * kPiL / 3) / (1 + std::exp(-u)); }

struct AreaRatio {
    ld log_a;
    ld dlog_a_du;
};

AreaRatio log_area_ratio(ld u) {
    const ld theta2 = theta2_from_u(u);
    const Angles a = angles_from_theta2(theta2);
    const ld num = segment_factor(a.theta2) - segment_factor(a.theta0);
    const ld den = segment_factor(a.theta1) + segment_factor(a.theta0);
    const ld dnum = segment_factor_derivative(a.theta2) - segment_factor_derivative(a.theta0);
    const ld dden = -segment_factor_derivative(a.theta1) + segment_factor_derivative(a.theta0);
    const ld sig = 1 / (1 + std::exp(-u));
    const ld dtheta_du = (2 * kPiL / 3) * sig * (1 - sig);
    return {std::log(num) - std::log(den), (dnum / num - dden / den) * dtheta_du};
}

DoubleBubbleGeometry assemble(double A, ld theta2) {
    const Angles a = angles_from_theta2(theta2);
    const ld chord = 1 / std::sqrt(segment_factor(a.theta1) + segment_factor(a.theta0));
    const ld r1 = chord / std::sin(a.theta1);
    const ld r2 = chord / std::sin(a.theta2);
    const ld yq = r2 * (1 + std::cos(a.theta2));

    DoubleBubbleGeometry g;
    g.area_A = A;
    g.theta0 = static_cast<double>(a.theta0);
    g.theta1 = static_cast<double>(a.theta1);
    g.theta2 = static_cast<double>(a.theta2);
    g.r1 = static_cast<double>(r1);
    g.r2 = static_cast<double>(r2);
    g.center1 = {0.0, static_cast<double>(yq + r1 * std::cos(a.theta1))};
    g.center2 = {0.0, static_cast<double>(r2)};
    g.junctions = {Vec2{static_cast<double>(-chord), static_cast<double>(yq)},
                   Vec2{static_cast<double>(chord), static_cast<double>(yq)}};
    const ld s0 = std::sin(a.theta0);
    if (s0 != 0) {
        const ld r0 = chord / s0;
        g.r0 = static_cast<double>(r0);
        g.curvature0 = static_cast<double>(s0 / chord);
        g.center0 = Vec2{0.0, static_cast<double>(yq - r0 * std::cos(a.theta0))};
    }
    return g;
}

double max_abs(const std::array<double, 6>& r) {
    double m = 0.0;
    for (double v : r) m = std::max(m, std::fabs(v));
    return m;
}

}  // namespace

double standard_lens_radius() {
    return static_cast<double>(1 / std::sqrt(2 * kPiL / 3 - kSqrt3L / 2));
}

LensGeometry lens_from_radius(double s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("lens_from_radius: radius must be positive, got " + std::to_string(s));
    LensGeometry g;
    g.radius = s;
    g.half_width = 0.5 * kSqrt3 * s;
    g.arc_angle = kTwoPiOverThree;
    g.center_lower = {0.0, -0.5 * s};
    g.center_upper = {0.0, 0.5 * s};
    g.junction_left = {-g.half_width, 0.0};
    g.junction_right = {g.half_width, 0.0};
    g.area = static_cast<double>(static_cast<ld>(s) * s * (2 * kPiL / 3 - kSqrt3L / 2));
    g.finite_perimeter = static_cast<double>(4 * kPiL * s / 3);
    return g;
}

double lens_profile(double x, double s) {
    if (!(s > 0.0)) throw DomainError("lens_profile: radius must be positive");
    const double half_width = 0.5 * kSqrt3 * s;
    if (std::fabs(x) > half_width * (1 + 1e-15)) throw DomainError("lens_profile: |x| exceeds the lens half-width");
    if (std::fabs(x) >= half_width) return 0.0;
    return std::sqrt(s * s - x * x) - 0.5 * s;
}

DoubleBubbleGeometry solve_double_bubble(double A, double tol) {
    if (!(A > 0.0) || !std::isfinite(A)) throw DomainError("solve_double_bubble: area A must be positive and finite");
    if (!(tol > 0.0)) throw DomainError("solve_double_bubble: tolerance must be positive");

    if (std::fabs(A - 1.0) < 1e-9) {
        // equal areas: flat middle interface, both outer arcs 2pi/3
        const ld r = 1 / std::sqrt(2 * kPiL / 3 + kSqrt3L / 4);
        DoubleBubbleGeometry g;
        g.area_A = A;
        g.theta1 = g.theta2 = static_cast<double>(2 * kPiL / 3);
        g.r1 = g.r2 = static_cast<double>(r);
        const ld chord = r * kSqrt3L / 2;
        const ld yq = r / 2;
        g.center1 = {0.0, 0.0};
        g.center2 = {0.0, static_cast<double>(r)};
        g.junctions = {Vec2{static_cast<double>(-chord), static_cast<double>(yq)},
                       Vec2{static_cast<double>(chord), static_cast<double>(yq)}};
        g.residual_norm = max_abs(double_bubble_residual(g));
        return g;
    }

    const ld target = std::log(static_cast<ld>(A));
    ld lo = -60, hi = 60;
    ld u = 0;
    ld last = 0;
    for (int it = 1; it <= kDoubleBubbleMaxIterations; ++it) {
        const AreaRatio f = log_area_ratio(u);
        const ld g = f.log_a - target;
        last = g;
        if (g > 0) hi = u; else lo = u;
        if (std::fabs(g) < 1e-17L) {
            DoubleBubbleGeometry out = assemble(A, theta2_from_u(u));
            out.iterations = it;
            out.residual_norm = max_abs(double_bubble_residual(out));
            if (out.residual_norm < tol) return out;
            throw SolverError("solve_double_bubble: converged angle does not meet the residual tolerance", out.residual_norm);
        }
        ld next = u - g / f.dlog_a_du;
        if (!(next > lo && next < hi) || !std::isfinite(static_cast<double>(next))) next = 0.5L * (lo + hi);
        if (std::fabs(next - u) < 1e-18L * (1 + std::fabs(u))) {
            DoubleBubbleGeometry out = assemble(A, theta2_from_u(next));
            out.iterations = it;
            out.residual_norm = max_abs(double_bubble_residual(out));
            if (out.residual_norm < tol) return out;
            throw SolverError("solve_double_bubble: stalled above the residual tolerance", out.residual_norm);
        }
        u = next;
    }
    throw SolverError("solve_double_bubble: iteration cap reached", static_cast<double>(std::fabs(last)));
}

std::array<double, 6> double_bubble_residual(const DoubleBubbleGeometry& g) {
    const ld r1 = g.r1, r2 = g.r2;
    const ld t0 = g.theta0, t1 = g.theta1, t2 = g.theta2;
    const ld chord1 = r1 * std::sin(t1);
    const ld chord2 = r2 * std::sin(t2);
    ld chord0 = chord1;
    ld middle_area = 0;
    ld k0 = 0;
    if (g.r0) {
        const ld r0 = *g.r0;
        chord0 = r0 * std::sin(t0);
        middle_area = chord0 * chord0 * segment_factor(t0);
        k0 = 1 / r0;
    }
    const ld A = g.area_A;
    return {
        static_cast<double>(r1 * r1 * (t1 - std::sin(t1) * std::cos(t1)) + middle_area - 1),
        static_cast<double>((r2 * r2 * (t2 - std::sin(t2) * std::cos(t2)) - middle_area - A) / std::max<ld>(A, 1)),
        static_cast<double>(chord1 - chord0),
        static_cast<double>(chord2 - chord0),
        static_cast<double>(1 / r1 - 1 / r2 - k0),
        static_cast<double>(std::cos(t1) + std::cos(t2) + std::cos(t0)),
    };
}

std::optional<LimitGap> limit_gap(const DoubleBubbleGeometry& g) {
    if (!g.r0) return std::nullopt;
    const double R = standard_lens_radius();
    constexpr double kPiOver3 = 1.0471975511965977462;
    return LimitGap{std::fabs(*g.r0 - R), std::fabs(g.r1 - R), std::fabs(g.theta0 - kPiOver3),
                    std::fabs(g.theta1 - kPiOver3)};
}

}  // namespace isoclust
