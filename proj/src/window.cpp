#include "isoclust/window.hpp"

#include <algorithm>
#include <cmath>

#include "isoclust/errors.hpp"

namespace isoclust {

namespace {
constexpr double kTwoPi = 6.283185307179586476925;
}

Window Window::disk(double radius, Vec2 center) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("window: disk radius must be positive");
    return Window(Shape::disk, radius, radius, center);
}

Window Window::rect(double hx, double hy, Vec2 center) {
    if (!(hx > 0.0) || !(hy > 0.0) || !std::isfinite(hx) || !std::isfinite(hy))
        throw DomainError("window: rectangle half-widths must be positive");
    return Window(Shape::rect, hx, hy, center);
}

double Window::area() const {
    return is_disk() ? M_PI * a_ * a_ : 4.0 * a_ * b_;
}

double Window::inset(Vec2 p) const {
    const Vec2 d = p - center_;
    if (is_disk()) return a_ - norm(d);
    return std::min(a_ - std::fabs(d.x), b_ - std::fabs(d.y));
}

bool Window::contains(const Window& sub, double eps) const {
    if (sub.is_disk()) {
        if (is_disk()) return norm(sub.center_ - center_) + sub.a_ <= a_ + eps;
        const Vec2 d = sub.center_ - center_;
        return std::fabs(d.x) + sub.a_ <= a_ + eps && std::fabs(d.y) + sub.a_ <= b_ + eps;
    }
    const Vec2 c = sub.center_;
    for (const Vec2 corner : {c + Vec2{sub.a_, sub.b_}, c + Vec2{-sub.a_, sub.b_}, c + Vec2{-sub.a_, -sub.b_},
                              c + Vec2{sub.a_, -sub.b_}})
        if (inset(corner) < -eps) return false;
    return true;
}

std::pair<Vec2, Vec2> Window::bounds() const {
    return {center_ - Vec2{a_, b_}, center_ + Vec2{a_, b_}};
}

std::optional<std::pair<double, double>> Window::row_span(double y) const {
    const double dy = y - center_.y;
    if (is_disk()) {
        const double h2 = a_ * a_ - dy * dy;
        if (h2 <= 0.0) return std::nullopt;
        const double h = std::sqrt(h2);
        return std::pair{center_.x - h, center_.x + h};
    }
    if (std::fabs(dy) >= b_) return std::nullopt;
    return std::pair{center_.x - a_, center_.x + a_};
}

double Window::clipped_length(Vec2 a, Vec2 b) const {
    const Vec2 d = b - a;
    const double len = norm(d);
    if (len == 0.0) return 0.0;
    double t0 = 0.0, t1 = 1.0;
    if (is_disk()) {
        // |a + t d - c|^2 <= r^2
        const Vec2 f = a - center_;
        const double qa = dot(d, d);
        const double qb = 2.0 * dot(f, d);
        const double qc = dot(f, f) - a_ * a_;
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc <= 0.0) return 0.0;
        const double sq = std::sqrt(disc);
        t0 = std::max(t0, (-qb - sq) / (2.0 * qa));
        t1 = std::min(t1, (-qb + sq) / (2.0 * qa));
    } else {
        // Liang-Barsky
        const double p[4] = {-d.x, d.x, -d.y, d.y};
        const double q[4] = {a.x - (center_.x - a_), (center_.x + a_) - a.x, a.y - (center_.y - b_),
                             (center_.y + b_) - a.y};
        for (int k = 0; k < 4; ++k) {
            if (p[k] == 0.0) {
                if (q[k] < 0.0) return 0.0;
                continue;
            }
            const double t = q[k] / p[k];
            if (p[k] < 0.0) t0 = std::max(t0, t); else t1 = std::min(t1, t);
        }
    }
    return t1 > t0 ? (t1 - t0) * len : 0.0;
}

double Window::boundary_length() const {
    return is_disk() ? kTwoPi * a_ : 4.0 * (a_ + b_);
}

double Window::boundary_coordinate(Vec2 p) const {
    const Vec2 d = p - center_;
    if (is_disk()) {
        double ang = std::atan2(d.y, d.x);
        if (ang < 0.0) ang += kTwoPi;
        const double s = ang * a_;
        return s >= boundary_length() ? 0.0 : s;
    }
    // edges counterclockwise starting at (hx, 0): right-upper, top, left, bottom, right-lower
    const double hx = a_, hy = b_;
    const double dr = std::fabs(d.x - hx), dt = std::fabs(d.y - hy), dl = std::fabs(d.x + hx), db = std::fabs(d.y + hy);
    const double m = std::min({dr, dt, dl, db});
    double s;
    if (m == dr) s = d.y >= 0.0 ? d.y : 4.0 * hx + 4.0 * hy + d.y;
    else if (m == dt) s = hy + (hx - d.x);
    else if (m == dl) s = hy + 2.0 * hx + (hy - d.y);
    else s = 3.0 * hy + 2.0 * hx + (d.x + hx);
    const double total = boundary_length();
    return s >= total ? s - total : s;
}

Vec2 Window::boundary_point(double s) const {
    const double total = boundary_length();
    s = std::fmod(s, total);
    if (s < 0.0) s += total;
    if (is_disk()) return center_ + from_polar(a_, s / a_);
    const double hx = a_, hy = b_;
    if (s <= hy) return center_ + Vec2{hx, s};
    s -= hy;
    if (s <= 2.0 * hx) return center_ + Vec2{hx - s, hy};
    s -= 2.0 * hx;
    if (s <= 2.0 * hy) return center_ + Vec2{-hx, hy - s};
    s -= 2.0 * hy;
    if (s <= 2.0 * hx) return center_ + Vec2{-hx + s, -hy};
    s -= 2.0 * hx;
    return center_ + Vec2{hx, -hy + s};
}

std::vector<Vec2> Window::boundary_path(double s0, double s1, double max_step) const {
    const double total = boundary_length();
    double span = s1 - s0;
    if (span <= 0.0) span += total;
    std::vector<double> knots;
    if (!is_disk()) {
        const double hx = a_, hy = b_;
        for (double c : {hy, hy + 2 * hx, 3 * hy + 2 * hx, 3 * hy + 4 * hx}) {
            double rel = c - s0;
            while (rel <= 0.0) rel += total;
            while (rel > total) rel -= total;
            if (rel < span) knots.push_back(rel);
        }
        std::sort(knots.begin(), knots.end());
    }
    knots.push_back(span);
    std::vector<Vec2> out;
    out.push_back(boundary_point(s0));
    double prev = 0.0;
    for (double k : knots) {
        const int n = std::max(1, static_cast<int>(std::ceil((k - prev) / max_step)));
        for (int i = 1; i <= n; ++i) out.push_back(boundary_point(s0 + prev + (k - prev) * i / n));
        prev = k;
    }
    return out;
}

std::vector<Vec2> Window::outline(double max_step) const {
    std::vector<Vec2> path = boundary_path(0.0, 0.0, max_step);
    path.pop_back();
    return path;
}

double Window::default_boundary_step() const {
    return boundary_length() / 8192.0;
}

}  // namespace isoclust
