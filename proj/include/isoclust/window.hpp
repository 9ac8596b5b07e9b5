#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "isoclust/vec2.hpp"

namespace isoclust {

/// Bounded region in which a cluster is represented, or over which a
/// perimeter or distance is measured: a disk or an axis-aligned rectangle.
/// Cluster windows are centred at the origin; measuring sub-windows may be
/// centred anywhere.
class Window {
public:
    enum class Shape { disk, rect };

    /// Throws DomainError for a non-positive radius.
    static Window disk(double radius, Vec2 center = {});
    /// Throws DomainError for non-positive half-widths.
    static Window rect(double half_width_x, double half_width_y, Vec2 center = {});

    Shape shape() const { return shape_; }
    bool is_disk() const { return shape_ == Shape::disk; }
    double radius() const { return a_; }
    double half_width_x() const { return a_; }
    double half_width_y() const { return b_; }
    Vec2 center() const { return center_; }

    double area() const;
    /// Signed distance to the boundary, positive inside.
    double inset(Vec2 p) const;
    bool contains(Vec2 p, double slack = 0.0) const { return inset(p) >= -slack; }
    /// True when sub lies inside this window up to eps.
    bool contains(const Window& sub, double eps = 1e-12) const;

    /// Axis-aligned bounds {min, max}.
    std::pair<Vec2, Vec2> bounds() const;
    /// [x0, x1] of the horizontal line at height y inside the window.
    std::optional<std::pair<double, double>> row_span(double y) const;
    /// Length of the part of segment [a, b] inside the window.
    double clipped_length(Vec2 a, Vec2 b) const;

    /// Counterclockwise arc-length coordinate of a boundary point, in [0, boundary_length()).
    double boundary_coordinate(Vec2 p) const;
    double boundary_length() const;
    Vec2 boundary_point(double s) const;
    /// Boundary traversed counterclockwise from coordinate s0 to s1 (wrapping
    /// once when s1 <= s0), both endpoints included, corners included, with
    /// consecutive samples no farther apart than max_step along the boundary.
    std::vector<Vec2> boundary_path(double s0, double s1, double max_step) const;
    /// Whole boundary as a counterclockwise loop (no repeated first point).
    std::vector<Vec2> outline(double max_step) const;

    /// Sample spacing used for window arcs in chamber polygons.
    double default_boundary_step() const;

    friend bool operator==(const Window&, const Window&) = default;

private:
    Window(Shape s, double a, double b, Vec2 c) : shape_(s), a_(a), b_(b), center_(c) {}
    Shape shape_;
    double a_;
    double b_;
    Vec2 center_;
};

}  // namespace isoclust
