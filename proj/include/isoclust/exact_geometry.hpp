#pragma once

// Closed-form lens cluster and the asymmetric double bubble with area vector
// (1, A, infinity). These are the ground truth the discrete modules are
// checked against.

#include <array>
#include <optional>

#include "isoclust/vec2.hpp"

namespace isoclust {

inline constexpr double kTwoPiOverThree = 2.0943951023931954923;  // 2*pi/3
inline constexpr double kSqrt3 = 1.7320508075688772935;

/// Lens of arc radius s: two circular arcs of radius s meeting on the x-axis
/// at 120 degrees, each centred on the midpoint of the other.
struct LensGeometry {
    double radius = 0.0;
    double half_width = 0.0;  ///< (sqrt(3)/2) s
    double arc_angle = 0.0;   ///< central angle of each arc, 2 pi / 3
    Vec2 center_lower;        ///< (0, -s/2), centre of the upper arc
    Vec2 center_upper;        ///< (0, +s/2), centre of the lower arc
    Vec2 junction_left;
    Vec2 junction_right;
    double area = 0.0;              ///< s^2 (2 pi/3 - sqrt(3)/2)
    double finite_perimeter = 0.0;  ///< the two arcs, 4 pi s / 3
};

/// R = 1 / sqrt(2 pi/3 - sqrt(3)/2), the arc radius of the unit-area lens.
double standard_lens_radius();

/// Throws DomainError for s <= 0.
LensGeometry lens_from_radius(double s);

/// Height of the upper lens arc above the x-axis: sqrt(s^2 - x^2) - s/2.
/// Throws DomainError for |x| > (sqrt(3)/2) s.
double lens_profile(double x, double s);

/// Solution of the double-bubble system for areas (1, A).
///
/// Arcs: C1 bounds chamber 1 (unit area) against the exterior, C2 bounds
/// chamber 2 (area A) against the exterior, C0 separates the two chambers.
/// theta_i is the half central angle of arc C_i and r_i its radius.
///
/// Gauge: the circle carrying C2 is tangent to the x-axis at the origin and
/// centred on the positive y-axis, so chamber 2 lies above chamber 1.
///
/// Sign convention for the middle arc: theta0 and r0 are positive when C0
/// bulges into chamber 2 (A > 1) and negative when it bulges into chamber 1
/// (A < 1). For A = 1 the middle interface is flat: r0 is empty (infinite
/// radius), curvature0 = 0 and theta0 = 0.
struct DoubleBubbleGeometry {
    double area_A = 0.0;
    std::optional<double> r0;  ///< empty: flat middle interface
    double curvature0 = 0.0;   ///< 1/r0, zero when flat
    double r1 = 0.0;
    double r2 = 0.0;
    double theta0 = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    std::optional<Vec2> center0;  ///< empty when flat
    Vec2 center1;
    Vec2 center2;
    std::array<Vec2, 2> junctions;  ///< left, right; symmetric about the y-axis
    double residual_norm = 0.0;
    int iterations = 0;

    bool flat_middle() const { return !r0.has_value(); }
    /// Half-length of the common chord through both junctions.
    double chord_half_length() const { return junctions[1].x; }
};

inline constexpr double kDefaultDoubleBubbleTol = 1e-10;
inline constexpr int kDoubleBubbleMaxIterations = 100;

/// Solves the system for area vector (1, A, inf). Throws DomainError for
/// A <= 0 or tol <= 0 and SolverError when the iteration cap is reached.
DoubleBubbleGeometry solve_double_bubble(double A, double tol = kDefaultDoubleBubbleTol);

/// Left-minus-right residuals of the six equations, in order: unit-area
/// chamber, chamber A (divided by max(A, 1)), the two chord compatibilities,
/// the curvature balance and the cosine sum. The flat case uses 1/r0 = 0 and
/// sends the theta0 terms to their limit 0.
std::array<double, 6> double_bubble_residual(const DoubleBubbleGeometry& g);

/// Distance of a double bubble from the lens limit.
struct LimitGap {
    double dr0 = 0.0;
    double dr1 = 0.0;
    double dtheta0 = 0.0;
    double dtheta1 = 0.0;
};

/// |r0 - R|, |r1 - R|, |theta0 - pi/3|, |theta1 - pi/3|; empty ("not
/// applicable") when the middle interface is flat.
std::optional<LimitGap> limit_gap(const DoubleBubbleGeometry& g);

}  // namespace isoclust
