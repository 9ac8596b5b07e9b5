#pragma once

// Discrete (N, M)-clusters: chambers, polyline interfaces between them, and
// the nodes where interfaces end, all inside a finite window.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "isoclust/exact_geometry.hpp"
#include "isoclust/vec2.hpp"
#include "isoclust/window.hpp"

namespace isoclust {

struct ChamberSpec {
    std::string label;
    bool proper = false;
    std::optional<double> target_area;  ///< present iff proper

    static ChamberSpec make_proper(std::string label, double target) { return {std::move(label), true, target}; }
    static ChamberSpec make_improper(std::string label) { return {std::move(label), false, std::nullopt}; }
    friend bool operator==(const ChamberSpec&, const ChamberSpec&) = default;
};

enum class NodeKind { triple_junction, window_anchor };

struct Node {
    std::string id;
    Vec2 position;
    NodeKind kind = NodeKind::triple_junction;
    friend bool operator==(const Node&, const Node&) = default;
};

/// Polyline separating two chambers. `left` is the chamber on the left when
/// walking the points in order. An interface either runs between two nodes
/// (its first and last points sit on them) or is a closed loop with no nodes,
/// in which case the last point connects back to the first.
struct Interface {
    std::string id;
    std::string left;
    std::string right;
    std::vector<Vec2> points;
    std::array<std::string, 2> end_nodes;  ///< both empty for a closed loop

    bool closed() const { return end_nodes[0].empty() && end_nodes[1].empty(); }
    friend bool operator==(const Interface&, const Interface&) = default;
};

struct DiscreteCluster {
    Window window = Window::disk(1.0);
    std::vector<ChamberSpec> chambers;
    std::vector<Interface> interfaces;
    std::vector<Node> nodes;

    const ChamberSpec* find_chamber(const std::string& label) const;
    const Interface* find_interface(const std::string& id) const;
    const Node* find_node(const std::string& id) const;
    friend bool operator==(const DiscreteCluster&, const DiscreteCluster&) = default;
};

/// Tolerances and grid controls for the grid quadrature of overlap,
/// coverage and symmetric-difference areas.
struct QuadratureParams {
    int initial_grid = 256;  ///< rows per axis at the first level, a power of two >= 64
    int max_refinements = 5;
    double tolerance = 1e-4;  ///< area

    void check() const;
};

/// Outcome of validate(); one entry per axiom plus node-level checks.
struct ValidationReport {
    struct Check {
        std::string name;
        bool passed = true;
        double defect = 0.0;
        std::string detail;
    };
    std::vector<Check> checks;

    bool passed() const;
    const Check* find(const std::string& name) const;
};

/// Geometric tolerance for node placement and endpoint coincidence.
inline constexpr double kGeometricTolerance = 1e-9;

/// Checks the cluster axioms on the discrete model: proper chambers have
/// positive area and stay off the window boundary, improper chambers reach
/// the window boundary, chambers do not overlap and cover the window,
/// junction valence 3, anchor valence 1 on the boundary. Throws
/// StructuralError for malformed input (dangling references, unknown or
/// repeated labels, a chamber on both sides of one interface, endpoints off
/// their nodes).
ValidationReport validate(const DiscreteCluster& c, const QuadratureParams& q = {});

/// Structural checks only; throws StructuralError.
void check_structure(const DiscreteCluster& c);

/// Region of one chamber: every connected boundary loop, outer loops
/// counterclockwise, hole loops clockwise, so the signed shoelace sum is the
/// area. Improper chambers are closed along the window boundary. Throws
/// StructuralError on non-manifold connectivity, DomainError on an unknown label.
std::vector<std::vector<Vec2>> chamber_polygon(const DiscreteCluster& c, const std::string& label);

/// Boundary loop with, per edge i (from point i to point i+1), whether the edge
/// lies on the window boundary and which interface it came from (-1 on the window).
struct TaggedLoop {
    std::vector<Vec2> points;
    std::vector<int> edge_interface;
};
std::vector<TaggedLoop> chamber_boundary(const DiscreteCluster& c, const std::string& label);

// Builders for named configurations.

/// Lens cluster of the unit-area lens: chambers E1 (proper, area 1), F1
/// (above the axis) and F2 (below), arcs sampled uniformly in angle with
/// `resolution` segments each, rays along the x-axis pinned at the window.
/// Throws DomainError when the window does not strictly contain the lens or
/// resolution < 8.
DiscreteCluster build_standard_lens(const Window& w, int resolution);
/// Same construction at an arbitrary arc radius; target area is the lens area.
DiscreteCluster build_lens(const Window& w, double radius, int resolution);

/// Double bubble (chambers D1 area 1, D2 area A, D3 exterior) clipped to the
/// window. D2 is proper when it lies inside the window; when the circle of
/// C2 leaves the window, D2 is recorded as improper (clipped) and the exits
/// become window anchors.
DiscreteCluster build_double_bubble(const DoubleBubbleGeometry& g, const Window& w, int resolution);
/// True when the second chamber of build_double_bubble(g, w, .) is clipped.
bool double_bubble_clipped(const DoubleBubbleGeometry& g, const Window& w);

enum class ConjectureShape { peanut, chalk };

/// Flow seeds: peanut, area vector (1, 1, inf, inf); tailor's chalk, area
/// vector (1, inf, inf, inf). Seeds are deliberately off-equilibrium.
DiscreteCluster build_conjecture_seed(ConjectureShape kind, const Window& w, int resolution);

/// Points of a circular arc from `from` to `to` whose signed half central
/// angle is half_angle (positive: the curve turns left, bulging to the right
/// of the chord direction). Endpoints are reproduced exactly.
std::vector<Vec2> circular_arc(Vec2 from, Vec2 to, double half_angle, int segments);

/// Straight polyline from a to b with `segments` equal segments.
std::vector<Vec2> straight_polyline(Vec2 a, Vec2 b, int segments);

}  // namespace isoclust
