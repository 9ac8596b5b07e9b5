#pragma once

// Working representation for the flow: every node and every interior
// interface vertex is one degree of freedom (dof) with a position in `pos`.

#include <cmath>
#include <vector>

#include "isoclust/cluster.hpp"
#include "topology.hpp"

namespace isoclust::detail {

/// Unit tangent at p0 of the circle through p0, p1, p2 (the chord direction
/// when p2 is absent or the points are collinear).
inline Vec2 outgoing_tangent(Vec2 p0, Vec2 p1, const Vec2* p2) {
    const Vec2 u = normalized(p1 - p0);
    if (!p2) return u;
    const double turn = cross(p1 - p0, *p2 - p1);
    if (turn == 0.0) return u;
    // tangent-chord angle equals the inscribed angle at p2
    const Vec2 a = p0 - *p2, b = p1 - *p2;
    const double beta = std::atan2(std::fabs(cross(a, b)), dot(a, b));
    const double r = turn > 0.0 ? -beta : beta;
    return {u.x * std::cos(r) - u.y * std::sin(r), u.x * std::sin(r) + u.y * std::cos(r)};
}

class FlowState {
public:
    explicit FlowState(DiscreteCluster c);

    const DiscreteCluster& cluster() const { return c_; }
    /// Writes dof positions back into the cluster.
    void sync();

    std::size_t dof_count() const { return pos_.size(); }
    std::vector<Vec2>& positions() { return pos_; }
    const std::vector<Vec2>& positions() const { return pos_; }
    bool is_interior(std::size_t dof) const { return dof >= c_.nodes.size(); }
    bool is_junction(std::size_t dof) const {
        return dof < c_.nodes.size() && c_.nodes[dof].kind == NodeKind::triple_junction;
    }
    /// dof of point i of interface k
    std::size_t dof_of(std::size_t k, std::size_t i) const;

    /// Proper chambers and their boundary loops as dof cycles (chamber on the left).
    const std::vector<int>& proper() const { return proper_; }
    const std::vector<std::vector<std::vector<std::size_t>>>& proper_loops() const { return loops_; }

    double area(std::size_t j) const;
    /// Area gradient of proper chamber j at every dof (zero off its boundary).
    void area_gradient(std::size_t j, std::vector<Vec2>& g) const;

    /// Restores proper areas exactly; returns the largest offset applied.
    double project(double rel_tol);
    /// Throws TopologyError on crossing segments or vertices outside the window.
    void check_topology() const;

    double total_length() const;
    double min_segment() const;
    double max_segment() const;

    /// Rebuilds interfaces at uniform arc-length spacing; dofs are renumbered.
    void resample(double spacing);

private:
    void rebuild();

    DiscreteCluster c_;
    ClusterIndex idx_;
    std::vector<Vec2> pos_;
    std::vector<std::size_t> offset_;  ///< first interior dof of each interface
    std::vector<int> proper_;
    std::vector<std::vector<LoopPlan>> plans_;
    std::vector<std::vector<std::vector<std::size_t>>> loops_;
};

}  // namespace isoclust::detail
