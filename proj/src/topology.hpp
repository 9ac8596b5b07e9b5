#pragma once

// Chamber boundary walking shared by chamber_polygon, validate, the measures
// and the flow.

#include <string>
#include <unordered_map>
#include <vector>

#include "isoclust/cluster.hpp"

namespace isoclust::detail {

struct ClusterIndex {
    std::unordered_map<std::string, int> chamber;
    std::unordered_map<std::string, int> node;
    std::unordered_map<std::string, int> iface;
    /// per interface: node index of each end, -1 for closed loops
    std::vector<std::array<int, 2>> ends;
    /// per interface: chamber index of left and right
    std::vector<std::array<int, 2>> sides;
    /// per node: (interface, end) pairs touching it
    std::vector<std::vector<std::array<int, 2>>> incidence;
};

/// Throws StructuralError on dangling references or duplicate ids.
ClusterIndex index_cluster(const DiscreteCluster& c);

/// One step of a chamber boundary loop.
struct LoopPiece {
    enum class Kind { interface_forward, interface_reverse, window_arc, full_window };
    Kind kind;
    int iface = -1;       ///< for interface pieces
    int from_node = -1;   ///< window_arc: anchor it starts at
    int to_node = -1;     ///< window_arc: anchor it ends at
};
using LoopPlan = std::vector<LoopPiece>;

/// Boundary loops of a chamber as sequences of pieces, chamber on the left.
std::vector<LoopPlan> walk_chamber(const DiscreteCluster& c, const ClusterIndex& idx, int chamber);

/// Chamber that owns the window boundary when no interface reaches it; -1 if undetermined.
int window_owner(const DiscreteCluster& c, const ClusterIndex& idx);

/// Materialises a loop plan into points with per-edge interface tags.
TaggedLoop materialize(const DiscreteCluster& c, const LoopPlan& plan, double boundary_step);

}  // namespace isoclust::detail
