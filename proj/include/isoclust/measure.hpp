#pragma once

// Areas, relative perimeters, the perimeter-halving identity and the cluster
// distance.

#include <string>
#include <utility>
#include <vector>

#include "isoclust/cluster.hpp"

namespace isoclust {

/// Signed shoelace area of chamber_polygon(c, label). Throws DomainError for
/// an unknown label.
double chamber_area(const DiscreteCluster& c, const std::string& label);

/// Total interface length inside `sub`. Window-boundary arcs are not
/// interfaces and never count. Throws DomainError unless sub lies in c.window.
double relative_perimeter(const DiscreteCluster& c, const Window& sub);

/// |P(c; sub) - 1/2 sum_j P(chamber j; sub)|, where a chamber's perimeter is
/// its interface boundary only. An interface carrying the same chamber on
/// both sides is interior to that chamber and bounds nothing.
double perimeter_halving_check(const DiscreteCluster& c, const Window& sub);

/// Pairs (label in a, label in b); must be a bijection between the chambers.
using LabelPairing = std::vector<std::pair<std::string, std::string>>;
LabelPairing identity_pairing(const DiscreteCluster& c);

struct DistanceResult {
    double value = 0.0;     ///< area
    double previous = 0.0;  ///< estimate at the level before
    int level = 0;          ///< refinements used
};

/// Sum over paired chambers of the area of their symmetric difference inside
/// sub. Rows are doubled until two successive estimates differ by less than
/// q.tolerance; throws ConvergenceError otherwise, DomainError for a bad
/// pairing or a sub-window outside either cluster window.
DistanceResult cluster_distance(const DiscreteCluster& a, const DiscreteCluster& b, const Window& sub,
                                const QuadratureParams& q, const LabelPairing& pairing);

/// Symmetric Hausdorff distance between two polyline sets, measured from the
/// vertices of each set to the segments of the other.
double hausdorff_distance(const std::vector<std::vector<Vec2>>& a, const std::vector<std::vector<Vec2>>& b);
/// Same, between the interface networks of two clusters.
double interface_hausdorff(const DiscreteCluster& a, const DiscreteCluster& b);

}  // namespace isoclust
