#include "topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isoclust/errors.hpp"

namespace isoclust::detail {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

struct HalfEdge {
    int iface;
    bool reversed;
    int from;
    int to;
};

Vec2 leaving_direction(const Interface& f, bool reversed) {
    const auto& p = f.points;
    return reversed ? p[p.size() - 2] - p.back() : p[1] - p.front();
}

Vec2 arriving_direction(const Interface& f, bool reversed) {
    const auto& p = f.points;
    return reversed ? p.front() - p[1] : p.back() - p[p.size() - 2];
}

double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }

}  // namespace

ClusterIndex index_cluster(const DiscreteCluster& c) {
    ClusterIndex idx;
    for (std::size_t i = 0; i < c.chambers.size(); ++i)
        if (!idx.chamber.emplace(c.chambers[i].label, static_cast<int>(i)).second)
            throw StructuralError("duplicate chamber label '" + c.chambers[i].label + "'");
    for (std::size_t i = 0; i < c.nodes.size(); ++i)
        if (!idx.node.emplace(c.nodes[i].id, static_cast<int>(i)).second)
            throw StructuralError("duplicate node id '" + c.nodes[i].id + "'");
    idx.incidence.resize(c.nodes.size());
    for (std::size_t k = 0; k < c.interfaces.size(); ++k) {
        const Interface& f = c.interfaces[k];
        if (!idx.iface.emplace(f.id, static_cast<int>(k)).second)
            throw StructuralError("duplicate interface id '" + f.id + "'");
        const auto l = idx.chamber.find(f.left);
        const auto r = idx.chamber.find(f.right);
        if (l == idx.chamber.end() || r == idx.chamber.end())
            throw StructuralError("interface '" + f.id + "' references an unknown chamber");
        idx.sides.push_back({l->second, r->second});
        if (f.closed()) {
            idx.ends.push_back({-1, -1});
            continue;
        }
        std::array<int, 2> e{};
        for (int s = 0; s < 2; ++s) {
            const auto it = idx.node.find(f.end_nodes[s]);
            if (it == idx.node.end())
                throw StructuralError("interface '" + f.id + "' references missing node '" + f.end_nodes[s] + "'");
            e[s] = it->second;
            idx.incidence[it->second].push_back({static_cast<int>(k), s});
        }
        idx.ends.push_back(e);
    }
    return idx;
}

int window_owner(const DiscreteCluster& c, const ClusterIndex& idx) {
    // Cast chords from the window boundary through the centroid of all
    // interface vertices; the first interface hit tells which side faces the
    // boundary.
    Vec2 centroid{};
    std::size_t count = 0;
    for (const Interface& f : c.interfaces)
        for (Vec2 p : f.points) {
            centroid += p;
            ++count;
        }
    if (count == 0) return c.chambers.size() == 1 ? 0 : -1;
    centroid = centroid / static_cast<double>(count);

    const double total = c.window.boundary_length();
    for (int attempt = 0; attempt < 16; ++attempt) {
        const Vec2 start = c.window.boundary_point(total * (attempt + 0.3183098861837907) / 16.0);
        const Vec2 dir = normalized(centroid - start);
        if (norm(centroid - start) == 0.0) continue;
        double best_t = std::numeric_limits<double>::infinity();
        int best_side = -1;
        bool ambiguous = false;
        for (std::size_t k = 0; k < c.interfaces.size(); ++k) {
            const Interface& f = c.interfaces[k];
            const std::size_t n = f.points.size();
            const std::size_t segs = f.closed() ? n : n - 1;
            for (std::size_t i = 0; i < segs; ++i) {
                const Vec2 a = f.points[i];
                const Vec2 b = f.points[(i + 1) % n];
                const Vec2 e = b - a;
                const double den = cross(dir, e);
                if (den == 0.0) continue;
                const Vec2 w = a - start;
                const double t = cross(w, e) / den;   // along the chord
                const double u = cross(w, dir) / den; // along the segment
                if (t <= 0.0 || u < 0.0 || u > 1.0) continue;
                if (t < best_t) {
                    best_t = t;
                    ambiguous = (u == 0.0 || u == 1.0);
                    best_side = cross(e, start - a) > 0.0 ? idx.sides[k][0] : idx.sides[k][1];
                }
            }
        }
        if (best_side >= 0 && !ambiguous) return best_side;
    }
    return -1;
}

std::vector<LoopPlan> walk_chamber(const DiscreteCluster& c, const ClusterIndex& idx, int chamber) {
    std::vector<LoopPlan> loops;
    std::vector<HalfEdge> half;
    for (std::size_t k = 0; k < c.interfaces.size(); ++k) {
        const Interface& f = c.interfaces[k];
        const int kk = static_cast<int>(k);
        if (f.closed()) {
            if (idx.sides[k][0] == chamber) loops.push_back({{LoopPiece::Kind::interface_forward, kk}});
            if (idx.sides[k][1] == chamber) loops.push_back({{LoopPiece::Kind::interface_reverse, kk}});
            continue;
        }
        if (idx.sides[k][0] == chamber) half.push_back({kk, false, idx.ends[k][0], idx.ends[k][1]});
        if (idx.sides[k][1] == chamber) half.push_back({kk, true, idx.ends[k][1], idx.ends[k][0]});
    }

    // anchors in counterclockwise boundary order
    std::vector<std::pair<double, int>> anchors;
    for (std::size_t i = 0; i < c.nodes.size(); ++i)
        if (c.nodes[i].kind == NodeKind::window_anchor)
            anchors.emplace_back(c.window.boundary_coordinate(c.nodes[i].position), static_cast<int>(i));
    std::sort(anchors.begin(), anchors.end());
    auto next_anchor = [&](int node) {
        for (std::size_t i = 0; i < anchors.size(); ++i)
            if (anchors[i].second == node) return anchors[(i + 1) % anchors.size()].second;
        throw StructuralError("anchor '" + c.nodes[node].id + "' not registered");
    };

    std::vector<std::vector<int>> outgoing(c.nodes.size());
    for (std::size_t h = 0; h < half.size(); ++h) outgoing[half[h].from].push_back(static_cast<int>(h));

    std::vector<char> used(half.size(), 0);
    const std::string& label = c.chambers[chamber].label;
    for (std::size_t start = 0; start < half.size(); ++start) {
        if (used[start]) continue;
        LoopPlan plan;
        int h = static_cast<int>(start);
        std::size_t guard = 0;
        while (true) {
            if (++guard > half.size() + 1)
                throw StructuralError("chamber '" + label + "': boundary walk does not close");
            used[h] = 1;
            const HalfEdge& he = half[h];
            plan.push_back({he.reversed ? LoopPiece::Kind::interface_reverse : LoopPiece::Kind::interface_forward,
                            he.iface});
            int v = he.to;
            // direction pointing back along the boundary just traversed
            Vec2 back = -arriving_direction(c.interfaces[he.iface], he.reversed);
            if (c.nodes[v].kind == NodeKind::window_anchor) {
                const int w = next_anchor(v);
                plan.push_back({LoopPiece::Kind::window_arc, -1, v, w});
                const double s1 = c.window.boundary_coordinate(c.nodes[w].position);
                const double step = c.window.default_boundary_step();
                back = c.window.boundary_point(s1 - step) - c.nodes[w].position;
                v = w;
            }
            int chosen = -1;
            double best = std::numeric_limits<double>::infinity();
            const double back_angle = angle_of(back);
            for (int cand : outgoing[v]) {
                if (used[cand] && cand != static_cast<int>(start)) continue;
                const Vec2 d = leaving_direction(c.interfaces[half[cand].iface], half[cand].reversed);
                double cw = back_angle - angle_of(d);
                while (cw <= 0.0) cw += kTwoPi;
                while (cw > kTwoPi) cw -= kTwoPi;
                if (cw < best) {
                    best = cw;
                    chosen = cand;
                }
            }
            if (chosen < 0)
                throw StructuralError("chamber '" + label + "': boundary is not closed at node '" + c.nodes[v].id + "'");
            if (chosen == static_cast<int>(start)) break;
            h = chosen;
        }
        loops.push_back(std::move(plan));
    }

    if (anchors.empty() && window_owner(c, idx) == chamber) loops.push_back({{LoopPiece::Kind::full_window}});
    return loops;
}

TaggedLoop materialize(const DiscreteCluster& c, const LoopPlan& plan, double boundary_step) {
    TaggedLoop out;
    for (const LoopPiece& piece : plan) {
        switch (piece.kind) {
            case LoopPiece::Kind::interface_forward:
            case LoopPiece::Kind::interface_reverse: {
                const Interface& f = c.interfaces[piece.iface];
                const bool rev = piece.kind == LoopPiece::Kind::interface_reverse;
                const std::size_t n = f.points.size();
                const std::size_t m = f.closed() ? n : n - 1;
                for (std::size_t i = 0; i < m; ++i) {
                    out.points.push_back(rev ? f.points[n - 1 - i] : f.points[i]);
                    out.edge_interface.push_back(piece.iface);
                }
                break;
            }
            case LoopPiece::Kind::window_arc: {
                const Vec2 a = c.nodes[piece.from_node].position;
                const Vec2 b = c.nodes[piece.to_node].position;
                std::vector<Vec2> path = c.window.boundary_path(c.window.boundary_coordinate(a),
                                                                c.window.boundary_coordinate(b), boundary_step);
                out.points.push_back(a);
                out.edge_interface.push_back(-1);
                for (std::size_t i = 1; i + 1 < path.size(); ++i) {
                    out.points.push_back(path[i]);
                    out.edge_interface.push_back(-1);
                }
                break;
            }
            case LoopPiece::Kind::full_window:
                for (Vec2 p : c.window.outline(boundary_step)) {
                    out.points.push_back(p);
                    out.edge_interface.push_back(-1);
                }
                break;
        }
    }
    return out;
}

}  // namespace isoclust::detail
