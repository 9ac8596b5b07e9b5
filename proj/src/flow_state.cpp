#include "flow_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "isoclust/errors.hpp"
#include "linear.hpp"

namespace isoclust::detail {

FlowState::FlowState(DiscreteCluster c) : c_(std::move(c)) {
    check_structure(c_);
    idx_ = index_cluster(c_);
    for (std::size_t j = 0; j < c_.chambers.size(); ++j) {
        if (!c_.chambers[j].proper) continue;
        proper_.push_back(static_cast<int>(j));
        auto plans = walk_chamber(c_, idx_, static_cast<int>(j));
        for (const auto& plan : plans)
            for (const auto& piece : plan)
                if (piece.kind == LoopPiece::Kind::window_arc || piece.kind == LoopPiece::Kind::full_window)
                    throw DomainError("proper chamber '" + c_.chambers[j].label + "' reaches the window boundary");
        plans_.push_back(std::move(plans));
    }
    rebuild();
}

void FlowState::rebuild() {
    pos_.clear();
    offset_.clear();
    for (const Node& n : c_.nodes) pos_.push_back(n.position);
    for (const Interface& f : c_.interfaces) {
        offset_.push_back(pos_.size());
        if (f.closed())
            pos_.insert(pos_.end(), f.points.begin(), f.points.end());
        else
            pos_.insert(pos_.end(), f.points.begin() + 1, f.points.end() - 1);
    }
    loops_.assign(plans_.size(), {});
    for (std::size_t j = 0; j < plans_.size(); ++j) {
        for (const LoopPlan& plan : plans_[j]) {
            std::vector<std::size_t> loop;
            for (const LoopPiece& piece : plan) {
                const std::size_t k = static_cast<std::size_t>(piece.iface);
                const std::size_t n = c_.interfaces[k].points.size();
                const bool closed = c_.interfaces[k].closed();
                const std::size_t m = closed ? n : n - 1;
                for (std::size_t t = 0; t < m; ++t) {
                    const std::size_t i = piece.kind == LoopPiece::Kind::interface_forward ? t : (closed ? (n - t) % n : n - 1 - t);
                    loop.push_back(dof_of(k, i));
                }
            }
            loops_[j].push_back(std::move(loop));
        }
    }
}

std::size_t FlowState::dof_of(std::size_t k, std::size_t i) const {
    const Interface& f = c_.interfaces[k];
    if (f.closed()) return offset_[k] + i;
    if (i == 0) return static_cast<std::size_t>(idx_.ends[k][0]);
    if (i + 1 == f.points.size()) return static_cast<std::size_t>(idx_.ends[k][1]);
    return offset_[k] + i - 1;
}

void FlowState::sync() {
    for (std::size_t i = 0; i < c_.nodes.size(); ++i) c_.nodes[i].position = pos_[i];
    for (std::size_t k = 0; k < c_.interfaces.size(); ++k) {
        auto& pts = c_.interfaces[k].points;
        for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = pos_[dof_of(k, i)];
    }
}

double FlowState::area(std::size_t j) const {
    double sum = 0.0;
    for (const auto& loop : loops_[j]) {
        const std::size_t m = loop.size();
        double s = 0.0;
        for (std::size_t t = 0; t < m; ++t) s += cross(pos_[loop[t]], pos_[loop[(t + 1) % m]]);
        sum += 0.5 * s;
    }
    return sum;
}

void FlowState::area_gradient(std::size_t j, std::vector<Vec2>& g) const {
    g.assign(pos_.size(), Vec2{});
    for (const auto& loop : loops_[j]) {
        const std::size_t m = loop.size();
        for (std::size_t t = 0; t < m; ++t) {
            const Vec2 d = pos_[loop[(t + 1) % m]] - pos_[loop[(t + m - 1) % m]];
            g[loop[t]] += -0.5 * perp(d);
        }
    }
}

double FlowState::project(double rel_tol) {
    const std::size_t np = proper_.size();
    if (np == 0) return 0.0;
    // Offset directions: unit normals at interior vertices; at junctions the
    // corner moves along its bisector by 1/sin(half angle) so adjacent edges
    // shift parallel to themselves.
    std::vector<std::vector<Vec2>> normal(np);
    for (std::size_t j = 0; j < np; ++j) {
        area_gradient(j, normal[j]);
        for (std::size_t d = 0; d < pos_.size(); ++d) normal[j][d] = is_interior(d) ? normalized(normal[j][d]) : Vec2{};
        for (const auto& loop : loops_[j]) {
            const std::size_t m = loop.size();
            for (std::size_t t = 0; t < m; ++t) {
                const std::size_t d = loop[t];
                if (!is_junction(d)) continue;
                const Vec2 e1 = normalized(pos_[loop[(t + m - 1) % m]] - pos_[d]);
                const Vec2 e2 = normalized(pos_[loop[(t + 1) % m]] - pos_[d]);
                const double half_sin = std::sqrt(std::max(0.0, 0.5 * (1.0 - dot(e1, e2))));
                const Vec2 outward = normalized(perp(pos_[loop[(t + m - 1) % m]] - pos_[loop[(t + 1) % m]]));
                normal[j][d] += outward / std::max(half_sin, 0.2);
            }
        }
    }
    const std::vector<Vec2> start = pos_;
    std::vector<double> f(np), delta(np, 0.0);
    std::vector<Vec2> g;
    std::vector<std::vector<double>> jac(np, std::vector<double>(np));
    for (int it = 0; it < 50; ++it) {
        double worst = 0.0;
        for (std::size_t j = 0; j < np; ++j) {
            const double target = *c_.chambers[proper_[j]].target_area;
            f[j] = area(j) - target;
            worst = std::max(worst, std::fabs(f[j]) / target);
        }
        if (worst < rel_tol) break;
        for (std::size_t j = 0; j < np; ++j) {
            area_gradient(j, g);
            for (std::size_t k = 0; k < np; ++k) {
                double s = 0.0;
                for (std::size_t d = 0; d < pos_.size(); ++d) s += dot(g[d], normal[k][d]);
                jac[j][k] = s;
            }
        }
        std::vector<double> step(f.size());
        for (std::size_t j = 0; j < np; ++j) step[j] = -f[j];
        if (!solve_dense(jac, step)) throw DegenerateConstraintError("area restoration: singular Jacobian");
        for (std::size_t k = 0; k < np; ++k) {
            delta[k] += step[k];
            for (std::size_t d = 0; d < pos_.size(); ++d) pos_[d] += step[k] * normal[k][d];
        }
    }
    double offset = 0.0;
    for (std::size_t d = 0; d < pos_.size(); ++d) offset = std::max(offset, distance(pos_[d], start[d]));
    return offset;
}

namespace {

double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_meet(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

}  // namespace

void FlowState::check_topology() const {
    for (std::size_t d = 0; d < pos_.size(); ++d) {
        if (!std::isfinite(pos_[d].x) || !std::isfinite(pos_[d].y)) throw TopologyError("vertex became non-finite");
        if (is_junction(d) || is_interior(d))
            if (!(c_.window.inset(pos_[d]) > 0.0)) throw TopologyError("interface left the window");
    }
    struct Seg {
        std::size_t a, b;
        double x0, x1;
    };
    std::vector<Seg> segs;
    for (std::size_t k = 0; k < c_.interfaces.size(); ++k) {
        const std::size_t n = c_.interfaces[k].points.size();
        const std::size_t m = c_.interfaces[k].closed() ? n : n - 1;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t a = dof_of(k, i), b = dof_of(k, (i + 1) % n);
            segs.push_back({a, b, std::min(pos_[a].x, pos_[b].x), std::max(pos_[a].x, pos_[b].x)});
        }
    }
    std::sort(segs.begin(), segs.end(), [](const Seg& u, const Seg& v) { return u.x0 < v.x0; });
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const Seg& s = segs[i];
        for (std::size_t j = i + 1; j < segs.size() && segs[j].x0 <= s.x1; ++j) {
            const Seg& t = segs[j];
            if (s.a == t.a || s.a == t.b || s.b == t.a || s.b == t.b) continue;
            if (segments_meet(pos_[s.a], pos_[s.b], pos_[t.a], pos_[t.b]))
                throw TopologyError("interfaces intersect near (" + std::to_string(pos_[s.a].x) + ", " +
                                    std::to_string(pos_[s.a].y) + ")");
        }
    }
}

double FlowState::total_length() const {
    double sum = 0.0;
    for (std::size_t k = 0; k < c_.interfaces.size(); ++k) {
        const std::size_t n = c_.interfaces[k].points.size();
        const std::size_t m = c_.interfaces[k].closed() ? n : n - 1;
        for (std::size_t i = 0; i < m; ++i) sum += distance(pos_[dof_of(k, i)], pos_[dof_of(k, (i + 1) % n)]);
    }
    return sum;
}

double FlowState::min_segment() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < c_.interfaces.size(); ++k) {
        const std::size_t n = c_.interfaces[k].points.size();
        const std::size_t e = c_.interfaces[k].closed() ? n : n - 1;
        for (std::size_t i = 0; i < e; ++i) m = std::min(m, distance(pos_[dof_of(k, i)], pos_[dof_of(k, (i + 1) % n)]));
    }
    return m;
}

double FlowState::max_segment() const {
    double m = 0.0;
    for (std::size_t k = 0; k < c_.interfaces.size(); ++k) {
        const std::size_t n = c_.interfaces[k].points.size();
        const std::size_t e = c_.interfaces[k].closed() ? n : n - 1;
        for (std::size_t i = 0; i < e; ++i) m = std::max(m, distance(pos_[dof_of(k, i)], pos_[dof_of(k, (i + 1) % n)]));
    }
    return m;
}

void FlowState::resample(double spacing) {
    sync();
    for (Interface& f : c_.interfaces) {
        std::vector<Vec2> src = f.points;
        if (f.closed()) src.push_back(src.front());
        std::vector<double> s(src.size(), 0.0);
        for (std::size_t i = 1; i < src.size(); ++i) s[i] = s[i - 1] + distance(src[i - 1], src[i]);
        const double len = s.back();
        const int min_seg = f.closed() ? 8 : 2;
        const int n = std::max(min_seg, static_cast<int>(std::lround(len / spacing)));
        std::vector<Vec2> out;
        out.reserve(n + 1);
        out.push_back(src.front());
        std::size_t seg = 0;
        for (int i = 1; i < n; ++i) {
            const double target = len * i / n;
            while (seg + 2 < src.size() && s[seg + 1] < target) ++seg;
            const double span = s[seg + 1] - s[seg];
            const double t = span > 0.0 ? (target - s[seg]) / span : 0.0;
            out.push_back(src[seg] + (src[seg + 1] - src[seg]) * t);
        }
        if (!f.closed()) out.push_back(src.back());
        f.points = std::move(out);
    }
    rebuild();
}

}  // namespace isoclust::detail
