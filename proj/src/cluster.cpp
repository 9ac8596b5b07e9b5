#include "isoclust/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "isoclust/errors.hpp"
#include "isoclust/kernels.hpp"
#include "scanline.hpp"
#include "topology.hpp"

namespace isoclust {

const ChamberSpec* DiscreteCluster::find_chamber(const std::string& label) const {
    for (const auto& ch : chambers)
        if (ch.label == label) return &ch;
    return nullptr;
}

const Interface* DiscreteCluster::find_interface(const std::string& id) const {
    for (const auto& f : interfaces)
        if (f.id == id) return &f;
    return nullptr;
}

const Node* DiscreteCluster::find_node(const std::string& id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

void QuadratureParams::check() const {
    if (initial_grid < 64 || (initial_grid & (initial_grid - 1)) != 0)
        throw DomainError("quadrature initial_grid must be a power of two >= 64");
    if (max_refinements < 0) throw DomainError("quadrature max_refinements must be >= 0");
    if (!(tolerance > 0.0)) throw DomainError("quadrature tolerance must be positive");
}

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const ValidationReport::Check* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

double node_tolerance(const Vec2& p) { return kGeometricTolerance * std::max(1.0, norm(p)); }

}  // namespace

void check_structure(const DiscreteCluster& c) {
    for (const auto& ch : c.chambers) {
        if (ch.label.empty()) throw StructuralError("empty chamber label");
        if (ch.proper != ch.target_area.has_value())
            throw StructuralError("chamber '" + ch.label + "': target area must be present iff proper");
        if (ch.target_area && !(*ch.target_area > 0.0 && std::isfinite(*ch.target_area)))
            throw StructuralError("chamber '" + ch.label + "': target area must be finite and positive");
    }
    const detail::ClusterIndex idx = detail::index_cluster(c);
    for (std::size_t k = 0; k < c.interfaces.size(); ++k) {
        const Interface& f = c.interfaces[k];
        if (f.left == f.right)
            throw StructuralError("interface '" + f.id + "' has chamber '" + f.left + "' on both sides");
        if (f.end_nodes[0].empty() != f.end_nodes[1].empty())
            throw StructuralError("interface '" + f.id + "' has only one end node");
        const std::size_t need = f.closed() ? 3 : 2;
        if (f.points.size() < need) throw StructuralError("interface '" + f.id + "' has too few points");
        for (std::size_t i = 0; i + 1 < f.points.size(); ++i)
            if (f.points[i] == f.points[i + 1])
                throw StructuralError("interface '" + f.id + "' repeats a point");
        for (Vec2 p : f.points)
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw StructuralError("interface '" + f.id + "' has a non-finite point");
        if (f.closed()) {
            if (f.points.front() == f.points.back())
                throw StructuralError("closed interface '" + f.id + "' must not repeat its first point");
            continue;
        }
        for (int s = 0; s < 2; ++s) {
            const Vec2 end = s == 0 ? f.points.front() : f.points.back();
            const Vec2 node = c.nodes[idx.ends[k][s]].position;
            if (distance(end, node) > node_tolerance(node))
                throw StructuralError("interface '" + f.id + "' does not end on node '" + f.end_nodes[s] + "'");
        }
    }
}

std::vector<TaggedLoop> chamber_boundary(const DiscreteCluster& c, const std::string& label) {
    const detail::ClusterIndex idx = detail::index_cluster(c);
    const auto it = idx.chamber.find(label);
    if (it == idx.chamber.end()) throw DomainError("unknown chamber '" + label + "'");
    std::vector<TaggedLoop> out;
    const double step = c.window.default_boundary_step();
    for (const auto& plan : detail::walk_chamber(c, idx, it->second))
        out.push_back(detail::materialize(c, plan, step));
    return out;
}

std::vector<std::vector<Vec2>> chamber_polygon(const DiscreteCluster& c, const std::string& label) {
    std::vector<std::vector<Vec2>> out;
    for (auto& loop : chamber_boundary(c, label)) out.push_back(std::move(loop.points));
    return out;
}

ValidationReport validate(const DiscreteCluster& c, const QuadratureParams& q) {
    q.check();
    check_structure(c);
    const detail::ClusterIndex idx = detail::index_cluster(c);
    ValidationReport report;
    auto add = [&](std::string name, bool ok, double defect, std::string detail) {
        report.checks.push_back({std::move(name), ok, defect, std::move(detail)});
    };

    // Node checks.
    {
        int bad_junction = 0, bad_anchor = 0;
        double worst_anchor = 0.0;
        double worst_junction = -std::numeric_limits<double>::infinity();
        std::ostringstream jd, ad;
        for (std::size_t i = 0; i < c.nodes.size(); ++i) {
            const Node& n = c.nodes[i];
            const std::size_t valence = idx.incidence[i].size();
            if (n.kind == NodeKind::triple_junction) {
                if (valence != 3) {
                    ++bad_junction;
                    jd << n.id << " has valence " << valence << "; ";
                }
                worst_junction = std::max(worst_junction, -c.window.inset(n.position));
            } else {
                if (valence != 1) {
                    ++bad_anchor;
                    jd << n.id << " has valence " << valence << "; ";
                }
                const double off = std::fabs(c.window.inset(n.position));
                worst_anchor = std::max(worst_anchor, off);
                if (off > node_tolerance(n.position)) ad << n.id << " is " << off << " off the boundary; ";
            }
        }
        add("node_valence", bad_junction + bad_anchor == 0, bad_junction + bad_anchor, jd.str());
        add("anchor_placement", ad.str().empty(), worst_anchor, ad.str());
        const bool inside = worst_junction < 0.0;
        add("junction_placement", inside, std::max(0.0, worst_junction), inside ? "" : "junction on or outside the window");
    }

    // Interface points inside the window.
    {
        double worst = 0.0;
        for (const Interface& f : c.interfaces)
            for (Vec2 p : f.points) worst = std::max(worst, -c.window.inset(p));
        const bool ok = worst <= kGeometricTolerance * std::max(1.0, c.window.boundary_length());
        add("interfaces_inside", ok, std::max(0.0, worst), ok ? "" : "interface leaves the window");
    }

    // References.
    {
        std::vector<char> seen(c.chambers.size(), 0);
        for (const auto& s : idx.sides) seen[s[0]] = seen[s[1]] = 1;
        std::ostringstream d;
        int missing = 0;
        for (std::size_t i = 0; i < c.chambers.size(); ++i)
            if (!seen[i]) {
                ++missing;
                d << c.chambers[i].label << " unreferenced; ";
            }
        add("chamber_references", missing == 0, missing, d.str());
    }

    // Axioms (i), (ii) surrogates.
    std::vector<std::vector<std::vector<Vec2>>> regions(c.chambers.size());
    {
        int bad_proper = 0, bad_improper = 0;
        std::ostringstream pd, id;
        const double step = c.window.default_boundary_step();
        for (std::size_t i = 0; i < c.chambers.size(); ++i) {
            const ChamberSpec& ch = c.chambers[i];
            const auto plans = detail::walk_chamber(c, idx, static_cast<int>(i));
            double area = 0.0;
            bool touches = false;
            double min_inset = std::numeric_limits<double>::infinity();
            for (const auto& plan : plans) {
                TaggedLoop loop = detail::materialize(c, plan, step);
                area += kernels::signed_area(loop.points);
                for (int tag : loop.edge_interface) touches |= tag < 0;
                for (Vec2 p : loop.points) min_inset = std::min(min_inset, c.window.inset(p));
                regions[i].push_back(std::move(loop.points));
            }
            if (ch.proper) {
                if (!(area > 0.0) || touches || !(min_inset > kGeometricTolerance)) {
                    ++bad_proper;
                    pd << ch.label << " (area " << area << ", min inset " << min_inset << "); ";
                }
            } else if (!touches || !(area > 0.0)) {
                ++bad_improper;
                id << ch.label << " does not reach the window boundary; ";
            }
        }
        add("proper_chambers", bad_proper == 0, bad_proper, pd.str());
        add("improper_chambers", bad_improper == 0, bad_improper, id.str());
    }

    // Axioms (iii), (iv): overlap and coverage by scanline quadrature.
    {
        std::vector<detail::ScanShape> shapes;
        for (const auto& r : regions) shapes.emplace_back(r);
        std::vector<std::vector<double>> xs(shapes.size());
        std::vector<const std::vector<double>*> sets;
        for (const auto& v : xs) sets.push_back(&v);
        std::vector<std::pair<double, int>> scratch;
        double last_none = 0.0;
        auto estimate = [&](int rows) {
            double none = 0.0;
            const double many = detail::integrate_rows(c.window, rows, [&](double y, double x0, double x1) {
                for (std::size_t i = 0; i < shapes.size(); ++i) shapes[i].crossings(y, xs[i]);
                const auto cc = detail::cover_counts(sets, x0, x1, scratch);
                none += cc.none;
                return cc.many;
            });
            const auto [lo, hi] = c.window.bounds();
            last_none = none * (hi.y - lo.y) / rows;
            // refine on the sum so both defects settle
            return many + last_none;
        };
        // overlap and uncovered measured at the same level
        const detail::RefinedValue rv = detail::refine(q, estimate);
        const double uncovered = last_none;
        const double overlap = rv.value - uncovered;
        const std::string note = rv.converged ? "" : "quadrature did not settle; ";
        add("null_overlap", overlap < q.tolerance, overlap, note);
        add("full_measure", uncovered < q.tolerance, uncovered, note);
    }
    return report;
}

}  // namespace isoclust
