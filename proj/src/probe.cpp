#include <cmath>
#include <limits>
#include <random>

#include "flow_state.hpp"
#include "isoclust/errors.hpp"
#include "isoclust/flow.hpp"
#include "isoclust/measure.hpp"

namespace isoclust {

namespace {

double bump(double t) { return t < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0; }

std::vector<std::vector<Vec2>> proper_lines(const DiscreteCluster& c, Vec2 shift) {
    std::vector<std::vector<Vec2>> out;
    for (const Interface& f : c.interfaces) {
        const ChamberSpec* l = c.find_chamber(f.left);
        const ChamberSpec* r = c.find_chamber(f.right);
        if (!(l && l->proper) && !(r && r->proper)) continue;
        out.push_back(f.points);
        if (f.closed()) out.back().push_back(f.points.front());
        for (Vec2& p : out.back()) p += shift;
    }
    return out;
}

}  // namespace

DiscreteCluster perturb(const DiscreteCluster& c, double amplitude, double support_radius, std::uint64_t seed) {
    if (amplitude == 0.0) return c;
    if (!(amplitude > 0.0) || !(support_radius > 0.0))
        throw DomainError("perturb: amplitude and support radius must be positive");

    const detail::FlowState base(c);
    const auto& pos0 = base.positions();
    std::vector<std::size_t> candidates;
    for (std::size_t d = 0; d < pos0.size(); ++d)
        if ((base.is_interior(d) || base.is_junction(d)) && c.window.inset(pos0[d]) > support_radius)
            candidates.push_back(d);
    if (candidates.empty()) throw DomainError("perturb: no support region fits inside the window");

    std::mt19937_64 rng(seed);
    const Vec2 center = pos0[candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)]];
    const double angle = std::uniform_real_distribution<double>(0.0, 2.0 * M_PI)(rng);
    const Vec2 dir = from_polar(1.0, angle);

    double amp = amplitude;
    for (int attempt = 0; attempt <= 5; ++attempt, amp *= 0.5) {
        detail::FlowState st(c);
        auto& pos = st.positions();
        const std::vector<Vec2> before = pos;
        const DiscreteCluster& cl = st.cluster();
        for (std::size_t k = 0; k < cl.interfaces.size(); ++k) {
            const Interface& f = cl.interfaces[k];
            const std::size_t n = f.points.size();
            for (std::size_t i = 0; i < n; ++i) {
                const bool interior = f.closed() || (i > 0 && i + 1 < n);
                if (!interior) continue;
                const std::size_t d = st.dof_of(k, i);
                const double b = bump(distance(before[d], center) / support_radius);
                if (b == 0.0) continue;
                const Vec2 prev = before[st.dof_of(k, (i + n - 1) % n)];
                const Vec2 next = before[st.dof_of(k, (i + 1) % n)];
                const Vec2 normal = normalized(perp(next - prev));
                pos[d] = before[d] + (amp * b * dot(dir, normal)) * normal;
            }
        }
        for (std::size_t d = 0; d < cl.nodes.size(); ++d)
            if (st.is_junction(d)) pos[d] = before[d] + (amp * bump(distance(before[d], center) / support_radius)) * dir;
        try {
            st.project(1e-14);
            st.check_topology();
            st.sync();
            if (validate(st.cluster()).passed()) return st.cluster();
        } catch (const TopologyError&) {
        } catch (const DegenerateConstraintError&) {
        } catch (const StructuralError&) {
        }
    }
    throw PerturbationError("perturbation rejected after 5 retries at halved amplitude");
}

ProbeReport local_min_probe(const DiscreteCluster& c, int n_trials, double amplitude, const FlowParams& p,
                            double support_radius, std::uint64_t base_seed, std::vector<DiscreteCluster>* evolved_out) {
    if (n_trials < 0) throw DomainError("probe: trial count must be non-negative");
    p.check();
    ProbeReport report;
    report.baseline = relative_perimeter(c, c.window);
    report.trials = n_trials;
    if (evolved_out) evolved_out->clear();
    if (n_trials == 0) return report;

    report.min_perimeter = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_trials; ++k) {
        ProbeTrial t;
        t.seed = base_seed + static_cast<std::uint64_t>(k);
        const DiscreteCluster start = perturb(c, amplitude, support_radius, t.seed);
        t.perturbed_perimeter = relative_perimeter(start, start.window);
        auto [evolved, rep] = evolve(start, p);
        t.final_perimeter = relative_perimeter(evolved, evolved.window);
        t.steps = rep.steps_taken;
        t.converged = rep.converged;
        t.hausdorff = interface_hausdorff(evolved, c);
        Vec2 drift{};
        int junctions = 0;
        for (const Node& n : evolved.nodes)
            if (n.kind == NodeKind::triple_junction)
                if (const Node* ref = c.find_node(n.id)) {
                    drift += n.position - ref->position;
                    ++junctions;
                }
        if (junctions > 0) drift = drift / static_cast<double>(junctions);
        t.aligned_hausdorff = hausdorff_distance(proper_lines(evolved, -drift), proper_lines(c, {}));
        report.min_perimeter = std::min(report.min_perimeter, t.final_perimeter);
        report.results.push_back(t);
        if (evolved_out) evolved_out->push_back(std::move(evolved));
    }
    report.margin = report.min_perimeter - report.baseline;
    report.violation = report.margin < -1e-3 * report.baseline;
    return report;
}

}  // namespace isoclust
