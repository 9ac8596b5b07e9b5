#include "isoclust/flow.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "flow_state.hpp"
#include "isoclust/errors.hpp"
#include "isoclust/kernels.hpp"
#include "linear.hpp"

namespace isoclust {

void FlowParams::check() const {
    if (!(dt > 0.0)) throw DomainError("flow: dt must be positive");
    if (max_steps < 0) throw DomainError("flow: max_steps must be non-negative");
    if (!(grad_tol > 0.0)) throw DomainError("flow: grad_tol must be positive");
    if (resample_every < 1) throw DomainError("flow: resample_every must be at least 1");
    if (!(target_spacing > 0.0)) throw DomainError("flow: target_spacing must be positive");
    if (!(junction_weight > 0.0 && junction_weight <= 1.0)) throw DomainError("flow: junction_weight must lie in (0, 1]");
    if (!(area_tol > 0.0)) throw DomainError("flow: area_tol must be positive");
}

namespace {

constexpr double kProjectionTol = 1e-14;
constexpr double kDescentSlack = 1e-6;

/// Gathers the points of interface k (closed loops padded with their
/// neighbours) and runs the turning kernel; results land at the interior dofs.
struct Velocity {
    std::vector<Vec2> v;
    std::vector<double> w;
    std::vector<double> lambda;
    double max_speed = 0.0;
};

void turning_of(const std::vector<Vec2>& pts, bool closed, std::vector<double>& kappa, std::vector<Vec2>& normal,
                std::vector<double>& mass) {
    const std::size_t n = pts.size();
    std::vector<Vec2> padded;
    const Vec2* data = pts.data();
    std::size_t count = n;
    if (closed) {
        padded.reserve(n + 2);
        padded.push_back(pts.back());
        padded.insert(padded.end(), pts.begin(), pts.end());
        padded.push_back(pts.front());
        data = padded.data();
        count = n + 2;
    }
    if (count < 3) {
        kappa.clear();
        normal.clear();
        mass.clear();
        return;
    }
    kappa.resize(count - 2);
    normal.resize(count - 2);
    mass.resize(count - 2);
    kernels::active().turning(data, count, kappa.data(), normal.data(), mass.data());
}

void compute_velocity(const detail::FlowState& st, const FlowParams& p, Velocity& out) {
    const DiscreteCluster& c = st.cluster();
    const auto& pos = st.positions();
    const std::size_t nd = st.dof_count();
    out.v.assign(nd, Vec2{});
    out.w.assign(nd, 0.0);

    std::vector<Vec2> pts, normal;
    std::vector<double> kappa, mass;
    for (std::size_t k = 0; k < c.interfaces.size(); ++k) {
        const Interface& f = c.interfaces[k];
        const std::size_t n = f.points.size();
        pts.resize(n);
        for (std::size_t i = 0; i < n; ++i) pts[i] = pos[st.dof_of(k, i)];
        turning_of(pts, f.closed(), kappa, normal, mass);
        for (std::size_t t = 0; t < kappa.size(); ++t) {
            const std::size_t i = f.closed() ? t : t + 1;
            const std::size_t d = st.dof_of(k, i);
            out.v[d] = kappa[t] * normal[t];
            out.w[d] = mass[t];
        }
    }

    // junctions: steepest descent of length, sum of outgoing unit tangents
    std::vector<Vec2> pull(c.nodes.size());
    for (std::size_t k = 0; k < c.interfaces.size(); ++k) {
        const Interface& f = c.interfaces[k];
        if (f.closed()) continue;
        const std::size_t n = f.points.size();
        const std::size_t a = st.dof_of(k, 0), b = st.dof_of(k, n - 1);
        const Vec2* a2 = n > 2 ? &pos[st.dof_of(k, 2)] : nullptr;
        const Vec2* b2 = n > 2 ? &pos[st.dof_of(k, n - 3)] : nullptr;
        pull[a] += detail::outgoing_tangent(pos[a], pos[st.dof_of(k, 1)], a2);
        pull[b] += detail::outgoing_tangent(pos[b], pos[st.dof_of(k, n - 2)], b2);
    }
    for (std::size_t i = 0; i < c.nodes.size(); ++i)
        if (c.nodes[i].kind == NodeKind::triple_junction) out.v[i] = p.junction_weight * pull[i];

    // multipliers: one per proper chamber, zero instantaneous area change
    const std::size_t np = st.proper().size();
    out.lambda.assign(np, 0.0);
    if (np > 0) {
        std::vector<std::vector<Vec2>> g(np);
        for (std::size_t j = 0; j < np; ++j) st.area_gradient(j, g[j]);
        std::vector<std::vector<double>> m(np, std::vector<double>(np, 0.0));
        std::vector<double> b(np, 0.0);
        for (std::size_t j = 0; j < np; ++j) {
            for (std::size_t d = 0; d < nd; ++d) b[j] -= dot(g[j][d], out.v[d]);
            for (std::size_t k = j; k < np; ++k) {
                double s = 0.0;
                for (std::size_t d = c.nodes.size(); d < nd; ++d)
                    if (out.w[d] > 0.0) s += dot(g[j][d], g[k][d]) / out.w[d];
                m[j][k] = m[k][j] = s;
            }
        }
        if (!detail::solve_dense(m, b)) throw DegenerateConstraintError("flow: singular multiplier system");
        out.lambda = b;
        for (std::size_t d = c.nodes.size(); d < nd; ++d) {
            if (!(out.w[d] > 0.0)) continue;
            for (std::size_t j = 0; j < np; ++j) out.v[d] += (out.lambda[j] / out.w[d]) * g[j][d];
        }
    }
    out.max_speed = 0.0;
    for (const Vec2& v : out.v) out.max_speed = std::max(out.max_speed, norm(v));
}

double stable_dt(const detail::FlowState& st, const FlowParams& p) {
    const double h = std::min(p.target_spacing, st.min_segment());
    return std::min(p.dt, 0.4 * h * h);
}

/// Moves, restores areas and checks topology; fills info.
void advance(detail::FlowState& st, const FlowParams& p, double dt, Velocity& vel, StepInfo& info) {
    compute_velocity(st, p, vel);
    auto& pos = st.positions();
    for (std::size_t d = 0; d < pos.size(); ++d) pos[d] += dt * vel.v[d];
    info.dt = dt;
    info.max_speed = vel.max_speed;
    info.flow_displacement = dt * vel.max_speed;
    info.multipliers = vel.lambda;
    info.projection_offset = st.project(kProjectionTol);
    st.check_topology();
}

double max_area_drift(const detail::FlowState& st) {
    double worst = 0.0;
    for (std::size_t j = 0; j < st.proper().size(); ++j) {
        const double target = *st.cluster().chambers[st.proper()[j]].target_area;
        worst = std::max(worst, std::fabs(st.area(j) - target) / target);
    }
    return worst;
}

}  // namespace

DiscreteCluster step(const DiscreteCluster& c, const FlowParams& p, StepInfo* info) {
    p.check();
    detail::FlowState st(c);
    Velocity vel;
    StepInfo local;
    advance(st, p, stable_dt(st, p), vel, local);
    st.sync();
    if (info) *info = std::move(local);
    return st.cluster();
}

double total_length(const DiscreteCluster& c) {
    double sum = 0.0;
    for (const Interface& f : c.interfaces) {
        sum += kernels::polyline_length(f.points);
        if (f.closed()) sum += distance(f.points.back(), f.points.front());
    }
    return sum;
}

DiscreteCluster resample(const DiscreteCluster& c, double spacing) {
    if (!(spacing > 0.0)) throw DomainError("resample: spacing must be positive");
    detail::FlowState st(c);
    st.resample(spacing);
    st.sync();
    return st.cluster();
}

DiscreteCluster restore_areas(const DiscreteCluster& c, double rel_tol) {
    detail::FlowState st(c);
    st.project(rel_tol);
    st.sync();
    return st.cluster();
}

std::pair<DiscreteCluster, FlowReport> evolve(const DiscreteCluster& c, const FlowParams& p) {
    p.check();
    detail::FlowState st(c);
    FlowReport report;
    report.initial_perimeter = st.total_length();
    const double h = p.target_spacing;
    auto spacing_off = [&] { return st.min_segment() < 0.5 * h || st.max_segment() > 1.5 * h; };
    auto do_resample = [&] {
        st.resample(h);
        st.project(kProjectionTol);
        st.check_topology();
        ++report.resamples;
    };
    if (spacing_off()) do_resample();
    st.project(kProjectionTol);
    report.max_area_drift = max_area_drift(st);

    double length = st.total_length();
    report.perimeter_history.emplace_back(0, length);
    Velocity vel;
    StepInfo info;
    std::vector<Vec2> saved;
    for (int n = 1; n <= p.max_steps; ++n) {
        if (n > 1 && (n - 1) % p.resample_every == 0 && spacing_off()) {
            do_resample();
            length = st.total_length();
        }
        double dt = stable_dt(st, p);
        saved = st.positions();
        double next = length;
        for (int attempt = 0;; ++attempt) {
            advance(st, p, dt, vel, info);
            next = st.total_length();
            if (next <= length + kDescentSlack || attempt >= 30) break;
            st.positions() = saved;
            dt *= 0.5;
        }
        length = next;
        report.steps_taken = n;
        report.final_dt = dt;
        report.max_area_drift = std::max(report.max_area_drift, max_area_drift(st));
        if (n % p.resample_every == 0) report.perimeter_history.emplace_back(n, length);
        if (info.max_speed < p.grad_tol) {
            report.converged = true;
            break;
        }
    }
    st.sync();
    DiscreteCluster out = st.cluster();
    report.final_perimeter = total_length(out);
    if (report.perimeter_history.back().first != report.steps_taken)
        report.perimeter_history.emplace_back(report.steps_taken, report.final_perimeter);
    for (const auto& ja : junction_angles(out))
        for (double a : ja.degrees) report.max_junction_angle_dev = std::max(report.max_junction_angle_dev, std::fabs(a - 120.0));
    for (const Interface& f : out.interfaces)
        if (f.points.size() >= 3) report.curvature.push_back(interface_curvature(out, f.id));
    return {std::move(out), std::move(report)};
}

std::vector<JunctionAngles> junction_angles(const DiscreteCluster& c) {
    const detail::ClusterIndex idx = detail::index_cluster(c);
    std::vector<JunctionAngles> out;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        if (c.nodes[i].kind != NodeKind::triple_junction) continue;
        if (idx.incidence[i].size() != 3)
            throw StructuralError("junction '" + c.nodes[i].id + "' has valence " +
                                  std::to_string(idx.incidence[i].size()));
        std::array<double, 3> dir{};
        for (int t = 0; t < 3; ++t) {
            const auto [k, end] = idx.incidence[i][t];
            const auto& pts = c.interfaces[k].points;
            const std::size_t n = pts.size();
            const Vec2 d = end == 0 ? detail::outgoing_tangent(pts[0], pts[1], n > 2 ? &pts[2] : nullptr)
                                    : detail::outgoing_tangent(pts[n - 1], pts[n - 2], n > 2 ? &pts[n - 3] : nullptr);
            dir[t] = std::atan2(d.y, d.x) * 180.0 / M_PI;
        }
        std::sort(dir.begin(), dir.end());
        out.push_back({c.nodes[i].id, {dir[1] - dir[0], dir[2] - dir[1], 360.0 - (dir[2] - dir[0])}});
    }
    return out;
}

CurvatureProfile interface_curvature(const DiscreteCluster& c, const std::string& id) {
    const Interface* f = c.find_interface(id);
    if (!f) throw DomainError("unknown interface '" + id + "'");
    if (f->points.size() < 3) throw DomainError("interface '" + id + "' has fewer than 3 points");
    CurvatureProfile prof;
    prof.id = id;
    std::vector<Vec2> normal;
    std::vector<double> mass;
    turning_of(f->points, f->closed(), prof.values, normal, mass);
    double sum = 0.0;
    for (double k : prof.values) {
        sum += k;
        prof.max_abs = std::max(prof.max_abs, std::fabs(k));
    }
    prof.mean = sum / prof.values.size();
    double var = 0.0;
    for (double k : prof.values) var += (k - prof.mean) * (k - prof.mean);
    prof.stddev = std::sqrt(var / prof.values.size());
    return prof;
}

StationarityReport::Thresholds StationarityReport::default_thresholds() {
    const double r = standard_lens_radius();
    return {1e-2 / r, 1e-2 / r, 1.0};
}

bool StationarityReport::passes(const Thresholds& t) const {
    return max_flat_curvature < t.flat && max_curvature_std < t.constant && pressure_residual < t.constant &&
           max_junction_angle_dev < t.angle_deg;
}

StationarityReport stationarity(const DiscreteCluster& c) {
    const detail::ClusterIndex idx = detail::index_cluster(c);
    StationarityReport r;
    std::vector<int> unknown(c.chambers.size(), -1);
    int np = 0;
    for (std::size_t j = 0; j < c.chambers.size(); ++j)
        if (c.chambers[j].proper) unknown[j] = np++;

    struct Row {
        int left, right;
        double mean;
    };
    std::vector<Row> rows;
    std::map<std::pair<int, int>, std::pair<double, double>> pair_range;
    for (std::size_t k = 0; k < c.interfaces.size(); ++k) {
        const Interface& f = c.interfaces[k];
        if (f.points.size() < 3) continue;
        const CurvatureProfile prof = interface_curvature(c, f.id);
        const int l = idx.sides[k][0], rt = idx.sides[k][1];
        if (unknown[l] < 0 && unknown[rt] < 0) {
            r.max_flat_curvature = std::max(r.max_flat_curvature, prof.max_abs);
            continue;
        }
        r.max_curvature_std = std::max(r.max_curvature_std, prof.stddev);
        rows.push_back({l, rt, prof.mean});
        const auto key = l < rt ? std::pair{l, rt} : std::pair{rt, l};
        const double signed_mean = l < rt ? prof.mean : -prof.mean;
        auto [it, fresh] = pair_range.try_emplace(key, signed_mean, signed_mean);
        if (!fresh) {
            it->second.first = std::min(it->second.first, signed_mean);
            it->second.second = std::max(it->second.second, signed_mean);
        }
    }
    for (const auto& [key, range] : pair_range) r.max_mean_spread = std::max(r.max_mean_spread, range.second - range.first);

    // least-squares pressures: mean curvature = p_left - p_right
    std::vector<double> pressure(np, 0.0);
    if (np > 0 && !rows.empty()) {
        std::vector<std::vector<double>> ata(np, std::vector<double>(np, 0.0));
        std::vector<double> atb(np, 0.0);
        for (const Row& row : rows) {
            std::vector<std::pair<int, double>> coef;
            if (unknown[row.left] >= 0) coef.emplace_back(unknown[row.left], 1.0);
            if (unknown[row.right] >= 0) coef.emplace_back(unknown[row.right], -1.0);
            for (auto [a, ca] : coef) {
                atb[a] += ca * row.mean;
                for (auto [b, cb] : coef) ata[a][b] += ca * cb;
            }
        }
        if (detail::solve_dense(ata, atb)) pressure = atb;
    }
    auto p_of = [&](int chamber) { return unknown[chamber] >= 0 ? pressure[unknown[chamber]] : 0.0; };
    for (const Row& row : rows)
        r.pressure_residual = std::max(r.pressure_residual, std::fabs(row.mean - (p_of(row.left) - p_of(row.right))));
    for (std::size_t j = 0; j < c.chambers.size(); ++j)
        if (unknown[j] >= 0) r.pressures.emplace_back(c.chambers[j].label, pressure[unknown[j]]);

    for (const auto& ja : junction_angles(c))
        for (double a : ja.degrees) r.max_junction_angle_dev = std::max(r.max_junction_angle_dev, std::fabs(a - 120.0));
    return r;
}

}  // namespace isoclust
