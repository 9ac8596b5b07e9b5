// isoclust: lens and double-bubble constants, the convergence sweep, the
// perimeter flow, the local-minimality probe and conjecture exploration.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isoclust/cluster_io.hpp"
#include "isoclust/errors.hpp"
#include "isoclust/flow.hpp"
#include "isoclust/measure.hpp"
#include "isoclust/svg.hpp"
#include "isoclust/sweep.hpp"

using namespace isoclust;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kSolver = 3, kTopology = 4, kPerturbation = 5 };

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string g17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt("%.17g", v);
}

void emit(const std::string& path, const std::string& contents) {
    if (path == "-")
        std::cout << contents;
    else
        write_file_atomic(path, contents);
}

void write_outputs(const DiscreteCluster& c, const std::string& json_path, const std::string& svg_path) {
    if (!json_path.empty()) emit(json_path, to_json(c));
    if (!svg_path.empty()) emit(svg_path, to_svg(c));
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("ISOCLUST_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') throw DomainError("ISOCLUST_SEED must be a non-negative integer");
        return v;
    }
    return kDefaultProbeSeed;
}

struct FlowFlags {
    FlowParams p;
    void add(CLI::App* app) {
        app->add_option("--dt", p.dt, "time step")->capture_default_str();
        app->add_option("--max-steps", p.max_steps, "step budget")->capture_default_str();
        app->add_option("--grad-tol", p.grad_tol, "converged when the largest vertex speed is below this")
            ->capture_default_str();
        app->add_option("--resample-every", p.resample_every, "steps between resampling checks")->capture_default_str();
        app->add_option("--spacing", p.target_spacing, "target vertex spacing")->capture_default_str();
        app->add_option("--junction-weight", p.junction_weight, "junction mobility in (0, 1]")->capture_default_str();
        app->add_option("--area-tol", p.area_tol, "relative area tolerance")->capture_default_str();
    }
};

/// One row per interface; the scalar columns repeat.
std::string flow_report_csv(const FlowReport& r) {
    std::string out =
        "steps_taken,converged,final_perimeter,max_junction_angle_dev,max_area_drift,interface,curvature_mean,"
        "curvature_std\n";
    for (const CurvatureProfile& k : r.curvature) {
        out += std::to_string(r.steps_taken) + ',' + (r.converged ? "1" : "0") + ',' + g17(r.final_perimeter) + ',' +
               g17(r.max_junction_angle_dev) + ',' + g17(r.max_area_drift) + ',' + k.id + ',' + g17(k.mean) + ',' +
               g17(k.stddev) + '\n';
    }
    return out;
}

std::string history_csv(const FlowReport& r) {
    std::string out = "step,perimeter\n";
    for (const auto& [s, p] : r.perimeter_history) out += std::to_string(s) + ',' + g17(p) + '\n';
    return out;
}

void print_stationarity(const DiscreteCluster& c) {
    const StationarityReport st = stationarity(c);
    const auto th = StationarityReport::default_thresholds();
    std::printf("max flat curvature     %.3e  (< %.3e)\n", st.max_flat_curvature, th.flat);
    std::printf("max curvature std      %.3e  (< %.3e)\n", st.max_curvature_std, th.constant);
    std::printf("pressure residual      %.3e  (< %.3e)\n", st.pressure_residual, th.constant);
    std::printf("max mean spread        %.3e  (< %.3e)\n", st.max_mean_spread, th.constant);
    std::printf("max junction angle dev %.3e deg  (< %.3g)\n", st.max_junction_angle_dev, th.angle_deg);
    for (const auto& [label, p] : st.pressures) std::printf("pressure %-8s %.10f\n", label.c_str(), p);
    for (const JunctionAngles& j : junction_angles(c))
        std::printf("junction %-8s %.6f %.6f %.6f\n", j.id.c_str(), j.degrees[0], j.degrees[1], j.degrees[2]);
    std::printf("stationary: %s\n", st.passes(th) ? "yes" : "no");
}

void print_flow_summary(const FlowReport& r) {
    std::printf("steps %d, converged %s, resamples %d\n", r.steps_taken, r.converged ? "yes" : "no", r.resamples);
    std::printf("perimeter %.12f -> %.12f (change %.3e)\n", r.initial_perimeter, r.final_perimeter,
                r.final_perimeter - r.initial_perimeter);
    std::printf("max area drift %.3e\n", r.max_area_drift);
}

int run_lens(double radius, bool radius_set, int resolution, double window_r, const std::string& json,
             const std::string& svg) {
    const double R = standard_lens_radius();
    const double s = radius_set ? radius : R;
    const LensGeometry g = lens_from_radius(s);
    if (window_r <= 0) window_r = 2.0 * s / R;
    std::printf("R                %.16f\n", R);
    std::printf("radius           %.16f\n", g.radius);
    std::printf("area             %.16f\n", g.area);
    std::printf("finite perimeter %.16f\n", g.finite_perimeter);
    std::printf("junctions        (%.16f, 0) (%.16f, 0)\n", -g.half_width, g.half_width);
    if (!json.empty() || !svg.empty()) {
        const DiscreteCluster c = build_lens(Window::disk(window_r), s, resolution);
        write_outputs(c, json, svg);
    }
    return kOk;
}

int run_double_bubble(double A, double tol, int resolution, double window_r, const std::string& json,
                      const std::string& svg) {
    if (!(A > 0)) throw DomainError("--area must be positive");
    DoubleBubbleGeometry g;
    try {
        g = solve_double_bubble(A, tol);
    } catch (const SolverError& e) {
        std::fprintf(stderr, "solver failed: %s (last residual %.3e)\n", e.what(), e.last_residual());
        return kSolver;
    }
    const auto res = double_bubble_residual(g);
    std::printf("A              %.17g\n", g.area_A);
    if (g.flat_middle())
        std::printf("r0             inf (flat middle interface)\n");
    else
        std::printf("r0             %.16f\n", *g.r0);
    std::printf("r1             %.16f\n", g.r1);
    std::printf("r2             %.16f\n", g.r2);
    std::printf("theta0         %.16f\n", g.theta0);
    std::printf("theta1         %.16f\n", g.theta1);
    std::printf("theta2         %.16f\n", g.theta2);
    std::printf("junctions      (%.16f, %.16f) (%.16f, %.16f)\n", g.junctions[0].x, g.junctions[0].y, g.junctions[1].x,
                g.junctions[1].y);
    std::printf("residual norm  %.3e\n", g.residual_norm);
    std::printf("residuals     ");
    for (double r : res) std::printf(" %.3e", r);
    std::printf("\niterations     %d\n", g.iterations);
    if (const auto gap = limit_gap(g))
        std::printf("limit gaps     r0 %.6e  r1 %.6e  theta0 %.6e  theta1 %.6e\n", gap->dr0, gap->dr1, gap->dtheta0,
                    gap->dtheta1);
    if (!json.empty() || !svg.empty()) {
        const Window w = Window::disk(window_r);
        if (double_bubble_clipped(g, w)) std::printf("chamber D2 clipped by the window (improper)\n");
        write_outputs(build_double_bubble(g, w, resolution), json, svg);
    }
    return kOk;
}

int run_sweep(const std::vector<double>& areas, double window_r, int resolution, const std::string& csv) {
    if (areas.empty()) throw DomainError("--areas is empty");
    for (std::size_t i = 0; i < areas.size(); ++i) {
        if (!(areas[i] > 0)) throw DomainError("areas must be positive");
        if (i > 0 && !(areas[i] > areas[i - 1])) throw DomainError("areas must be increasing");
    }
    std::vector<SweepRow> rows;
    for (double A : areas) rows.push_back(sweep_row(A, window_r, resolution));
    emit(csv.empty() ? "-" : csv, sweep_csv(rows));
    return kOk;
}

int run_flow(const std::string& input, const FlowParams& p, const std::string& output, const std::string& report,
             const std::string& history, const std::string& svg) {
    const DiscreteCluster c = load_cluster(input);
    const ValidationReport v = validate(c);
    if (!v.passed()) {
        for (const auto& chk : v.checks)
            if (!chk.passed) std::fprintf(stderr, "invalid input: %s (%s)\n", chk.name.c_str(), chk.detail.c_str());
        return kUsage;
    }
    const auto [e, rep] = evolve(c, p);
    print_flow_summary(rep);
    print_stationarity(e);
    write_outputs(e, output, svg);
    if (!report.empty()) emit(report, flow_report_csv(rep));
    if (!history.empty()) emit(history, history_csv(rep));
    return kOk;
}

int run_probe(const std::string& input, int trials, double amplitude, double support, std::uint64_t seed,
              int resolution, double window_r, const FlowParams& p, const std::string& csv) {
    const DiscreteCluster c = input.empty() ? build_standard_lens(Window::disk(window_r), resolution) : load_cluster(input);
    const ProbeReport r = local_min_probe(c, trials, amplitude, p, support, seed);
    std::printf("baseline %.12f\n", r.baseline);
    std::string table = "seed,perturbed_perimeter,final_perimeter,steps,converged,hausdorff,aligned_hausdorff\n";
    for (const ProbeTrial& t : r.results)
        table += std::to_string(t.seed) + ',' + g17(t.perturbed_perimeter) + ',' + g17(t.final_perimeter) + ',' +
                 std::to_string(t.steps) + ',' + (t.converged ? "1" : "0") + ',' + g17(t.hausdorff) + ',' +
                 g17(t.aligned_hausdorff) + '\n';
    std::printf("%s", table.c_str());
    if (!csv.empty()) emit(csv, table);
    if (trials == 0) {
        std::printf("margin undefined (no trials)\n");
        return kOk;
    }
    std::printf("min perimeter %.12f\nmargin %.6e (tolerance %.6e)\n", r.min_perimeter, r.margin, -1e-3 * r.baseline);
    if (r.violation) {
        std::printf("minimality violation\n");
        return kFailed;
    }
    return kOk;
}

int run_conjecture(const std::string& shape, double window_r, int resolution, const FlowParams& p,
                   const std::string& output, const std::string& report, const std::string& svg) {
    const ConjectureShape kind = shape == "peanut" ? ConjectureShape::peanut : ConjectureShape::chalk;
    const DiscreteCluster seed = build_conjecture_seed(kind, Window::disk(window_r), resolution);
    const auto [e, rep] = evolve(seed, p);
    const StationarityReport st = stationarity(e);
    print_flow_summary(rep);
    print_stationarity(e);
    std::printf("final perimeter %s\n", fmt("%.4g", rep.final_perimeter).c_str());
    write_outputs(e, output, svg);
    if (!report.empty()) {
        std::string out =
            "shape,converged,steps_taken,final_perimeter,max_flat_curvature,max_curvature_std,pressure_residual,"
            "max_junction_angle_dev,max_area_drift\n";
        out += shape + ',' + (rep.converged ? "1" : "0") + ',' + std::to_string(rep.steps_taken) + ',' +
               fmt("%.4g", rep.final_perimeter) + ',' + fmt("%.3e", st.max_flat_curvature) + ',' +
               fmt("%.3e", st.max_curvature_std) + ',' + fmt("%.3e", st.pressure_residual) + ',' +
               fmt("%.3e", st.max_junction_angle_dev) + ',' + fmt("%.3e", rep.max_area_drift) + '\n';
        emit(report, out);
    }
    return rep.converged ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isoperimetric clusters: the standard lens, double bubbles and constrained perimeter flow"};
    app.require_subcommand(1);
    const double R = standard_lens_radius();

    double lens_radius = 0;
    int lens_resolution = 2048;
    double lens_window = 0;
    std::string lens_json, lens_svg;
    auto* lens = app.add_subcommand("lens", "standard lens constants");
    auto* radius_opt = lens->add_option("--radius", lens_radius, "arc radius (default: unit-area lens)")
                           ->check(CLI::PositiveNumber);
    lens->add_option("--resolution", lens_resolution, "segments per arc")->check(CLI::Range(8, 1 << 22))->capture_default_str();
    lens->add_option("--window-r", lens_window, "disk window radius (default: twice the lens radius over R)");
    lens->add_option("--json", lens_json, "write the cluster as JSON ('-' for stdout)");
    lens->add_option("--svg", lens_svg, "write an SVG figure ('-' for stdout)");

    double db_area = 1.0, db_tol = kDefaultDoubleBubbleTol, db_window = 2.0;
    int db_resolution = 2048;
    std::string db_json, db_svg;
    auto* db = app.add_subcommand("double-bubble", "solve the double bubble with areas (1, A)");
    db->add_option("--area", db_area, "area A of the second chamber")->required();
    db->add_option("--tol", db_tol, "residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    db->add_option("--resolution", db_resolution, "segments per arc")->check(CLI::Range(8, 1 << 22))->capture_default_str();
    db->add_option("--window-r", db_window, "disk window radius")->check(CLI::PositiveNumber)->capture_default_str();
    db->add_option("--json", db_json, "write the cluster as JSON");
    db->add_option("--svg", db_svg, "write an SVG figure");

    std::vector<double> sw_areas{10, 100, 1000, 10000};
    double sw_window = 2.0;
    int sw_resolution = 2048;
    std::string sw_csv;
    auto* sweep = app.add_subcommand("sweep", "double bubbles approaching the lens");
    sweep->add_option("--areas", sw_areas, "increasing areas")->delimiter(',')->capture_default_str();
    sweep->add_option("--window-r", sw_window, "disk window radius, at least 2")->capture_default_str();
    sweep->add_option("--resolution", sw_resolution, "segments per arc")->check(CLI::Range(8, 1 << 22))->capture_default_str();
    sweep->add_option("--csv", sw_csv, "CSV output (default stdout)");

    FlowFlags fl_flags;
    std::string fl_input, fl_output, fl_report, fl_history, fl_svg;
    auto* flow = app.add_subcommand("flow", "evolve a cluster by constrained perimeter descent");
    flow->add_option("--input", fl_input, "cluster JSON")->required();
    flow->add_option("--output", fl_output, "evolved cluster JSON");
    flow->add_option("--report", fl_report, "report CSV");
    flow->add_option("--history", fl_history, "perimeter history CSV");
    flow->add_option("--svg", fl_svg, "SVG of the evolved cluster");
    fl_flags.add(flow);

    FlowFlags pr_flags;
    std::string pr_input, pr_csv;
    int pr_trials = 32, pr_resolution = 64;
    double pr_amplitude = 0.1 * R, pr_support = 0.5 * R, pr_window = 2.0;
    std::uint64_t pr_seed = 0;
    auto* probe = app.add_subcommand("probe", "perturb-then-evolve local minimality probe");
    probe->add_option("--input", pr_input, "cluster JSON (default: the standard lens)");
    probe->add_option("--trials", pr_trials, "number of trials")->check(CLI::NonNegativeNumber)->capture_default_str();
    probe->add_option("--amplitude", pr_amplitude, "perturbation amplitude")->capture_default_str();
    probe->add_option("--support", pr_support, "perturbation support radius")->capture_default_str();
    auto* seed_opt = probe->add_option("--seed", pr_seed, "base seed (default ISOCLUST_SEED or built-in)");
    probe->add_option("--resolution", pr_resolution, "segments per arc of the default lens")->capture_default_str();
    probe->add_option("--window-r", pr_window, "disk window radius of the default lens")->capture_default_str();
    probe->add_option("--csv", pr_csv, "per-trial CSV");
    pr_flags.add(probe);

    FlowFlags cj_flags;
    cj_flags.p.grad_tol = 1e-4;
    std::string cj_shape, cj_output, cj_report, cj_svg;
    double cj_window = 3.0;
    int cj_resolution = 64;
    auto* conj = app.add_subcommand("conjecture", "evolve a peanut or tailor's chalk seed");
    conj->add_option("--shape", cj_shape, "peanut or chalk")->required()->check(CLI::IsMember({"peanut", "chalk"}));
    conj->add_option("--window-r", cj_window, "disk window radius")->capture_default_str();
    conj->add_option("--resolution", cj_resolution, "seed segments per arc")->capture_default_str();
    conj->add_option("--output", cj_output, "stationary cluster JSON");
    conj->add_option("--report", cj_report, "diagnostics CSV");
    conj->add_option("--svg", cj_svg, "SVG of the stationary cluster");
    cj_flags.add(conj);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*lens) return run_lens(lens_radius, radius_opt->count() > 0, lens_resolution, lens_window, lens_json, lens_svg);
        if (*db) return run_double_bubble(db_area, db_tol, db_resolution, db_window, db_json, db_svg);
        if (*sweep) return run_sweep(sw_areas, sw_window, sw_resolution, sw_csv);
        if (*flow) {
            fl_flags.p.check();
            return run_flow(fl_input, fl_flags.p, fl_output, fl_report, fl_history, fl_svg);
        }
        if (*probe) {
            pr_flags.p.check();
            return run_probe(pr_input, pr_trials, pr_amplitude, pr_support, seed_opt->count() ? pr_seed : default_seed(),
                             pr_resolution, pr_window, pr_flags.p, pr_csv);
        }
        if (*conj) {
            cj_flags.p.check();
            return run_conjecture(cj_shape, cj_window, cj_resolution, cj_flags.p, cj_output, cj_report, cj_svg);
        }
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const StructuralError& e) {
        std::fprintf(stderr, "invalid cluster: %s\n", e.what());
        return kUsage;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "solver failed: %s (last residual %.3e)\n", e.what(), e.last_residual());
        return kSolver;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "quadrature did not converge: %s (%.6e, %.6e)\n", e.what(), e.previous_estimate(),
                     e.last_estimate());
        return kSolver;
    } catch (const DegenerateConstraintError& e) {
        std::fprintf(stderr, "degenerate constraints: %s\n", e.what());
        return kSolver;
    } catch (const TopologyError& e) {
        std::fprintf(stderr, "topology error: %s\n", e.what());
        return kTopology;
    } catch (const PerturbationError& e) {
        std::fprintf(stderr, "perturbation error: %s\n", e.what());
        return kPerturbation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFailed;
    }
    return kUsage;
}
