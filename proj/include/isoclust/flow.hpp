#pragma once

// Area-constrained perimeter descent on discrete clusters, stationarity
// diagnostics, and the local-minimality probe.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "isoclust/cluster.hpp"

namespace isoclust {

struct FlowParams {
    double dt = 1e-4;
    int max_steps = 200000;
    double grad_tol = 1e-3;  ///< converged when the largest vertex speed falls below this
    int resample_every = 50;
    double target_spacing = 0.03;
    double junction_weight = 1.0;  ///< in (0, 1]
    double area_tol = 1e-9;        ///< relative

    void check() const;
};

/// Curvature of one interface at its interior vertices.
struct CurvatureProfile {
    std::string id;
    std::vector<double> values;  ///< signed, positive when turning toward the left chamber
    double mean = 0.0;
    double stddev = 0.0;
    double max_abs = 0.0;
};

struct JunctionAngles {
    std::string id;
    std::array<double, 3> degrees{};  ///< counterclockwise gaps between outgoing tangents
};

struct FlowReport {
    int steps_taken = 0;
    bool converged = false;
    double initial_perimeter = 0.0;
    double final_perimeter = 0.0;
    double max_junction_angle_dev = 0.0;  ///< degrees from 120
    std::vector<CurvatureProfile> curvature;
    double max_area_drift = 0.0;  ///< relative, over every accepted step
    std::vector<std::pair<int, double>> perimeter_history;
    double final_dt = 0.0;
    int resamples = 0;
};

/// Per-step diagnostics.
struct StepInfo {
    double dt = 0.0;
    double max_speed = 0.0;          ///< largest vertex speed of the flow velocity
    double flow_displacement = 0.0;  ///< dt * max_speed
    double projection_offset = 0.0;  ///< largest normal offset applied by area restoration
    std::vector<double> multipliers;  ///< one per proper chamber, in chamber order
};

/// One explicit step. Interior vertices move with the discrete curvature
/// vector plus the area multipliers, junctions descend on length, anchors stay
/// put, then proper areas are restored exactly. Throws TopologyError when the
/// moved network self-intersects or leaves the window, DegenerateConstraintError
/// when the multiplier system is singular.
DiscreteCluster step(const DiscreteCluster& c, const FlowParams& p, StepInfo* info = nullptr);

/// Iterates step with periodic arc-length resampling until the largest vertex
/// speed is below grad_tol or max_steps is reached.
std::pair<DiscreteCluster, FlowReport> evolve(const DiscreteCluster& c, const FlowParams& p);

/// Re-spaces every interface by arc length; nodes are kept.
DiscreteCluster resample(const DiscreteCluster& c, double spacing);

/// Moves the interior vertices of proper chambers along their normals so
/// every proper chamber has its target area.
DiscreteCluster restore_areas(const DiscreteCluster& c, double rel_tol = 1e-13);

/// Sum of all interface lengths.
double total_length(const DiscreteCluster& c);

/// Throws StructuralError for a junction whose valence is not 3.
std::vector<JunctionAngles> junction_angles(const DiscreteCluster& c);

/// Throws DomainError for an unknown id or fewer than 3 points.
CurvatureProfile interface_curvature(const DiscreteCluster& c, const std::string& id);

/// Discrete form of the stationarity conditions.
struct StationarityReport {
    double max_flat_curvature = 0.0;   ///< max |kappa| on interfaces between improper chambers
    double max_curvature_std = 0.0;    ///< over interfaces touching a proper chamber
    double pressure_residual = 0.0;    ///< max |mean kappa - (p_left - p_right)| after a least-squares pressure fit
    double max_mean_spread = 0.0;      ///< max difference of mean curvature between interfaces joining the same pair of chambers
    double max_junction_angle_dev = 0.0;
    std::vector<std::pair<std::string, double>> pressures;  ///< proper chambers; improper chambers have pressure 0

    struct Thresholds {
        double flat;
        double constant;
        double angle_deg;
    };
    /// Defaults 1e-2 / R, 1e-2 / R and 1 degree.
    static Thresholds default_thresholds();
    bool passes(const Thresholds& t) const;
};
StationarityReport stationarity(const DiscreteCluster& c);

/// Smooth compactly supported perturbation: a bump of the given amplitude and
/// support radius, centred on a randomly chosen vertex, displacing interface
/// vertices along their normals and junctions along the bump direction,
/// followed by exact area restoration. Rejected results are retried at half
/// amplitude up to five times; then PerturbationError.
DiscreteCluster perturb(const DiscreteCluster& c, double amplitude, double support_radius, std::uint64_t seed);

struct ProbeTrial {
    std::uint64_t seed = 0;
    double perturbed_perimeter = 0.0;
    double final_perimeter = 0.0;
    int steps = 0;
    bool converged = false;
    double hausdorff = 0.0;          ///< evolved interfaces vs the input
    double aligned_hausdorff = 0.0;  ///< same, after undoing the mean junction translation
};

struct ProbeReport {
    double baseline = 0.0;
    int trials = 0;
    double min_perimeter = 0.0;  ///< meaningful only when trials > 0
    double margin = 0.0;         ///< min_perimeter - baseline; meaningful only when trials > 0
    bool violation = false;      ///< margin < -1e-3 * baseline
    std::vector<ProbeTrial> results;
};

inline constexpr std::uint64_t kDefaultProbeSeed = 20240229;

/// Perturb-then-evolve trials around c. Trial k uses seed base_seed + k.
/// When `evolved` is given it receives the final cluster of every trial.
ProbeReport local_min_probe(const DiscreteCluster& c, int n_trials, double amplitude, const FlowParams& p,
                            double support_radius, std::uint64_t base_seed = kDefaultProbeSeed,
                            std::vector<DiscreteCluster>* evolved = nullptr);

}  // namespace isoclust
