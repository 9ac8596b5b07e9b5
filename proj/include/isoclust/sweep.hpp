#pragma once

// Double bubbles D_A against the lens limit, one row per area.

#include <string>
#include <vector>

#include "isoclust/measure.hpp"

namespace isoclust {

/// A flat middle interface (A = 1) reports r0 and gap_r0 as +inf.
struct SweepRow {
    double A = 0.0;
    double r0 = 0.0;
    double r1 = 0.0;
    double theta0 = 0.0;
    double theta1 = 0.0;
    double gap_r0 = 0.0;
    double gap_r1 = 0.0;
    double gap_theta0 = 0.0;
    double gap_theta1 = 0.0;
    double distance_B2 = 0.0;   ///< cluster distance to the lens inside the disk of radius 2
    double perimeter_B2 = 0.0;  ///< relative perimeter of D_A inside the same disk
};

/// Chamber correspondence D1 -> E1, D2 -> F1, D3 -> F2.
LabelPairing double_bubble_to_lens_pairing();

/// Builds D_A and the standard lens in a disk window of radius window_r
/// (at least 2) at the given resolution and measures both inside B_2.
SweepRow sweep_row(double A, double window_r, int resolution, const QuadratureParams& q = {});

inline constexpr const char* kSweepHeader =
    "A,r0,r1,theta0,theta1,gap_r0,gap_r1,gap_theta0,gap_theta1,distance_B2,perimeter_B2";

/// Header line plus one line per row, numbers with 17 significant digits.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace isoclust
