#pragma once
#include <string>
#include <vector>

#include "vcselcov/scene.hpp"

namespace vcselcov {

/// One reference row: the coverage a (height, divergence) pair should reach.
struct CalibRow {
    double height_m;
    double theta_deg;      // nominal divergence
    double coverage_pct;
};

/// Reference coverage table used when no target file is given.
std::vector<CalibRow> default_calibration_targets();

struct CalibPoint {
    double n0;
    double rms;  // root-mean-square coverage error over the target rows, pp
};

struct CalibrationResult {
    double n0;
    double rms;
    std::vector<CalibPoint> sweep;  // full curve, ascending n0
};

/// Sweeps n0 over a log grid (points_per_decade steps per decade, endpoints
/// included) and returns the least-squares best fit against the targets.
/// Ties go to the smaller n0. Throws CalibrationError when the best RMS
/// exceeds max_rms (default 15 pp), and ConfigError on an empty target list.
CalibrationResult calibrate_n0(const SceneConfig& cfg,
                               const std::vector<CalibRow>& targets,
                               const CalibParams& params,
                               double max_rms = 15.0);

/// (height_m, theta_deg, coverage_pct) rows, with a header line.
std::vector<CalibRow> read_target_csv(const std::string& path);

}  // namespace vcselcov
