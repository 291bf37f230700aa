#include "vcselcov/calibrate.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "vcselcov/errors.hpp"
#include "vcselcov/radio_map.hpp"

namespace vcselcov {

std::vector<CalibRow> default_calibration_targets() {
    return {{0.5, 10.0, 93.33}, {1.0, 10.0, 88.81}, {1.5, 8.0, 89.70}, {2.0, 11.0, 53.80}};
}

namespace {

/// Per-grid-point dominant power and residual interference; enough to
/// re-evaluate coverage for any n0 without touching the geometry again.
struct ReducedRow {
    std::vector<double> p_star;
    std::vector<double> rest;
};

ReducedRow reduce_row(const SceneConfig& cfg, const CalibRow& row) {
    const double theta_action = deg_to_rad(row.theta_deg);
    const double target_z = cfg.target_plane_z.value_or(row.height_m);
    const BeamSet beams = build_beams(cfg, target_z);
    const ReceiverGrid grid = build_grid(cfg, row.height_m);
    const FrontEnd front = FrontEnd::from_scene(cfg);
    const Matrix powers =
        power_matrix(beams, grid, front, cfg.p_t, cfg.divergence_scale * theta_action);

    ReducedRow out;
    out.p_star.resize(powers.rows());
    out.rest.resize(powers.rows());
    for (std::size_t r = 0; r < powers.rows(); ++r) {
        double best = powers(r, 0);
        double total = 0.0;
        for (std::size_t k = 0; k < powers.cols(); ++k) {
            const double p = powers(r, k);
            total += p;
            if (p > best) best = p;
        }
        out.p_star[r] = best;
        out.rest[r] = total - best;
    }
    return out;
}

double coverage_at(const ReducedRow& red, double n0, double threshold) {
    std::size_t covered = 0;
    for (std::size_t i = 0; i < red.p_star.size(); ++i)
        if (red.p_star[i] / (red.rest[i] + n0) >= threshold) ++covered;
    return 100.0 * static_cast<double>(covered) / static_cast<double>(red.p_star.size());
}

}  // namespace

CalibrationResult calibrate_n0(const SceneConfig& cfg,
                               const std::vector<CalibRow>& targets,
                               const CalibParams& params, double max_rms) {
    if (targets.empty()) throw ConfigError("calibration target table is empty");
    cfg.validate();

    std::vector<ReducedRow> reduced;
    reduced.reserve(targets.size());
    for (const auto& row : targets) reduced.push_back(reduce_row(cfg, row));

    const double threshold = std::pow(10.0, cfg.gamma_th_db / 10.0);
    const double decades = std::log10(params.n0_max / params.n0_min);
    const int steps = std::max(0, static_cast<int>(std::ceil(
                                      decades * params.points_per_decade - 1e-9)));

    CalibrationResult result;
    result.sweep.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        const double n0 =
            params.n0_min *
            std::pow(10.0, static_cast<double>(i) / params.points_per_decade);
        double sq_sum = 0.0;
        for (std::size_t r = 0; r < targets.size(); ++r) {
            const double err = coverage_at(reduced[r], n0, threshold) - targets[r].coverage_pct;
            sq_sum += err * err;
        }
        const double rms = std::sqrt(sq_sum / static_cast<double>(targets.size()));
        result.sweep.push_back({n0, rms});
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < result.sweep.size(); ++i)
        if (result.sweep[i].rms < result.sweep[best].rms) best = i;
    result.n0 = result.sweep[best].n0;
    result.rms = result.sweep[best].rms;

    if (result.rms > max_rms) {
        std::ostringstream msg;
        msg << "no n0 in [" << params.n0_min << ", " << params.n0_max
            << "] fits the target table: best RMS " << result.rms << " pp exceeds "
            << max_rms << " pp";
        throw CalibrationError(msg.str());
    }
    return result;
}

std::vector<CalibRow> read_target_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open target table: " + path);
    std::vector<CalibRow> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {  // header row
            first = false;
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        CalibRow row{};
        try {
            if (!std::getline(ss, field, ',')) throw ConfigError("short row");
            row.height_m = std::stod(field);
            if (!std::getline(ss, field, ',')) throw ConfigError("short row");
            row.theta_deg = std::stod(field);
            if (!std::getline(ss, field, ',')) throw ConfigError("short row");
            row.coverage_pct = std::stod(field);
        } catch (const std::exception&) {
            throw ConfigError("bad target table row: " + line);
        }
        rows.push_back(row);
    }
    if (rows.empty()) throw ConfigError("target table has no data rows: " + path);
    return rows;
}

}  // namespace vcselcov
