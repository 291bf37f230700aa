#include "vcselcov/radio_map.hpp"
#include <algorithm>

#include <cmath>
#include <cstdio>
#include <ostream>

#include "vcselcov/errors.hpp"

namespace vcselcov {

Matrix power_matrix(const BeamSet& beams, const ReceiverGrid& grid,
                    const FrontEnd& front, double p_t, double theta_gauss) {
    const std::size_t nx = grid.xs.size();
    const std::size_t ny = grid.ys.size();
    const std::size_t n_tx = beams.size();
    Matrix powers(nx * ny, n_tx);

    for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const Vec3 pt = grid.point(ix, iy);
            const std::size_t row = ix * ny + iy;
            for (std::size_t k = 0; k < n_tx; ++k) {
                const auto [vec, d] = grid_vector(beams.sources[k], pt);
                const double theta_diff = angular_deviation(beams.directions[k], vec);
                const double irr = irradiance(p_t, theta_gauss, d, theta_diff);
                // Horizontal receiver: incidence from the vertical drop. The
                // cosine is clamped so vertical rays cannot round past 1.
                const double cos_inc =
                    std::clamp((beams.sources[k].z - pt.z) / d, -1.0, 1.0);
                const double incidence = std::acos(cos_inc);
                powers(row, k) = received_power(irr, front, incidence);
            }
        }
    }
    return powers;
}

SinrMap sinr_map(const Matrix& powers, std::size_t nx, std::size_t ny,
                 double n0, double gamma_th_db) {
    if (n0 <= 0.0) throw ConfigError("n0 must be positive");
    const std::size_t n_grid = powers.rows();
    const std::size_t n_tx = powers.cols();

    SinrMap map;
    map.nx = nx;
    map.ny = ny;
    map.sinr.resize(n_grid);
    map.serving.resize(n_grid);
    map.covered.resize(n_grid);

    const double threshold = std::pow(10.0, gamma_th_db / 10.0);
    std::size_t n_covered = 0;
    for (std::size_t row = 0; row < n_grid; ++row) {
        std::size_t best = 0;
        double best_p = powers(row, 0);
        double total = 0.0;
        for (std::size_t k = 0; k < n_tx; ++k) {
            const double p = powers(row, k);
            total += p;
            if (p > best_p) {  // strict: ties keep the lowest index
                best_p = p;
                best = k;
            }
        }
        const double sinr = best_p / (total - best_p + n0);
        map.sinr[row] = sinr;
        map.serving[row] = static_cast<int>(best);
        map.covered[row] = sinr >= threshold ? 1 : 0;
        n_covered += map.covered[row];
    }
    map.coverage_pct = 100.0 * static_cast<double>(n_covered) / static_cast<double>(n_grid);
    map.hole_pct = 100.0 - map.coverage_pct;
    return map;
}

CoverageResult coverage(const SceneConfig& cfg, double h_r, double theta_action) {
    if (h_r <= 0.0 || h_r >= cfg.room_h)
        throw GeometryError("receiver height must lie in (0, room_h)");
    const double target_z = cfg.target_plane_z.value_or(h_r);
    const BeamSet beams = build_beams(cfg, target_z);
    const ReceiverGrid grid = build_grid(cfg, h_r);
    const FrontEnd front = FrontEnd::from_scene(cfg);
    const double theta_gauss = cfg.divergence_scale * theta_action;
    const Matrix powers = power_matrix(beams, grid, front, cfg.p_t, theta_gauss);
    SinrMap map = sinr_map(powers, grid.xs.size(), grid.ys.size(), cfg.n0, cfg.gamma_th_db);
    const double pct = map.coverage_pct;
    return {pct, std::move(map)};
}

void write_sinr_csv(std::ostream& os, const SinrMap& map, const ReceiverGrid& grid) {
    os << "x,y,sinr_db,serving,covered\n";
    char buf[128];
    for (std::size_t iy = 0; iy < map.ny; ++iy) {
        for (std::size_t ix = 0; ix < map.nx; ++ix) {
            const std::size_t row = ix * map.ny + iy;
            const double sinr_db = 10.0 * std::log10(map.sinr[row]);
            std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.6g,%d,%d\n", grid.xs[ix],
                          grid.ys[iy], sinr_db, map.serving[row],
                          static_cast<int>(map.covered[row]));
            os << buf;
        }
    }
}

}  // namespace vcselcov
