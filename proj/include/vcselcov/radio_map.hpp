#pragma once
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "vcselcov/optics.hpp"
#include "vcselcov/scene.hpp"

namespace vcselcov {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Per-grid-point SINR statistics for one (height, divergence) pair.
struct SinrMap {
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<double> sinr;    // linear, >= 0, indexed ix*ny + iy
    std::vector<int> serving;    // dominant beam index (lowest on ties)
    std::vector<uint8_t> covered;
    double coverage_pct = 0.0;   // 100 * covered / N_grid
    double hole_pct = 100.0;

    std::size_t size() const { return nx * ny; }
};

/// Received power for every (grid point, emitter) pair. Row = grid point
/// (x-major: row index ix*ny+iy), column = emitter.
Matrix power_matrix(const BeamSet& beams, const ReceiverGrid& grid,
                    const FrontEnd& front, double p_t, double theta_gauss);

/// Reduce a power matrix to SINR, serving index, covered flag and coverage.
/// The serving beam is the power argmax; SINR = P* / (sum of the rest + n0).
SinrMap sinr_map(const Matrix& powers, std::size_t nx, std::size_t ny,
                 double n0, double gamma_th_db);

struct CoverageResult {
    double coverage_pct;
    SinrMap map;
};

/// End-to-end objective: beams (aimed per cfg.target_plane_z, defaulting to
/// the evaluated plane) -> power matrix -> SINR map at receiver height h_r for
/// the nominal divergence action theta_action (radians). Deterministic.
CoverageResult coverage(const SceneConfig& cfg, double h_r, double theta_action);

/// CSV export: header x,y,sinr_db,serving,covered; y-major row order; 6
/// significant digits.
void write_sinr_csv(std::ostream& os, const SinrMap& map, const ReceiverGrid& grid);

}  // namespace vcselcov
