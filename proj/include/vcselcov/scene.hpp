#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcselcov/geometry.hpp"

namespace vcselcov {

/// Room, transmitter array and receiver front-end constants. Angles are
/// radians internally; config files carry them in degrees.
struct SceneConfig {
    double room_l = 8.0;   // m
    double room_w = 8.0;   // m
    double room_h = 3.0;   // m
    double grid_step = 0.2;         // m, receiver grid resolution
    int n_tx_side = 15;             // emitters per side, N_TX = n_tx_side^2
    double p_t = 0.010;             // W per emitter
    double a_d = 1e-4;              // m^2 detector area
    double fov = deg_to_rad(75.0);  // receiver half-angle field of view
    double n_conc = 1.5;            // concentrator refractive index
    double gamma_th_db = 5.0;       // SINR threshold, dB
    double n0 = 1e-14;              // W noise power (see calibrate)
    double emitter_pitch = 0.0;     // m between emitters at the ceiling
    // Height of the aiming lattice. Unset: each beam aims at the lattice cell
    // on the receiver plane being evaluated.
    std::optional<double> target_plane_z{};
    // Nominal divergence action -> Gaussian half-angle of the irradiance
    // model. Calibrated together with n0 against the reference coverage table.
    double divergence_scale = 1.0 / 6.0;

    int n_tx() const { return n_tx_side * n_tx_side; }
    void validate() const;  // throws ConfigError on violated invariants
};

/// Discrete receiver heights (the MDP states).
struct StateSpace {
    std::vector<double> heights{0.5, 1.0, 1.5, 2.0};  // m, strictly increasing
    std::size_t size() const { return heights.size(); }
};

/// Candidate divergence angles (the MDP actions), radians, strictly increasing.
struct ActionSpace {
    std::vector<double> divergences;  // nominal full-cone angles
    ActionSpace();                    // default 5..20 deg in 1 deg steps
    std::size_t size() const { return divergences.size(); }
};

/// Q-learning hyperparameters (Table-1 defaults).
struct RlParams {
    double alpha = 0.1;
    double gamma = 0.9;
    int episodes = 2000;
    double eps_max = 1.0;
    double eps_min = 0.01;
    double lambda = 0.005;
};

/// Log-spaced noise sweep for calibrate-n0.
struct CalibParams {
    double n0_min = 1e-14;
    double n0_max = 1e-4;
    int points_per_decade = 9;
};

enum class Traversal { Ascending, RandomPermutation };

/// Full run configuration: the flat key-value config file maps onto this.
struct Config {
    SceneConfig scene;
    StateSpace states;
    ActionSpace actions;
    RlParams rl;
    CalibParams calib;
    Traversal traversal = Traversal::Ascending;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Per-emitter source position and unit aim direction.
struct BeamSet {
    std::vector<Vec3> sources;
    std::vector<Vec3> directions;  // unit norm, z < 0
    std::size_t size() const { return sources.size(); }
};

/// Inclusive lattice over the floor footprint at height z.
struct ReceiverGrid {
    std::vector<double> xs;
    std::vector<double> ys;
    double z = 0.0;
    std::size_t size() const { return xs.size() * ys.size(); }
    Vec3 point(std::size_t ix, std::size_t iy) const { return {xs[ix], ys[iy], z}; }
};

/// Emitter k=(row,col) sits on a pitch-spaced lattice centered under the
/// ceiling center and aims at the center of cell (row,col) of an
/// n_tx_side x n_tx_side lattice over the floor footprint at height target_z.
BeamSet build_beams(const SceneConfig& cfg, double target_z);

ReceiverGrid build_grid(const SceneConfig& cfg, double h_r);

struct GridVector {
    Vec3 vec;        // grid point minus source
    double distance; // Euclidean norm, > 0
};

GridVector grid_vector(const Vec3& source, const Vec3& grid_point);

/// Flat JSON config I/O. Missing keys keep their defaults; unknown keys are
/// rejected. Angles in the file are degrees.
Config load_config(const std::string& path);
Config parse_config(const std::string& json_text);
std::string config_to_json(const Config& cfg);

}  // namespace vcselcov
