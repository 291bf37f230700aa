#include "vcselcov/scene.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vcselcov/errors.hpp"

namespace vcselcov {

using nlohmann::json;

namespace {

bool divides_within(double span, double step, double tol = 1e-9) {
    const double ratio = span / step;
    return std::abs(ratio - std::round(ratio)) <= tol;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

}  // namespace

void SceneConfig::validate() const {
    require(room_l > 0 && room_w > 0 && room_h > 0, "room dimensions must be positive");
    require(grid_step > 0, "grid_step must be positive");
    require(p_t >= 0, "p_t must be non-negative");
    require(a_d > 0, "a_d must be positive");
    require(fov > 0 && fov < kPi / 2, "fov must lie in (0, 90) degrees");
    require(n_conc >= 1.0, "n_conc must be >= 1");
    require(n_tx_side >= 1, "n_tx_side must be >= 1");
    require(n0 > 0, "n0 must be positive");
    require(emitter_pitch >= 0, "emitter_pitch must be non-negative");
    require(divergence_scale > 0, "divergence_scale must be positive");
    require(divides_within(room_l, grid_step) && divides_within(room_w, grid_step),
            "grid_step must tile room_l and room_w exactly");
    if (target_plane_z) {
        require(*target_plane_z >= 0 && *target_plane_z < room_h,
                "target_plane_z must lie in [0, room_h)");
    }
}

ActionSpace::ActionSpace() {
    for (int deg = 5; deg <= 20; ++deg) divergences.push_back(deg_to_rad(deg));
}

void Config::validate() const {
    scene.validate();
    require(!states.heights.empty(), "heights must be non-empty");
    require(!actions.divergences.empty(), "divergences must be non-empty");
    for (std::size_t i = 0; i < states.heights.size(); ++i) {
        require(states.heights[i] > 0 && states.heights[i] < scene.room_h,
                "every height must lie in (0, room_h)");
        if (i > 0)
            require(states.heights[i] > states.heights[i - 1],
                    "heights must be strictly increasing");
    }
    for (std::size_t i = 0; i < actions.divergences.size(); ++i) {
        require(actions.divergences[i] > 0 && actions.divergences[i] < kPi / 2,
                "every divergence must lie in (0, 90) degrees");
        if (i > 0)
            require(actions.divergences[i] > actions.divergences[i - 1],
                    "divergences must be strictly increasing");
    }
    require(rl.alpha > 0 && rl.alpha <= 1, "alpha must lie in (0, 1]");
    require(rl.gamma >= 0 && rl.gamma <= 1, "gamma must lie in [0, 1]");
    require(rl.episodes >= 1, "episodes must be >= 1");
    require(rl.eps_min >= 0 && rl.eps_max <= 1 && rl.eps_min <= rl.eps_max,
            "need 0 <= eps_min <= eps_max <= 1");
    require(rl.lambda > 0, "lambda must be positive");
    require(calib.n0_min > 0 && calib.n0_max >= calib.n0_min,
            "calibration sweep bounds must satisfy 0 < n0_min <= n0_max");
    require(calib.points_per_decade >= 1, "points_per_decade must be >= 1");
}

BeamSet build_beams(const SceneConfig& cfg, double target_z) {
    if (cfg.n_tx_side < 1) throw ConfigError("n_tx_side must be >= 1");
    const int n = cfg.n_tx_side;
    const double extent = (n - 1) * cfg.emitter_pitch;
    if (extent > cfg.room_l || extent > cfg.room_w)
        throw GeometryError("emitter array wider than the room");
    if (target_z < 0 || target_z >= cfg.room_h)
        throw GeometryError("aim plane must lie in [0, room_h)");

    BeamSet beams;
    beams.sources.reserve(static_cast<std::size_t>(n) * n);
    beams.directions.reserve(static_cast<std::size_t>(n) * n);
    const double cx = cfg.room_l / 2.0;
    const double cy = cfg.room_w / 2.0;
    const double half = (n - 1) / 2.0;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const Vec3 source{cx + (c - half) * cfg.emitter_pitch,
                              cy + (r - half) * cfg.emitter_pitch, cfg.room_h};
            const Vec3 target{(c + 0.5) * cfg.room_l / n, (r + 0.5) * cfg.room_w / n,
                              target_z};
            beams.sources.push_back(source);
            beams.directions.push_back((target - source).normalized());
        }
    }
    return beams;
}

ReceiverGrid build_grid(const SceneConfig& cfg, double h_r) {
    if (h_r < 0 || h_r >= cfg.room_h)
        throw GeometryError("receiver height must lie in [0, room_h)");
    if (!(divides_within(cfg.room_l, cfg.grid_step) &&
          divides_within(cfg.room_w, cfg.grid_step)))
        throw ConfigError("grid_step must tile room_l and room_w exactly");

    ReceiverGrid grid;
    grid.z = h_r;
    const auto fill = [&](std::vector<double>& out, double span) {
        const auto count = static_cast<std::size_t>(std::llround(span / cfg.grid_step));
        out.reserve(count + 1);
        for (std::size_t i = 0; i <= count; ++i)
            out.push_back(static_cast<double>(i) * cfg.grid_step);
        out.back() = span;  // exact endpoint
    };
    fill(grid.xs, cfg.room_l);
    fill(grid.ys, cfg.room_w);
    return grid;
}

GridVector grid_vector(const Vec3& source, const Vec3& grid_point) {
    const Vec3 v = grid_point - source;
    const double d = v.norm();
    if (d <= 0.0) throw GeometryError("grid point coincides with the source");
    return {v, d};
}

namespace {

const json& key_schema() {
    // Every known file key with its default, used for validation and export.
    static const json schema = [] {
        json j;
        const Config d;
        j["room_l"] = d.scene.room_l;
        j["room_w"] = d.scene.room_w;
        j["room_h"] = d.scene.room_h;
        j["grid_step"] = d.scene.grid_step;
        j["n_tx_side"] = d.scene.n_tx_side;
        j["p_t"] = d.scene.p_t;
        j["a_d"] = d.scene.a_d;
        j["fov_deg"] = rad_to_deg(d.scene.fov);
        j["n_conc"] = d.scene.n_conc;
        j["gamma_th_db"] = d.scene.gamma_th_db;
        j["n0"] = d.scene.n0;
        j["emitter_pitch"] = d.scene.emitter_pitch;
        j["target_plane_z"] = nullptr;
        j["divergence_scale"] = d.scene.divergence_scale;
        j["heights"] = d.states.heights;
        j["divergences_deg"] = json::array();
        j["alpha"] = d.rl.alpha;
        j["gamma"] = d.rl.gamma;
        j["episodes"] = d.rl.episodes;
        j["eps_max"] = d.rl.eps_max;
        j["eps_min"] = d.rl.eps_min;
        j["lambda"] = d.rl.lambda;
        j["calib_n0_min"] = d.calib.n0_min;
        j["calib_n0_max"] = d.calib.n0_max;
        j["calib_points_per_decade"] = d.calib.points_per_decade;
        j["traversal"] = "ascending";
        j["seed"] = d.seed;
        return j;
    }();
    return schema;
}

}  // namespace

Config parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (!key_schema().contains(key)) throw ConfigError("unknown config key: " + key);
    }

    Config cfg;
    try {
        auto get = [&](const char* key, auto& out) {
            if (j.contains(key) && !j[key].is_null()) out = j[key].template get<std::decay_t<decltype(out)>>();
        };
        get("room_l", cfg.scene.room_l);
        get("room_w", cfg.scene.room_w);
        get("room_h", cfg.scene.room_h);
        get("grid_step", cfg.scene.grid_step);
        get("n_tx_side", cfg.scene.n_tx_side);
        get("p_t", cfg.scene.p_t);
        get("a_d", cfg.scene.a_d);
        if (j.contains("fov_deg")) cfg.scene.fov = deg_to_rad(j["fov_deg"].get<double>());
        get("n_conc", cfg.scene.n_conc);
        get("gamma_th_db", cfg.scene.gamma_th_db);
        get("n0", cfg.scene.n0);
        get("emitter_pitch", cfg.scene.emitter_pitch);
        if (j.contains("target_plane_z") && !j["target_plane_z"].is_null())
            cfg.scene.target_plane_z = j["target_plane_z"].get<double>();
        get("divergence_scale", cfg.scene.divergence_scale);
        if (j.contains("heights")) cfg.states.heights = j["heights"].get<std::vector<double>>();
        if (j.contains("divergences_deg")) {
            cfg.actions.divergences.clear();
            for (double deg : j["divergences_deg"].get<std::vector<double>>())
                cfg.actions.divergences.push_back(deg_to_rad(deg));
        }
        get("alpha", cfg.rl.alpha);
        get("gamma", cfg.rl.gamma);
        get("episodes", cfg.rl.episodes);
        get("eps_max", cfg.rl.eps_max);
        get("eps_min", cfg.rl.eps_min);
        get("lambda", cfg.rl.lambda);
        get("calib_n0_min", cfg.calib.n0_min);
        get("calib_n0_max", cfg.calib.n0_max);
        get("calib_points_per_decade", cfg.calib.points_per_decade);
        if (j.contains("traversal")) {
            const auto t = j["traversal"].get<std::string>();
            if (t == "ascending")
                cfg.traversal = Traversal::Ascending;
            else if (t == "random")
                cfg.traversal = Traversal::RandomPermutation;
            else
                throw ConfigError("traversal must be 'ascending' or 'random'");
        }
        get("seed", cfg.seed);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }

    cfg.validate();
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_to_json(const Config& cfg) {
    json j;
    j["room_l"] = cfg.scene.room_l;
    j["room_w"] = cfg.scene.room_w;
    j["room_h"] = cfg.scene.room_h;
    j["grid_step"] = cfg.scene.grid_step;
    j["n_tx_side"] = cfg.scene.n_tx_side;
    j["p_t"] = cfg.scene.p_t;
    j["a_d"] = cfg.scene.a_d;
    j["fov_deg"] = rad_to_deg(cfg.scene.fov);
    j["n_conc"] = cfg.scene.n_conc;
    j["gamma_th_db"] = cfg.scene.gamma_th_db;
    j["n0"] = cfg.scene.n0;
    j["emitter_pitch"] = cfg.scene.emitter_pitch;
    if (cfg.scene.target_plane_z)
        j["target_plane_z"] = *cfg.scene.target_plane_z;
    else
        j["target_plane_z"] = nullptr;
    j["divergence_scale"] = cfg.scene.divergence_scale;
    j["heights"] = cfg.states.heights;
    std::vector<double> degs;
    for (double rad : cfg.actions.divergences) degs.push_back(rad_to_deg(rad));
    j["divergences_deg"] = degs;
    j["alpha"] = cfg.rl.alpha;
    j["gamma"] = cfg.rl.gamma;
    j["episodes"] = cfg.rl.episodes;
    j["eps_max"] = cfg.rl.eps_max;
    j["eps_min"] = cfg.rl.eps_min;
    j["lambda"] = cfg.rl.lambda;
    j["calib_n0_min"] = cfg.calib.n0_min;
    j["calib_n0_max"] = cfg.calib.n0_max;
    j["calib_points_per_decade"] = cfg.calib.points_per_decade;
    j["traversal"] = cfg.traversal == Traversal::Ascending ? "ascending" : "random";
    j["seed"] = cfg.seed;
    return j.dump(2);
}

}  // namespace vcselcov
