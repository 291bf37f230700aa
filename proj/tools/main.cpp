#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vcselcov/agent.hpp"
#include "vcselcov/baseline.hpp"
#include "vcselcov/calibrate.hpp"
#include "vcselcov/errors.hpp"
#include "vcselcov/radio_map.hpp"
#include "vcselcov/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vcselcov;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitCalibration = 4;

struct GlobalArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::string calibration_path;
};

Config make_config(const GlobalArgs& g) {
    Config cfg = g.config_path.empty() ? Config{} : load_config(g.config_path);
    if (g.seed) cfg.seed = *g.seed;
    if (!g.calibration_path.empty()) {
        std::ifstream in(g.calibration_path);
        if (!in) throw ConfigError("cannot open calibration file: " + g.calibration_path);
        json j;
        try {
            in >> j;
            cfg.scene.n0 = j.at("n0").get<double>();
        } catch (const json::exception& e) {
            throw ConfigError(std::string("bad calibration file: ") + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

void write_file(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_metadata(const fs::path& path, const Config& cfg,
                    const json& extra = json::object()) {
    json j;
    j["version"] = kVersion;
    j["seed"] = cfg.seed;
    j["n0"] = cfg.scene.n0;
    j["divergence_scale"] = cfg.scene.divergence_scale;
    j["alpha"] = cfg.rl.alpha;
    j["gamma"] = cfg.rl.gamma;
    j["episodes"] = cfg.rl.episodes;
    j["eps_max"] = cfg.rl.eps_max;
    j["eps_min"] = cfg.rl.eps_min;
    j["lambda"] = cfg.rl.lambda;
    j["config"] = json::parse(config_to_json(cfg));
    for (const auto& [k, v] : extra.items()) j[k] = v;
    write_file(path, j.dump(2) + "\n");
}

int run_map(const GlobalArgs& g, double height, double theta_deg,
            std::optional<double> pt_override) {
    Config cfg = make_config(g);
    if (pt_override) cfg.scene.p_t = *pt_override;
    if (theta_deg <= 0.0 || theta_deg >= 90.0)
        throw GeometryError("theta must lie in (0, 90) degrees");

    const auto result = coverage(cfg.scene, height, deg_to_rad(theta_deg));
    const ReceiverGrid grid = build_grid(cfg.scene, height);

    std::ostringstream csv;
    write_sinr_csv(csv, result.map, grid);
    const fs::path out = fs::path(g.out_dir) / "sinr_map.csv";
    write_file(out, csv.str());
    write_metadata(fs::path(g.out_dir) / "run_metadata.json", cfg,
                   {{"command", "map"}, {"height", height}, {"theta_deg", theta_deg}});

    std::cout << "coverage=" << result.coverage_pct << "\n";
    return 0;
}

int run_train(const GlobalArgs& g, std::optional<int> episodes, bool early_stop) {
    Config cfg = make_config(g);
    if (episodes) cfg.rl.episodes = *episodes;
    cfg.validate();

    VCSELEnv env(cfg.scene, cfg.states, cfg.actions,
                 {cfg.traversal, cfg.seed, true, nullptr});
    QTable table(env.n_states(), env.n_actions(), cfg.rl.alpha, cfg.rl.gamma);
    const ExplorationSchedule schedule{cfg.rl.eps_max, cfg.rl.eps_min, cfg.rl.lambda};
    TrainOptions opts;
    opts.episodes = cfg.rl.episodes;
    opts.seed = cfg.seed;
    opts.early_stop = early_stop;
    const TrainResult result = train(env, table, schedule, opts);

    std::ostringstream policy_csv, log_csv;
    write_policy_csv(policy_csv, result.policy);
    write_trainlog_csv(log_csv, result.log);
    write_file(fs::path(g.out_dir) / "policy.csv", policy_csv.str());
    write_file(fs::path(g.out_dir) / "trainlog.csv", log_csv.str());
    write_metadata(fs::path(g.out_dir) / "run_metadata.json", cfg,
                   {{"command", "train"},
                    {"episodes_run", result.log.rows.size()},
                    {"coverage_evaluations", env.coverage_evaluations()}});

    std::cout << "episodes=" << result.log.rows.size()
              << " final_ma50=" << result.log.rows.back().ma50 << "\n";
    return 0;
}

int run_baseline(const GlobalArgs& g) {
    Config cfg = make_config(g);
    VCSELEnv env(cfg.scene, cfg.states, cfg.actions,
                 {cfg.traversal, cfg.seed, true, nullptr});
    const ExhaustiveResult result = exhaustive_policy(env);

    std::ostringstream csv;
    write_policy_csv(csv, result.policy);
    write_file(fs::path(g.out_dir) / "es_policy.csv", csv.str());
    write_metadata(fs::path(g.out_dir) / "run_metadata.json", cfg,
                   {{"command", "baseline"}, {"coverage_evaluations", result.evaluations}});

    std::cout << "evaluations=" << result.evaluations << "\n";
    return 0;
}

int run_calibrate(const GlobalArgs& g, const std::string& target_path) {
    Config cfg = make_config(g);
    const auto targets = target_path.empty() ? default_calibration_targets()
                                             : read_target_csv(target_path);
    const CalibrationResult result = calibrate_n0(cfg.scene, targets, cfg.calib);

    json j;
    j["n0"] = result.n0;
    j["rms"] = result.rms;
    j["version"] = kVersion;
    json sweep = json::array();
    for (const auto& p : result.sweep) sweep.push_back({{"n0", p.n0}, {"rms", p.rms}});
    j["sweep"] = sweep;
    json tgt = json::array();
    for (const auto& r : targets)
        tgt.push_back({{"height_m", r.height_m},
                       {"theta_deg", r.theta_deg},
                       {"coverage_pct", r.coverage_pct}});
    j["targets"] = tgt;
    write_file(fs::path(g.out_dir) / "calibration.json", j.dump(2) + "\n");

    std::cout << "n0=" << result.n0 << " rms=" << result.rms << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"VCSEL-array optical downlink coverage simulator and divergence-control trainer"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--config", g.config_path, "JSON config file (defaults embedded)");
    app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", g.seed, "RNG seed override");
    app.add_option("--calibration", g.calibration_path,
                   "calibration.json whose n0 overrides the config");

    auto* map_cmd = app.add_subcommand("map", "SINR map for one (height, divergence)");
    double height = 1.0;
    double theta_deg = 10.0;
    std::optional<double> pt_override;
    map_cmd->add_option("--height", height, "receiver height, m")->required();
    map_cmd->add_option("--theta", theta_deg, "nominal divergence, degrees")->required();
    map_cmd->add_option("--pt", pt_override, "per-emitter power override, W");

    auto* train_cmd = app.add_subcommand("train", "Q-learning divergence policy");
    std::optional<int> episodes;
    bool early_stop = false;
    train_cmd->add_option("--episodes", episodes, "episode budget override");
    train_cmd->add_flag("--early-stop", early_stop,
                        "stop after 100 calm episodes (max |dQ| < 1e-6)");

    auto* baseline_cmd = app.add_subcommand("baseline", "exhaustive-search policy");

    auto* calib_cmd = app.add_subcommand("calibrate-n0", "fit n0 to a coverage table");
    std::string target_path;
    calib_cmd->add_option("--target-table", target_path,
                          "CSV of height_m,theta_deg,coverage_pct rows");

    CLI11_PARSE(app, argc, argv);

    try {
        if (map_cmd->parsed()) return run_map(g, height, theta_deg, pt_override);
        if (train_cmd->parsed()) return run_train(g, episodes, early_stop);
        if (baseline_cmd->parsed()) return run_baseline(g);
        if (calib_cmd->parsed()) return run_calibrate(g, target_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return kExitGeometry;
    } catch (const CalibrationError& e) {
        std::cerr << "calibration error: " << e.what() << "\n";
        return kExitCalibration;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
