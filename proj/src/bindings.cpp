#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vcselcov/agent.hpp"
#include "vcselcov/baseline.hpp"
#include "vcselcov/calibrate.hpp"
#include "vcselcov/radio_map.hpp"
#include "vcselcov/version.hpp"

namespace py = pybind11;
using namespace vcselcov;

namespace {

py::array_t<double> grid_array(const std::vector<double>& flat, std::size_t nx,
                               std::size_t ny) {
    py::array_t<double> out({nx, ny});
    auto buf = out.mutable_unchecked<2>();
    for (std::size_t ix = 0; ix < nx; ++ix)
        for (std::size_t iy = 0; iy < ny; ++iy) buf(ix, iy) = flat[ix * ny + iy];
    return out;
}

py::dict policy_dict(const Policy& policy) {
    py::list heights, thetas, coverages, actions;
    for (const auto& e : policy.entries) {
        heights.append(e.height_m);
        actions.append(e.action_idx);
        thetas.append(e.theta_deg);
        coverages.append(e.coverage_pct);
    }
    py::dict d;
    d["height_m"] = heights;
    d["action_idx"] = actions;
    d["theta_deg"] = thetas;
    d["coverage_pct"] = coverages;
    return d;
}

VCSELEnv make_env(const Config& cfg) {
    return VCSELEnv(cfg.scene, cfg.states, cfg.actions,
                    {cfg.traversal, cfg.seed, true, nullptr});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "VCSEL-array optical downlink coverage simulator with Q-learning "
              "divergence control";
    m.attr("__version__") = kVersion;

    py::class_<Config>(m, "Config")
        .def(py::init<>())
        .def_property(
            "n0", [](const Config& c) { return c.scene.n0; },
            [](Config& c, double v) { c.scene.n0 = v; })
        .def_property(
            "p_t", [](const Config& c) { return c.scene.p_t; },
            [](Config& c, double v) { c.scene.p_t = v; })
        .def_property(
            "grid_step", [](const Config& c) { return c.scene.grid_step; },
            [](Config& c, double v) { c.scene.grid_step = v; })
        .def_property(
            "n_tx_side", [](const Config& c) { return c.scene.n_tx_side; },
            [](Config& c, int v) { c.scene.n_tx_side = v; })
        .def_property(
            "divergence_scale", [](const Config& c) { return c.scene.divergence_scale; },
            [](Config& c, double v) { c.scene.divergence_scale = v; })
        .def_property(
            "episodes", [](const Config& c) { return c.rl.episodes; },
            [](Config& c, int v) { c.rl.episodes = v; })
        .def_property(
            "seed", [](const Config& c) { return c.seed; },
            [](Config& c, std::uint64_t v) { c.seed = v; })
        .def_property(
            "heights", [](const Config& c) { return c.states.heights; },
            [](Config& c, std::vector<double> v) { c.states.heights = std::move(v); })
        .def_property(
            "divergences_deg",
            [](const Config& c) {
                std::vector<double> degs;
                for (double r : c.actions.divergences) degs.push_back(rad_to_deg(r));
                return degs;
            },
            [](Config& c, const std::vector<double>& degs) {
                c.actions.divergences.clear();
                for (double d : degs) c.actions.divergences.push_back(deg_to_rad(d));
            })
        .def("validate", &Config::validate)
        .def("to_json", &config_to_json);

    m.def("load_config", &load_config, py::arg("path"));
    m.def("parse_config", &parse_config, py::arg("json_text"));

    m.def(
        "coverage",
        [](const Config& cfg, double height, double theta_deg) {
            const auto result = coverage(cfg.scene, height, deg_to_rad(theta_deg));
            py::dict d;
            d["coverage_pct"] = result.coverage_pct;
            d["sinr"] = grid_array(result.map.sinr, result.map.nx, result.map.ny);
            std::vector<double> serving(result.map.serving.begin(), result.map.serving.end());
            std::vector<double> covered(result.map.covered.begin(), result.map.covered.end());
            d["serving"] = grid_array(serving, result.map.nx, result.map.ny);
            d["covered"] = grid_array(covered, result.map.nx, result.map.ny);
            return d;
        },
        py::arg("config"), py::arg("height"), py::arg("theta_deg"),
        "SINR coverage statistics for one (receiver height, nominal divergence)");

    m.def(
        "train",
        [](const Config& cfg, std::optional<int> episodes, std::optional<std::uint64_t> seed,
           bool early_stop) {
            Config c = cfg;
            if (episodes) c.rl.episodes = *episodes;
            if (seed) c.seed = *seed;
            c.validate();
            VCSELEnv env = make_env(c);
            QTable table(env.n_states(), env.n_actions(), c.rl.alpha, c.rl.gamma);
            const ExplorationSchedule schedule{c.rl.eps_max, c.rl.eps_min, c.rl.lambda};
            TrainOptions opts;
            opts.episodes = c.rl.episodes;
            opts.seed = c.seed;
            opts.early_stop = early_stop;
            const TrainResult result = train(env, table, schedule, opts);

            const std::size_t n = result.log.rows.size();
            py::array_t<double> eps(n), mean_reward(n), ma50(n);
            py::array_t<int> episode(n);
            auto e = episode.mutable_unchecked<1>();
            auto p = eps.mutable_unchecked<1>();
            auto r = mean_reward.mutable_unchecked<1>();
            auto a = ma50.mutable_unchecked<1>();
            for (std::size_t i = 0; i < n; ++i) {
                const auto& row = result.log.rows[i];
                e(i) = row.episode;
                p(i) = row.eps;
                r(i) = row.mean_reward;
                a(i) = row.ma50;
            }
            py::dict log;
            log["episode"] = episode;
            log["epsilon"] = eps;
            log["mean_reward"] = mean_reward;
            log["ma50"] = ma50;

            py::array_t<double> q({env.n_states(), env.n_actions()});
            auto qb = q.mutable_unchecked<2>();
            for (std::size_t s = 0; s < env.n_states(); ++s)
                for (std::size_t ai = 0; ai < env.n_actions(); ++ai)
                    qb(s, ai) = table.q(s, ai);

            py::dict d;
            d["policy"] = policy_dict(result.policy);
            d["log"] = log;
            d["q"] = q;
            d["coverage_evaluations"] = env.coverage_evaluations();
            return d;
        },
        py::arg("config"), py::arg("episodes") = std::nullopt,
        py::arg("seed") = std::nullopt, py::arg("early_stop") = false,
        "Run the Q-learning loop; returns policy, per-episode log and the Q table");

    m.def(
        "exhaustive",
        [](const Config& cfg) {
            VCSELEnv env = make_env(cfg);
            const ExhaustiveResult result = exhaustive_policy(env);
            py::dict d;
            d["policy"] = policy_dict(result.policy);
            d["evaluations"] = result.evaluations;
            return d;
        },
        py::arg("config"), "Per-state exhaustive search over the action set");

    m.def(
        "calibrate_n0",
        [](const Config& cfg, std::optional<std::vector<std::tuple<double, double, double>>>
                                  targets) {
            std::vector<CalibRow> rows;
            if (targets) {
                for (const auto& [h, t, c] : *targets) rows.push_back({h, t, c});
            } else {
                rows = default_calibration_targets();
            }
            const CalibrationResult result = calibrate_n0(cfg.scene, rows, cfg.calib);
            py::dict d;
            d["n0"] = result.n0;
            d["rms"] = result.rms;
            py::list sweep;
            for (const auto& p : result.sweep) sweep.append(py::make_tuple(p.n0, p.rms));
            d["sweep"] = sweep;
            return d;
        },
        py::arg("config"), py::arg("targets") = std::nullopt,
        "Least-squares n0 fit against a (height, theta_deg, coverage_pct) table");
}
