#pragma once
#include <cstdint>
#include <span>
#include <vector>

#include "vcselcov/env.hpp"
#include "vcselcov/radio_map.hpp"
#include "vcselcov/rng.hpp"

namespace vcselcov {

/// Action-value table with its learning constants. Entries start at zero.
struct QTable {
    Matrix q;      // n_states x n_actions
    double alpha;  // learning rate
    double gamma;  // discount in [0, 1]

    QTable(std::size_t n_states, std::size_t n_actions, double alpha_, double gamma_)
        : q(n_states, n_actions, 0.0), alpha(alpha_), gamma(gamma_) {}
};

/// Exponential exploration decay eps(n) = eps_min + (eps_max - eps_min) e^(-lambda n).
struct ExplorationSchedule {
    double eps_max = 1.0;
    double eps_min = 0.01;
    double lambda = 0.005;
};

double epsilon(const ExplorationSchedule& schedule, double n_ep);

/// Epsilon-greedy draw: explore uniformly with probability eps, otherwise the
/// greedy argmax with ties to the lowest index.
std::size_t select_action(std::span<const double> q_row, double eps, Rng& rng);

/// One Q-learning update; no bootstrapping at the terminal step.
void q_update(QTable& table, std::size_t s, std::size_t a, double reward,
              std::size_t s_next, bool done);

struct PolicyEntry {
    double height_m;
    std::size_t action_idx;
    double theta_deg;      // nominal divergence of the chosen action
    double coverage_pct;   // achieved coverage of (height, action)
};

struct Policy {
    std::vector<PolicyEntry> entries;
};

struct TrainLogRow {
    int episode;           // 1-based
    double eps;
    double mean_reward;    // mean of the per-step rewards in the episode
    double ma50;           // moving average over the trailing 50 episodes
};

struct TrainLog {
    std::vector<TrainLogRow> rows;
};

struct TrainOptions {
    int episodes = 2000;
    std::uint64_t seed = 1;
    // Opt-in early stop: max |dQ| < 1e-6 over 100 consecutive episodes.
    bool early_stop = false;
    double early_stop_delta = 1e-6;
    int early_stop_window = 100;
};

struct TrainResult {
    Policy policy;
    TrainLog log;
};

/// Runs the tabular Q-learning loop against the environment; deterministic
/// given the seed. The returned greedy policy reads its coverage from the
/// environment's reward cache.
TrainResult train(VCSELEnv& env, QTable& table, const ExplorationSchedule& schedule,
                  const TrainOptions& options);

void write_policy_csv(std::ostream& os, const Policy& policy);
void write_trainlog_csv(std::ostream& os, const TrainLog& log);

}  // namespace vcselcov
