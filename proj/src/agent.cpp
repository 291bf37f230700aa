#include "vcselcov/agent.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <ostream>

#include "vcselcov/errors.hpp"

namespace vcselcov {

double epsilon(const ExplorationSchedule& schedule, double n_ep) {
    return schedule.eps_min +
           (schedule.eps_max - schedule.eps_min) * std::exp(-schedule.lambda * n_ep);
}

std::size_t select_action(std::span<const double> q_row, double eps, Rng& rng) {
    if (q_row.empty()) throw ConfigError("action-value row must be non-empty");
    if (rng.uniform() < eps) return rng.uniform_index(q_row.size());
    std::size_t best = 0;
    for (std::size_t a = 1; a < q_row.size(); ++a)
        if (q_row[a] > q_row[best]) best = a;
    return best;
}

void q_update(QTable& table, std::size_t s, std::size_t a, double reward,
              std::size_t s_next, bool done) {
    double target = reward;
    if (!done) {
        double best_next = table.q(s_next, 0);
        for (std::size_t a2 = 1; a2 < table.q.cols(); ++a2)
            best_next = std::max(best_next, table.q(s_next, a2));
        target += table.gamma * best_next;
    }
    table.q(s, a) += table.alpha * (target - table.q(s, a));
}

TrainResult train(VCSELEnv& env, QTable& table, const ExplorationSchedule& schedule,
                  const TrainOptions& options) {
    if (options.episodes < 1) throw ConfigError("episodes must be >= 1");
    if (table.q.rows() != env.n_states() || table.q.cols() != env.n_actions())
        throw ConfigError("Q-table shape must match the environment");

    Rng rng(options.seed);
    TrainLog log;
    log.rows.reserve(static_cast<std::size_t>(options.episodes));
    std::deque<double> window;  // trailing-50 episode means
    double window_sum = 0.0;
    int calm_episodes = 0;  // consecutive episodes with max |dQ| below threshold

    for (int ep = 1; ep <= options.episodes; ++ep) {
        const double eps = epsilon(schedule, static_cast<double>(ep));
        EnvState state = env.reset();
        double reward_sum = 0.0;
        std::size_t steps = 0;
        double max_delta = 0.0;
        bool done = false;
        while (!done) {
            const std::size_t s = state.state_idx;
            const auto& q = table.q;
            const std::span<const double> row{&q.data()[s * q.cols()], q.cols()};
            const std::size_t a = select_action(row, eps, rng);
            const StepResult res = env.step(a);
            const double before = table.q(s, a);
            q_update(table, s, a, res.reward, res.next.state_idx, res.done);
            max_delta = std::max(max_delta, std::abs(table.q(s, a) - before));
            reward_sum += res.reward;
            ++steps;
            state = res.next;
            done = res.done;
        }

        const double mean_reward = reward_sum / static_cast<double>(steps);
        window.push_back(mean_reward);
        window_sum += mean_reward;
        if (window.size() > 50) {
            window_sum -= window.front();
            window.pop_front();
        }
        log.rows.push_back(
            {ep, eps, mean_reward, window_sum / static_cast<double>(window.size())});

        if (options.early_stop) {
            calm_episodes = max_delta < options.early_stop_delta ? calm_episodes + 1 : 0;
            if (calm_episodes >= options.early_stop_window) break;
        }
    }

    Policy policy;
    for (std::size_t s = 0; s < env.n_states(); ++s) {
        std::size_t best = 0;
        for (std::size_t a = 1; a < env.n_actions(); ++a)
            if (table.q(s, a) > table.q(s, best)) best = a;
        policy.entries.push_back({env.states().heights[s], best,
                                  rad_to_deg(env.actions().divergences[best]),
                                  env.reward_oracle(s, best)});
    }
    return {policy, log};
}

void write_policy_csv(std::ostream& os, const Policy& policy) {
    os << "height_m,theta_deg,coverage_pct\n";
    char buf[96];
    for (const auto& e : policy.entries) {
        std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.6g\n", e.height_m, e.theta_deg,
                      e.coverage_pct);
        os << buf;
    }
}

void write_trainlog_csv(std::ostream& os, const TrainLog& log) {
    os << "episode,epsilon,mean_reward,ma50\n";
    char buf[128];
    for (const auto& r : log.rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.6g,%.6g,%.6g\n", r.episode, r.eps,
                      r.mean_reward, r.ma50);
        os << buf;
    }
}

}  // namespace vcselcov
