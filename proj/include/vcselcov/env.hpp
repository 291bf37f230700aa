#pragma once
#include <cstdint>
#include <memory>
#include <vector>

#include "vcselcov/radio_map.hpp"
#include "vcselcov/rng.hpp"
#include "vcselcov/scene.hpp"

namespace vcselcov {

/// Memoized coverage rewards, one slot per (state, action). Rewards are
/// deterministic, so a filled entry never changes. Sharable between the
/// training env and the exhaustive baseline so both see identical values.
class RewardCache {
public:
    RewardCache(std::size_t n_states, std::size_t n_actions)
        : n_actions_(n_actions),
          values_(n_states * n_actions, 0.0),
          filled_(n_states * n_actions, 0) {}

    bool has(std::size_t s, std::size_t a) const { return filled_[s * n_actions_ + a] != 0; }
    double get(std::size_t s, std::size_t a) const { return values_[s * n_actions_ + a]; }
    void put(std::size_t s, std::size_t a, double v) {
        values_[s * n_actions_ + a] = v;
        filled_[s * n_actions_ + a] = 1;
    }

    /// Coverage computations performed on behalf of this cache.
    std::size_t evaluations() const { return evaluations_; }
    void count_evaluation() { ++evaluations_; }

private:
    std::size_t n_actions_;
    std::vector<double> values_;
    std::vector<uint8_t> filled_;
    std::size_t evaluations_ = 0;
};

struct EnvState {
    std::size_t state_idx = 0;
    bool done = false;
};

struct StepResult {
    EnvState next;
    double reward;  // coverage percentage of (height, action)
    bool done;
};

/// MDP environment: one episode visits every receiver height once; the action
/// (divergence) never influences the transition. Single consumer.
class VCSELEnv {
public:
    struct Options {
        Traversal traversal = Traversal::Ascending;
        std::uint64_t seed = 1;        // drives random permutations only
        bool cache_enabled = true;     // disable to recompute every reward
        std::shared_ptr<RewardCache> cache{};  // optional shared cache
    };

    VCSELEnv(SceneConfig scene, StateSpace states, ActionSpace actions,
             Options options = {});

    EnvState reset();
    StepResult step(std::size_t action_idx);

    /// Reward for (state, action) from the same cache `step` uses; does not
    /// advance the episode.
    double reward_oracle(std::size_t state_idx, std::size_t action_idx);

    /// Fill every cache entry.
    void prewarm();

    std::size_t n_states() const { return states_.size(); }
    std::size_t n_actions() const { return actions_.size(); }
    const StateSpace& states() const { return states_; }
    const ActionSpace& actions() const { return actions_; }
    const SceneConfig& scene() const { return scene_; }
    std::size_t coverage_evaluations() const { return cache_->evaluations(); }
    std::shared_ptr<RewardCache> cache() const { return cache_; }

private:
    double compute_reward(std::size_t state_idx, std::size_t action_idx);

    SceneConfig scene_;
    StateSpace states_;
    ActionSpace actions_;
    Options options_;
    std::shared_ptr<RewardCache> cache_;
    Rng perm_rng_;
    std::vector<std::size_t> order_;  // visiting order for the current episode
    std::size_t cursor_ = 0;          // position within order_
    bool done_ = true;                // reset() required before stepping
};

}  // namespace vcselcov
