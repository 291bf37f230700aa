#include "vcselcov/env.hpp"

#include <numeric>
#include <utility>

#include "vcselcov/errors.hpp"

namespace vcselcov {

VCSELEnv::VCSELEnv(SceneConfig scene, StateSpace states, ActionSpace actions,
                   Options options)
    : scene_(std::move(scene)),
      states_(std::move(states)),
      actions_(std::move(actions)),
      options_(std::move(options)),
      perm_rng_(options_.seed) {
    scene_.validate();
    if (states_.heights.empty()) throw ConfigError("state space must be non-empty");
    if (actions_.divergences.empty()) throw ConfigError("action space must be non-empty");
    cache_ = options_.cache ? options_.cache
                            : std::make_shared<RewardCache>(states_.size(), actions_.size());
    order_.resize(states_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
}

EnvState VCSELEnv::reset() {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    if (options_.traversal == Traversal::RandomPermutation) {
        // Fisher-Yates with the env's own generator.
        for (std::size_t i = order_.size(); i > 1; --i) {
            const std::size_t j = perm_rng_.uniform_index(i);
            std::swap(order_[i - 1], order_[j]);
        }
    }
    cursor_ = 0;
    done_ = false;
    return {order_[0], false};
}

double VCSELEnv::compute_reward(std::size_t state_idx, std::size_t action_idx) {
    cache_->count_evaluation();
    const auto result =
        coverage(scene_, states_.heights[state_idx], actions_.divergences[action_idx]);
    return result.coverage_pct;  // = 100 - hole_pct
}

double VCSELEnv::reward_oracle(std::size_t state_idx, std::size_t action_idx) {
    if (state_idx >= states_.size()) throw ConfigError("state index out of range");
    if (action_idx >= actions_.size()) throw ConfigError("action index out of range");
    if (!options_.cache_enabled) return compute_reward(state_idx, action_idx);
    if (!cache_->has(state_idx, action_idx))
        cache_->put(state_idx, action_idx, compute_reward(state_idx, action_idx));
    return cache_->get(state_idx, action_idx);
}

StepResult VCSELEnv::step(std::size_t action_idx) {
    if (done_) throw ConfigError("step() called on a finished episode; call reset()");
    if (action_idx >= actions_.size()) throw ConfigError("action index out of range");

    const std::size_t state = order_[cursor_];
    const double reward = reward_oracle(state, action_idx);

    const bool last = cursor_ + 1 == order_.size();
    done_ = last;
    const std::size_t next_state = last ? state : order_[cursor_ + 1];
    if (!last) ++cursor_;
    return {{next_state, last}, reward, last};
}

void VCSELEnv::prewarm() {
    for (std::size_t s = 0; s < states_.size(); ++s)
        for (std::size_t a = 0; a < actions_.size(); ++a) reward_oracle(s, a);
}

}  // namespace vcselcov
