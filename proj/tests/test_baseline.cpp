#include <doctest.h>

#include "vcselcov/agent.hpp"
#include "vcselcov/baseline.hpp"

using namespace vcselcov;

namespace {

Config tiny_config() {
    Config cfg;
    cfg.scene.room_l = cfg.scene.room_w = 4.0;
    cfg.scene.grid_step = 1.0;
    cfg.scene.n_tx_side = 3;
    cfg.scene.n0 = 1e-12;
    return cfg;
}

}  // namespace

TEST_CASE("exhaustive search: cold-cache cost and manual argmax agreement") {
    const Config cfg = tiny_config();
    VCSELEnv env(cfg.scene, cfg.states, cfg.actions, {});
    const ExhaustiveResult result = exhaustive_policy(env);
    CHECK(result.evaluations == env.n_states() * env.n_actions());
    REQUIRE(result.policy.entries.size() == env.n_states());
    for (std::size_t s = 0; s < env.n_states(); ++s) {
        std::size_t best = 0;
        for (std::size_t a = 1; a < env.n_actions(); ++a)
            if (env.reward_oracle(s, a) > env.reward_oracle(s, best)) best = a;
        CHECK(result.policy.entries[s].action_idx == best);
        CHECK(result.policy.entries[s].coverage_pct == env.reward_oracle(s, best));
        CHECK(result.policy.entries[s].height_m == cfg.states.heights[s]);
    }
    // Warm cache: a second sweep costs nothing.
    const ExhaustiveResult again = exhaustive_policy(env);
    CHECK(again.evaluations == 0);
}

TEST_CASE("exhaustive search: single-action space picks it everywhere") {
    Config cfg = tiny_config();
    cfg.actions.divergences = {deg_to_rad(12.0)};
    VCSELEnv env(cfg.scene, cfg.states, cfg.actions, {});
    const ExhaustiveResult result = exhaustive_policy(env);
    for (const auto& e : result.policy.entries) {
        CHECK(e.action_idx == 0);
        CHECK(e.theta_deg == doctest::Approx(12.0));
    }
}

TEST_CASE("exhaustive coverage upper-bounds any trained policy") {
    const Config cfg = tiny_config();
    VCSELEnv env(cfg.scene, cfg.states, cfg.actions, {});
    const ExhaustiveResult es = exhaustive_policy(env);

    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        VCSELEnv rl_env(cfg.scene, cfg.states, cfg.actions,
                        {Traversal::Ascending, seed, true, env.cache()});
        QTable table(rl_env.n_states(), rl_env.n_actions(), 0.1, 0.9);
        TrainOptions opts;
        opts.episodes = 2000;
        opts.seed = seed;
        const TrainResult rl = train(rl_env, table, ExplorationSchedule{}, opts);
        for (std::size_t s = 0; s < env.n_states(); ++s)
            CHECK(es.policy.entries[s].coverage_pct >=
                  rl.policy.entries[s].coverage_pct);
    }
}
