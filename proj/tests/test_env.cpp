#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "vcselcov/env.hpp"
#include "vcselcov/errors.hpp"

using namespace vcselcov;

namespace {

/// Coarse 3x3-emitter scene so reward computations stay cheap.
Config tiny_config() {
    Config cfg;
    cfg.scene.room_l = cfg.scene.room_w = 4.0;
    cfg.scene.grid_step = 1.0;
    cfg.scene.n_tx_side = 3;
    cfg.scene.n0 = 1e-12;
    cfg.states.heights = {0.5, 1.0, 1.5, 2.0};
    return cfg;
}

VCSELEnv make_env(const Config& cfg, VCSELEnv::Options opts = {}) {
    return VCSELEnv(cfg.scene, cfg.states, cfg.actions, opts);
}

}  // namespace

TEST_CASE("reset returns the first state and is idempotent") {
    const Config cfg = tiny_config();
    VCSELEnv env = make_env(cfg);
    const EnvState s0 = env.reset();
    CHECK(s0.state_idx == 0);
    CHECK_FALSE(s0.done);
    env.step(0);
    env.step(1);
    const EnvState again = env.reset();
    CHECK(again.state_idx == 0);
    CHECK_FALSE(again.done);
    const EnvState twice = env.reset();
    CHECK(twice.state_idx == 0);
}

TEST_CASE("episodes traverse all heights in order and terminate") {
    const Config cfg = tiny_config();
    VCSELEnv env = make_env(cfg);
    env.reset();
    StepResult r1 = env.step(3);
    CHECK(r1.next.state_idx == 1);
    CHECK_FALSE(r1.done);
    StepResult r2 = env.step(0);
    CHECK(r2.next.state_idx == 2);
    StepResult r3 = env.step(7);
    CHECK(r3.next.state_idx == 3);
    CHECK_FALSE(r3.done);
    StepResult r4 = env.step(15);  // last height: terminal
    CHECK(r4.done);
    CHECK(r4.next.done);
    CHECK_THROWS_AS(env.step(0), ConfigError);
}

TEST_CASE("transitions ignore the chosen action") {
    const Config cfg = tiny_config();
    VCSELEnv env = make_env(cfg);
    for (std::size_t a : {0UL, 5UL, 15UL}) {
        env.reset();
        const StepResult r = env.step(a);
        CHECK(r.next.state_idx == 1);
        CHECK_FALSE(r.done);
    }
}

TEST_CASE("step rejects out-of-range actions") {
    const Config cfg = tiny_config();
    VCSELEnv env = make_env(cfg);
    env.reset();
    CHECK_THROWS_AS(env.step(16), ConfigError);
    CHECK_THROWS_AS(env.reward_oracle(4, 0), ConfigError);
    CHECK_THROWS_AS(env.reward_oracle(0, 16), ConfigError);
}

TEST_CASE("rewards come from the shared cache and are memoized") {
    const Config cfg = tiny_config();
    VCSELEnv env = make_env(cfg);

    const double oracle_r = env.reward_oracle(0, 2);
    CHECK(env.coverage_evaluations() == 1);
    CHECK(env.reward_oracle(0, 2) == oracle_r);  // cache hit
    CHECK(env.coverage_evaluations() == 1);

    env.reset();
    const StepResult r = env.step(2);
    CHECK(r.reward == oracle_r);  // step shares the cache
    CHECK(env.coverage_evaluations() == 1);

    // Full sweep touches every pair exactly once.
    for (std::size_t s = 0; s < env.n_states(); ++s)
        for (std::size_t a = 0; a < env.n_actions(); ++a) env.reward_oracle(s, a);
    CHECK(env.coverage_evaluations() == env.n_states() * env.n_actions());
    env.prewarm();
    CHECK(env.coverage_evaluations() == env.n_states() * env.n_actions());
}

TEST_CASE("reward equals coverage percentage: 100 - hole") {
    const Config cfg = tiny_config();
    VCSELEnv env = make_env(cfg);
    const double r = env.reward_oracle(1, 4);
    const CoverageResult direct =
        coverage(cfg.scene, cfg.states.heights[1], cfg.actions.divergences[4]);
    CHECK(r == direct.coverage_pct);
    CHECK(r == doctest::Approx(100.0 - direct.map.hole_pct).epsilon(1e-12));
}

TEST_CASE("cache transparency: disabling the cache changes nothing") {
    const Config cfg = tiny_config();
    VCSELEnv cached = make_env(cfg);
    VCSELEnv uncached = make_env(cfg, {Traversal::Ascending, 1, false, nullptr});
    for (std::size_t s = 0; s < cached.n_states(); ++s)
        for (std::size_t a = 0; a < cached.n_actions(); ++a)
            CHECK(cached.reward_oracle(s, a) == uncached.reward_oracle(s, a));
    // The uncached env recomputed every repeat query.
    uncached.reward_oracle(0, 0);
    uncached.reward_oracle(0, 0);
    CHECK(uncached.coverage_evaluations() >
          uncached.n_states() * uncached.n_actions());
}

TEST_CASE("a shared cache avoids recomputation across environments") {
    const Config cfg = tiny_config();
    VCSELEnv first = make_env(cfg);
    first.prewarm();
    const std::size_t warm = first.coverage_evaluations();
    VCSELEnv second = make_env(cfg, {Traversal::Ascending, 1, true, first.cache()});
    second.reset();
    second.step(0);
    second.reward_oracle(3, 15);
    CHECK(second.coverage_evaluations() == warm);  // no new evaluations
}

TEST_CASE("random-permutation traversal visits every state once, seeded") {
    Config cfg = tiny_config();
    VCSELEnv env = make_env(cfg, {Traversal::RandomPermutation, 99, true, nullptr});
    VCSELEnv env2 = make_env(cfg, {Traversal::RandomPermutation, 99, true, nullptr});
    for (int ep = 0; ep < 5; ++ep) {
        std::vector<std::size_t> visited;
        EnvState s = env.reset();
        EnvState s2 = env2.reset();
        CHECK(s.state_idx == s2.state_idx);  // same seed, same permutation
        bool done = false;
        while (!done) {
            visited.push_back(s.state_idx);
            const StepResult r = env.step(0);
            const StepResult r2 = env2.step(0);
            CHECK(r.next.state_idx == r2.next.state_idx);
            s = r.next;
            done = r.done;
        }
        std::sort(visited.begin(), visited.end());
        CHECK(visited == std::vector<std::size_t>{0, 1, 2, 3});
    }
}
