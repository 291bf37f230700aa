#pragma once
#include "vcselcov/agent.hpp"
#include "vcselcov/env.hpp"

namespace vcselcov {

struct ExhaustiveResult {
    Policy policy;
    std::size_t evaluations;  // coverage computations this sweep triggered
};

/// Evaluates every action for every state through the environment's reward
/// cache and returns the per-state argmax (lowest index on ties). On a cold
/// cache this costs exactly n_states * n_actions coverage computations.
ExhaustiveResult exhaustive_policy(VCSELEnv& env);

}  // namespace vcselcov
