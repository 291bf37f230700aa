#include "vcselcov/baseline.hpp"

namespace vcselcov {

ExhaustiveResult exhaustive_policy(VCSELEnv& env) {
    const std::size_t before = env.coverage_evaluations();
    Policy policy;
    for (std::size_t s = 0; s < env.n_states(); ++s) {
        std::size_t best = 0;
        double best_r = env.reward_oracle(s, 0);
        for (std::size_t a = 1; a < env.n_actions(); ++a) {
            const double r = env.reward_oracle(s, a);
            if (r > best_r) {  // strict: ties keep the lowest action index
                best_r = r;
                best = a;
            }
        }
        policy.entries.push_back({env.states().heights[s], best,
                                  rad_to_deg(env.actions().divergences[best]), best_r});
    }
    return {policy, env.coverage_evaluations() - before};
}

}  // namespace vcselcov
