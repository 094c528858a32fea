#include "indigo/rewards.hpp"

namespace indigo {

void FlipConfig::validate() const {
  if (p_fp < 0.0 || p_fp > 1.0 || p_fn < 0.0 || p_fn > 1.0)
    throw std::invalid_argument("FlipConfig: rates must be in [0,1]");
  if (p_fp > 0.0 && p_fn > 0.0)
    throw std::invalid_argument("FlipConfig: at most one rate may be nonzero");
}

double true_reward(const GroundTruthState& next_state,
                   const GroundTruthState& goal_state, const GoalEnv& env,
                   const RewardConstants& c) {
  return env.true_success(next_state, goal_state) ? c.r_plus : c.r_minus;
}

double indicator_reward(const Observation& next_obs, const Observation& goal_obs,
                        const RewardConstants& c) {
  return obs_equal(next_obs, goal_obs) ? c.r_plus : c.r_minus;
}

double flip_reward(double r, bool truth_is_positive, const FlipConfig& cfg,
                   const RewardConstants& c, Rng& rng) {
  const double u = rng.uniform();  // one draw per call, unconditionally
  if (truth_is_positive && u < cfg.p_fn) return c.r_minus;
  if (!truth_is_positive && u < cfg.p_fp) return c.r_plus;
  return r;
}

RewardDiagnostics diagnose_batch(std::span<const double> assigned,
                                 std::span<const GroundTruthState> next_states,
                                 std::span<const GroundTruthState> goal_states,
                                 const GoalEnv& env, const RewardConstants& c) {
  if (assigned.size() != next_states.size() ||
      assigned.size() != goal_states.size())
    throw DimensionError("diagnose_batch: spans must be parallel");
  if (assigned.empty())
    throw std::invalid_argument("diagnose_batch: empty batch");

  std::size_t fn = 0, fp = 0, correct = 0, positive = 0;
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    if (next_states[i].empty() || goal_states[i].empty())
      throw DiagnosticsUnavailable("diagnose_batch: missing ground truth");
    const bool truth = env.true_success(next_states[i], goal_states[i]);
    const bool assigned_pos = assigned[i] == c.r_plus;
    if (assigned_pos) ++positive;
    if (assigned_pos == truth) ++correct;
    if (!assigned_pos && truth) ++fn;
    if (assigned_pos && !truth) ++fp;
  }
  const double n = static_cast<double>(assigned.size());
  return RewardDiagnostics{fn / n, fp / n, correct / n, positive / n};
}

RelabelRewardFn make_indicator_reward_fn(const RewardConstants& c) {
  return [c](const Transition& tr, const Observation& goal_obs,
             const GroundTruthState&) {
    return indicator_reward(tr.next_obs, goal_obs, c);
  };
}

RelabelRewardFn make_oracle_reward_fn(const GoalEnv& env,
                                      const RewardConstants& c) {
  return [&env, c](const Transition& tr, const Observation&,
                   const GroundTruthState& goal_state) {
    return true_reward(tr.next_state, goal_state, env, c);
  };
}

RelabelRewardFn make_flipped_oracle_reward_fn(const GoalEnv& env,
                                              const RewardConstants& c,
                                              FlipConfig flip, Rng& flip_rng) {
  flip.validate();
  return [&env, c, flip, &flip_rng](const Transition& tr, const Observation&,
                                    const GroundTruthState& goal_state) {
    const bool truth = env.true_success(tr.next_state, goal_state);
    const double r = truth ? c.r_plus : c.r_minus;
    return flip_reward(r, truth, flip, c, flip_rng);
  };
}

}  // namespace indigo
