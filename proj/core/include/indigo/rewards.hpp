#pragma once

#include <functional>
#include <span>

#include "indigo/core.hpp"
#include "indigo/envs.hpp"
#include "indigo/rng.hpp"

namespace indigo {

/// Reward-flipping noise rates for the misclassification experiment. At most
/// one of the two is nonzero per experiment arm.
struct FlipConfig {
  double p_fp = 0.0;
  double p_fn = 0.0;

  void validate() const;
};

/// Batch-level reward quality, measured against ground truth. Evaluation-only:
/// the training path never sees these.
struct RewardDiagnostics {
  double fn_rate = 0.0;           // assigned R- but truth says R+
  double fp_rate = 0.0;           // assigned R+ but truth says R-
  double accuracy = 0.0;          // assigned == truth
  double positive_fraction = 0.0; // assigned R+
};

/// Thrown by diagnose_batch when ground-truth states are absent.
struct DiagnosticsUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ground-truth epsilon-ball reward: R+ iff the environment's success test
/// accepts (boundary inclusive), else R-.
double true_reward(const GroundTruthState& next_state,
                   const GroundTruthState& goal_state, const GoalEnv& env,
                   const RewardConstants& c);

/// Indicator reward: R+ iff next_obs is bit-exactly equal to goal_obs.
double indicator_reward(const Observation& next_obs, const Observation& goal_obs,
                        const RewardConstants& c);

/// Apply i.i.d. flip noise to a reward whose ground truth is known. Always
/// consumes exactly one draw, so arms with different rates stay in lockstep.
double flip_reward(double r, bool truth_is_positive, const FlipConfig& cfg,
                   const RewardConstants& c, Rng& rng);

/// Compare assigned rewards against the ground-truth reward of the relabeled
/// goal. All three spans must be parallel and ground-truth states non-empty.
RewardDiagnostics diagnose_batch(std::span<const double> assigned,
                                 std::span<const GroundTruthState> next_states,
                                 std::span<const GroundTruthState> goal_states,
                                 const GoalEnv& env, const RewardConstants& c);

/// Reward evaluated during relabeling: (transition, relabeled goal obs,
/// relabeled goal ground-truth state) -> reward. Implementations must read
/// either the observations (indicator) or the states (oracle), never both.
using RelabelRewardFn = std::function<double(
    const Transition&, const Observation& goal_obs,
    const GroundTruthState& goal_state)>;

RelabelRewardFn make_indicator_reward_fn(const RewardConstants& c);
RelabelRewardFn make_oracle_reward_fn(const GoalEnv& env, const RewardConstants& c);
/// Oracle reward with flip noise; flip_rng must outlive the returned closure.
RelabelRewardFn make_flipped_oracle_reward_fn(const GoalEnv& env,
                                              const RewardConstants& c,
                                              FlipConfig flip, Rng& flip_rng);

}  // namespace indigo
