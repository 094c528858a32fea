#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "indigo/core.hpp"
#include "indigo/rewards.hpp"
#include "indigo/rng.hpp"

namespace indigo {

/// Relabeling mix. p1: replace the goal with the achieved next observation
/// (guaranteed positive), p2: with an observation from a future step of the
/// same episode, p3: keep the original goal.
struct RelabelConfig {
  double p1 = 0.45;
  double p2 = 0.45;
  double p3 = 0.10;
  std::size_t capacity = 1'000'000;  // transitions
  int batch_size = 256;

  void validate() const;
};

/// Q-threshold reward filtering. q0 must lie strictly between the highest Q
/// of a truly-negative step and the Q of a goal-achieving step.
struct FilterConfig {
  double q0 = 0.0;
  bool enabled = false;
};

enum class RelabelBranch { achieved, future, original };

/// One training sample after relabeling. The ground-truth fields are carried
/// for diagnostics and the Oracle reward only.
struct RelabeledSample {
  Observation obs;
  Action action;
  Observation next_obs;
  Observation goal_obs;
  double reward = 0.0;
  RelabelBranch branch = RelabelBranch::original;
  GroundTruthState next_state;
  GroundTruthState goal_state;
};

/// Ring buffer of complete episodes. Only whole episodes are stored because
/// the future branch needs later steps of the same episode; eviction drops
/// the oldest episodes first, with capacity counted in transitions.
///
/// Single-writer; sampling may run concurrently only while no writer is
/// active (the training loop uses it strictly sequentially).
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity_transitions);

  /// Episode must have the fixed horizon length (set by the first episode
  /// stored) and all transitions must share one goal.
  void store_episode(std::vector<Transition> episode);

  std::size_t size() const { return total_transitions_; }
  std::size_t n_episodes() const { return episodes_.size(); }
  bool empty() const { return episodes_.empty(); }
  int horizon() const { return horizon_T_; }

  /// Flat index in [0, size()) -> (episode, step). Uniform over transitions.
  const Transition& transition_at(std::size_t flat_index) const;
  const std::vector<Transition>& episode_at(std::size_t episode_index) const;

  /// Observation o_j of an episode, j in [0, T]; o_T is the final next_obs.
  const Observation& observation_at(std::size_t episode_index, int j) const;
  const GroundTruthState& state_at(std::size_t episode_index, int j) const;

 private:
  std::deque<std::vector<Transition>> episodes_;
  std::size_t capacity_ = 0;
  std::size_t total_transitions_ = 0;
  int horizon_T_ = -1;
};

/// Draw batch_size transitions uniformly and relabel each through one branch
/// drawn with probabilities (p1, p2, p3). The future branch samples the goal
/// observation index from {t+2, ..., T}; when that range is empty (t = T-1)
/// the sample falls back to the achieved branch.
std::vector<RelabeledSample> sample_relabeled(const ReplayBuffer& buffer,
                                              const RelabelConfig& cfg,
                                              const RelabelRewardFn& reward_fn,
                                              Rng& rng);

/// Midpoint of the admissible filtering interval
/// (R- + gamma*R+/(1-gamma), R+/(1-gamma)).
double derive_q0(const RewardConstants& c);

/// Batched critic evaluation: Q(obs, action, goal_obs) per sample.
using CriticFn =
    std::function<std::vector<double>(std::span<const RelabeledSample>)>;

/// Drop samples with reward == R- whose critic value exceeds q0; everything
/// else is kept in order. Positive-reward samples are never dropped. The
/// batch may come back empty; the training step then skips.
std::vector<RelabeledSample> filter_batch(std::vector<RelabeledSample> batch,
                                          const CriticFn& critic,
                                          const FilterConfig& f,
                                          const RewardConstants& c);

/// diagnose_batch adapter for relabeled samples.
RewardDiagnostics diagnose_batch(std::span<const RelabeledSample> batch,
                                 const GoalEnv& env, const RewardConstants& c);

}  // namespace indigo
