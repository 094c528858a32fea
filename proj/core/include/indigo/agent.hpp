#pragma once

#include <functional>
#include <string>
#include <vector>

#include "indigo/core.hpp"
#include "indigo/envs.hpp"
#include "indigo/nn.hpp"
#include "indigo/replay.hpp"
#include "indigo/rewards.hpp"
#include "indigo/rng.hpp"

namespace indigo {

struct AgentConfig {
  RewardConstants constants;
  std::vector<int> hidden = {256, 256, 256};
  double tau = 0.98;  // fraction of the target retained per update
  double lr_actor = 1e-3;
  double lr_critic = 1e-3;
  double explore_sigma = 0.2;
  double explore_random_prob = 0.3;
  bool normalize_obs = true;
};

/// Per-dimension running mean/variance for observation inputs. Applied only
/// to agent inputs, never to the observations used for reward computation,
/// and only after at least one update.
class RunningNormalizer {
 public:
  explicit RunningNormalizer(int dim);

  void update(std::span<const double> x);
  std::vector<double> normalize(std::span<const double> x) const;
  void normalize_into(std::span<const double> x, double* out) const;

  std::uint64_t count() const { return count_; }
  int dim() const { return static_cast<int>(mean_.size()); }

  void save(const std::string& path) const;
  static RunningNormalizer load(const std::string& path);

 private:
  std::vector<double> mean_;
  std::vector<double> m2_;  // sum of squared deviations (Welford)
  std::uint64_t count_ = 0;
  double clip_ = 5.0;

  friend bool operator==(const RunningNormalizer&, const RunningNormalizer&);
};

bool operator==(const RunningNormalizer& a, const RunningNormalizer& b);

struct TrainStats {
  int batch_size = 0;        // after filtering
  double filtered_fraction = 0.0;
  double mean_q = 0.0;
  double mean_target = 0.0;
  double positive_fraction = 0.0;
  bool skipped = false;      // batch fully filtered; no optimization ran
};

struct EpisodeStats {
  std::vector<bool> step_success;  // true_success of each post-step state
  double final_distance = 0.0;     // achieved-goal distance at the last step

  double success_fraction() const;
};

struct EvalReport {
  double success = 0.0;         // mean over episodes and timesteps
  double final_distance = 0.0;  // mean over episodes
};

/// Goal-conditioned DDPG. Actor maps (obs, goal) to a tanh-bounded action;
/// critic maps (obs, goal, action) to a scalar value. Exact copies serve as
/// Polyak-averaged targets. The critic starts at its pessimistic floor
/// R-/(1-gamma) so Q-threshold filtering is inert on the first cycle.
class DDPGAgent {
 public:
  DDPGAgent(const EnvSpec& env_spec, const AgentConfig& cfg, Rng& init_rng);

  /// Deterministic when explore is false. In explore mode: with probability
  /// explore_random_prob a uniform action, otherwise actor output plus
  /// Gaussian noise, clipped to [-1, 1].
  Action select_action(const Observation& obs, const Observation& goal_obs,
                       bool explore, Rng& rng) const;

  /// One optimization step: sample + relabel, optionally filter through the
  /// current critic, clipped-target critic regression, actor ascent through
  /// the frozen critic, Polyak both targets.
  TrainStats train_step(const ReplayBuffer& buffer, const RelabelConfig& relabel,
                        const FilterConfig& filter, const RelabelRewardFn& reward_fn,
                        Rng& rng);

  /// Update normalizer statistics from an episode that was just stored.
  void observe_episode(const std::vector<Transition>& episode);

  /// Batched critic evaluation, usable with filter_batch.
  CriticFn critic_fn() const;
  std::vector<double> critic_values(std::span<const RelabeledSample> batch) const;

  const AgentConfig& config() const { return cfg_; }
  const nn::DenseNet& actor() const { return actor_; }
  const nn::DenseNet& critic() const { return critic_; }
  const nn::DenseNet& actor_target() const { return actor_target_; }
  const nn::DenseNet& critic_target() const { return critic_target_; }
  const RunningNormalizer& normalizer() const { return normalizer_; }

  /// Checkpoint: four net files plus normalizer statistics and a manifest,
  /// all under one directory.
  void save(const std::string& dir) const;
  static DDPGAgent load(const std::string& dir, const EnvSpec& env_spec,
                        const AgentConfig& cfg);

 private:
  nn::Matrix actor_inputs(std::span<const RelabeledSample> batch,
                          bool next_obs) const;
  nn::Matrix critic_inputs(std::span<const RelabeledSample> batch,
                           const nn::Matrix& actions) const;

  AgentConfig cfg_;
  int obs_dim_ = 0;
  int action_dim_ = 0;
  nn::DenseNet actor_, critic_, actor_target_, critic_target_;
  nn::AdamState actor_adam_, critic_adam_;
  RunningNormalizer normalizer_;
};

/// Roll one full fixed-horizon episode with the given behavior mode.
std::pair<std::vector<Transition>, EpisodeStats> run_episode(
    const DDPGAgent& agent, const GoalEnv& env, Rng& rng, bool explore);

/// Policy-level rollout used by evaluate(); exposed so tests can evaluate
/// scripted policies through the same code path.
using PolicyFn =
    std::function<Action(const Observation& obs, const Observation& goal_obs)>;
EvalReport eval_policy(const PolicyFn& policy, const GoalEnv& env,
                       int n_episodes, Rng& rng);

/// Deterministic evaluation: exploration disabled.
EvalReport evaluate(const DDPGAgent& agent, const GoalEnv& env, int n_episodes,
                    Rng& rng);

}  // namespace indigo
