#include "indigo/replay.hpp"

#include <cmath>
#include <utility>

namespace indigo {

void RelabelConfig::validate() const {
  if (p1 < 0.0 || p2 < 0.0 || p3 < 0.0)
    throw std::invalid_argument("RelabelConfig: probabilities must be >= 0");
  if (std::fabs(p1 + p2 + p3 - 1.0) > 1e-12)
    throw std::invalid_argument("RelabelConfig: p1 + p2 + p3 must equal 1");
  if (batch_size < 1 || capacity < static_cast<std::size_t>(batch_size))
    throw std::invalid_argument("RelabelConfig: need capacity >= batch_size >= 1");
}

ReplayBuffer::ReplayBuffer(std::size_t capacity_transitions)
    : capacity_(capacity_transitions) {
  if (capacity_ == 0)
    throw std::invalid_argument("ReplayBuffer: capacity must be >= 1");
}

void ReplayBuffer::store_episode(std::vector<Transition> episode) {
  if (episode.empty()) throw std::invalid_argument("store_episode: empty episode");
  if (horizon_T_ < 0) horizon_T_ = static_cast<int>(episode.size());
  if (static_cast<int>(episode.size()) != horizon_T_)
    throw std::invalid_argument("store_episode: ragged episode length");
  for (std::size_t i = 0; i < episode.size(); ++i) {
    const Transition& tr = episode[i];
    if (tr.t != static_cast<int>(i))
      throw std::invalid_argument("store_episode: step indices must be 0..T-1");
    if (!obs_equal(tr.goal_obs, episode.front().goal_obs))
      throw std::invalid_argument("store_episode: transitions must share one goal");
    if (!all_finite(tr.obs.values) || !all_finite(tr.next_obs.values) ||
        !all_finite(tr.action.values))
      throw std::invalid_argument("store_episode: non-finite entries");
  }
  episodes_.push_back(std::move(episode));
  total_transitions_ += horizon_T_;
  while (total_transitions_ > capacity_ && episodes_.size() > 1) {
    total_transitions_ -= episodes_.front().size();
    episodes_.pop_front();
  }
}

const Transition& ReplayBuffer::transition_at(std::size_t flat_index) const {
  const auto T = static_cast<std::size_t>(horizon_T_);
  return episodes_.at(flat_index / T).at(flat_index % T);
}

const std::vector<Transition>& ReplayBuffer::episode_at(
    std::size_t episode_index) const {
  return episodes_.at(episode_index);
}

const Observation& ReplayBuffer::observation_at(std::size_t episode_index,
                                                int j) const {
  const auto& ep = episodes_.at(episode_index);
  if (j < 0 || j > horizon_T_)
    throw std::out_of_range("observation_at: index outside [0, T]");
  return j < horizon_T_ ? ep[j].obs : ep.back().next_obs;
}

const GroundTruthState& ReplayBuffer::state_at(std::size_t episode_index,
                                               int j) const {
  const auto& ep = episodes_.at(episode_index);
  if (j < 0 || j > horizon_T_)
    throw std::out_of_range("state_at: index outside [0, T]");
  return j < horizon_T_ ? ep[j].state : ep.back().next_state;
}

std::vector<RelabeledSample> sample_relabeled(const ReplayBuffer& buffer,
                                              const RelabelConfig& cfg,
                                              const RelabelRewardFn& reward_fn,
                                              Rng& rng) {
  cfg.validate();
  if (buffer.empty()) throw std::runtime_error("sample_relabeled: empty buffer");

  const int T = buffer.horizon();
  std::vector<RelabeledSample> batch;
  batch.reserve(cfg.batch_size);

  for (int i = 0; i < cfg.batch_size; ++i) {
    const std::size_t flat = rng.uniform_int(buffer.size());
    const std::size_t ep = flat / static_cast<std::size_t>(T);
    const Transition& tr = buffer.transition_at(flat);

    RelabeledSample s;
    s.obs = tr.obs;
    s.action = tr.action;
    s.next_obs = tr.next_obs;
    s.next_state = tr.next_state;

    const double u = rng.uniform();
    bool achieved = u < cfg.p1;
    bool future = !achieved && u < cfg.p1 + cfg.p2;
    if (future && tr.t >= T - 1) {
      // future range {t+2, ..., T} is empty; fall back to the achieved branch
      achieved = true;
      future = false;
    }

    if (achieved) {
      s.branch = RelabelBranch::achieved;
      s.goal_obs = tr.next_obs;
      s.goal_state = tr.next_state;
    } else if (future) {
      s.branch = RelabelBranch::future;
      const int lo = tr.t + 2;  // observation indices {t+2, ..., T}
      const int j = lo + static_cast<int>(rng.uniform_int(
                             static_cast<std::uint64_t>(T - lo + 1)));
      s.goal_obs = buffer.observation_at(ep, j);
      s.goal_state = buffer.state_at(ep, j);
    } else {
      s.branch = RelabelBranch::original;
      s.goal_obs = tr.goal_obs;
      s.goal_state = tr.goal_state;
    }
    s.reward = reward_fn(tr, s.goal_obs, s.goal_state);
    batch.push_back(std::move(s));
  }
  return batch;
}

double derive_q0(const RewardConstants& c) {
  c.validate();
  const double lower = c.r_minus + c.gamma * c.r_plus / (1.0 - c.gamma);
  const double upper = c.r_plus / (1.0 - c.gamma);
  return 0.5 * (lower + upper);
}

std::vector<RelabeledSample> filter_batch(std::vector<RelabeledSample> batch,
                                          const CriticFn& critic,
                                          const FilterConfig& f,
                                          const RewardConstants& c) {
  if (!f.enabled || batch.empty()) return batch;
  const std::vector<double> q = critic(batch);
  if (q.size() != batch.size())
    throw DimensionError("filter_batch: critic returned wrong batch size");
  std::vector<RelabeledSample> kept;
  kept.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const bool discard = batch[i].reward == c.r_minus && q[i] > f.q0;
    if (!discard) kept.push_back(std::move(batch[i]));
  }
  return kept;
}

RewardDiagnostics diagnose_batch(std::span<const RelabeledSample> batch,
                                 const GoalEnv& env, const RewardConstants& c) {
  std::vector<double> assigned;
  std::vector<GroundTruthState> next_states, goal_states;
  assigned.reserve(batch.size());
  next_states.reserve(batch.size());
  goal_states.reserve(batch.size());
  for (const auto& s : batch) {
    assigned.push_back(s.reward);
    next_states.push_back(s.next_state);
    goal_states.push_back(s.goal_state);
  }
  return diagnose_batch(assigned, next_states, goal_states, env, c);
}

}  // namespace indigo
