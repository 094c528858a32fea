#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace indigo {

/// Thrown when two vectors that must agree in length do not.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Sensor observation: fixed-length vector of finite doubles. Pixel
/// observations are flattened intensities quantized to k/255 before they ever
/// enter an Observation, so bit-exact comparison is meaningful across render
/// calls.
struct Observation {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
};

/// Ground-truth environment state (meters / radians). Only the evaluation and
/// Oracle-reward paths may read it; the agent's action selection and training
/// inputs never see one.
struct GroundTruthState {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  bool empty() const { return values.empty(); }
};

/// Agent action, componentwise in [-1, 1]. Environments scale to physical
/// units internally.
struct Action {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
};

/// Reward constants for one environment.
/// gamma defaults to (T-1)/T for horizon T; epsilon is the success radius in
/// state space.
struct RewardConstants {
  double r_plus = 1.0;
  double r_minus = -1.0;
  double gamma = 0.98;
  double epsilon = 0.05;

  /// Lowest achievable discounted return (all-negative rewards).
  double q_min() const { return r_minus / (1.0 - gamma); }
  /// Highest achievable discounted return (all-positive rewards).
  double q_max() const { return r_plus / (1.0 - gamma); }

  static RewardConstants for_horizon(int horizon_T, double epsilon);
  void validate() const;
};

/// View of a transition with the ground-truth fields projected away. This is
/// the only shape of transition the agent's training inputs are built from.
struct BlindTransition {
  const Observation* obs = nullptr;
  const Action* action = nullptr;
  const Observation* next_obs = nullptr;
  const Observation* goal_obs = nullptr;
  int t = 0;
};

/// One stored experience step. Ground-truth state fields ride along for
/// metrics and the Oracle reward variant only; blind() is the agent-facing
/// projection.
struct Transition {
  Observation obs;
  Action action;
  Observation next_obs;
  Observation goal_obs;
  int t = 0;

  GroundTruthState state;
  GroundTruthState next_state;
  GroundTruthState goal_state;

  BlindTransition blind() const {
    return BlindTransition{&obs, &action, &next_obs, &goal_obs, t};
  }
};

/// Euclidean distance between two equal-length vectors.
double l2_distance(std::span<const double> a, std::span<const double> b);

/// Bit-exact equality on the canonical IEEE-754 byte encoding. No tolerance:
/// relabeled goals are verbatim copies of achieved observations, so exact
/// comparison is sufficient and admits no false positives.
bool obs_equal(const Observation& a, const Observation& b);

/// True iff every entry is finite.
bool all_finite(std::span<const double> v);

}  // namespace indigo
