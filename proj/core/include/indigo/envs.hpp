#pragma once

#include <memory>
#include <string>
#include <vector>

#include "indigo/core.hpp"
#include "indigo/rng.hpp"

namespace indigo {

struct EnvSpec {
  std::string name;
  int obs_dim = 0;
  int state_dim = 0;
  int action_dim = 0;
  int horizon_T = 0;
  double epsilon = 0.0;
  double action_scale = 0.0;  // physical units per unit action

  void validate() const;
};

struct EnvState {
  GroundTruthState ground_truth;
  int step_count = 0;
};

/// A goal together with its rendered observation. goal_obs is always exactly
/// render(goal_state), so reaching goal_state exactly triggers the indicator
/// reward.
struct GoalSample {
  Observation goal_obs;
  GroundTruthState goal_state;
};

struct ResetResult {
  EnvState state;
  Observation obs;
  GoalSample goal;
};

struct StepResult {
  EnvState state;
  Observation obs;
};

/// Thrown on step() past the fixed horizon.
struct EpisodeExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic fixed-horizon goal-reaching environment. Dynamics and
/// rendering are pure functions of state; all randomness enters through the
/// Rng passed to reset, so runs are a function of seeds only.
class GoalEnv {
 public:
  virtual ~GoalEnv() = default;

  const EnvSpec& spec() const { return spec_; }

  /// Draw an initial state and an independent goal; step_count = 0.
  ResetResult reset(Rng& rng) const;

  /// Apply one action. Throws EpisodeExhausted past the horizon and
  /// std::invalid_argument for out-of-range actions.
  StepResult step(const EnvState& state, const Action& action) const;

  /// Pure render of a state into the observation space.
  virtual Observation render(const GroundTruthState& state) const = 0;

  /// Projection of state onto the goal space (position, fingertip, cell).
  virtual std::vector<double> achieved_goal(const GroundTruthState& state) const;

  /// Ground-truth success test: achieved-goal distance <= epsilon
  /// (inclusive). GridGoalWorld overrides with exact cell identity.
  virtual bool true_success(const GroundTruthState& state,
                            const GroundTruthState& goal_state) const;

 protected:
  explicit GoalEnv(EnvSpec spec);

  virtual GroundTruthState sample_initial(Rng& rng) const = 0;
  virtual GroundTruthState sample_goal(Rng& rng) const = 0;
  virtual GroundTruthState dynamics(const GroundTruthState& state,
                                    const Action& action) const = 0;

  EnvSpec spec_;
};

/// Point mass in the unit box [0,1]^dim; position += scale * action, clipped.
/// Observation = position.
std::unique_ptr<GoalEnv> make_point_reach(int dim, int horizon_T, double epsilon,
                                          double action_scale);

/// Two-link planar arm; state = joint angles wrapped to [-pi, pi), observation
/// = (cos/sin of both angles, fingertip xy), goal space = fingertip xy.
std::unique_ptr<GoalEnv> make_two_link_reacher();

/// PointReach2D dynamics with a k x k grayscale rendering: Gaussian blob of
/// width sigma_px cells at the grid-mapped position, quantized to 256 levels.
std::unique_ptr<GoalEnv> make_pixel_reach(int k = 10);

/// n x n grid; moves {stay, up, down, left, right} decoded from a continuous
/// 2-d action, clipped at walls. Observation = one-hot cell index; success =
/// exact cell match.
std::unique_ptr<GoalEnv> make_grid_goal_world(int n);

/// Environment registry keyed by the names used in experiment configs:
/// PointReach2D, PointReach3D, TwoLinkReacher, PixelReach, GridGoalWorld[:n].
std::unique_ptr<GoalEnv> make_env(const std::string& name);

/// Reward constants matching an environment: R+/- = +/-1, gamma = (T-1)/T,
/// epsilon from the spec.
RewardConstants constants_for(const GoalEnv& env);

namespace grid {
/// Move indices shared with the tabular module.
inline constexpr int kStay = 0, kUp = 1, kDown = 2, kLeft = 3, kRight = 4;
inline constexpr int kNumMoves = 5;

/// Continuous action -> move index: below 0.5 deadzone everywhere -> stay;
/// otherwise the dominant axis wins (ties go horizontal), sign picks the
/// direction (x<0 left, x>0 right, y>0 up, y<0 down).
int decode_move(const Action& action);
/// Canonical continuous encoding of a move (unit axis vector or zero).
Action encode_move(int move);
}  // namespace grid

}  // namespace indigo
