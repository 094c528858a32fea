#include "indigo/envs.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace indigo {

void EnvSpec::validate() const {
  if (obs_dim < 1 || state_dim < 1 || action_dim < 1)
    throw std::invalid_argument("EnvSpec: dims must be >= 1");
  if (horizon_T < 2) throw std::invalid_argument("EnvSpec: horizon_T must be >= 2");
  if (!(epsilon > 0.0)) throw std::invalid_argument("EnvSpec: epsilon must be > 0");
}

GoalEnv::GoalEnv(EnvSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

ResetResult GoalEnv::reset(Rng& rng) const {
  ResetResult r;
  r.state.ground_truth = sample_initial(rng);
  r.state.step_count = 0;
  r.obs = render(r.state.ground_truth);
  r.goal.goal_state = sample_goal(rng);
  r.goal.goal_obs = render(r.goal.goal_state);
  return r;
}

StepResult GoalEnv::step(const EnvState& state, const Action& action) const {
  if (state.step_count >= spec_.horizon_T)
    throw EpisodeExhausted(spec_.name + ": episode horizon reached");
  if (static_cast<int>(action.dim()) != spec_.action_dim)
    throw DimensionError(spec_.name + ": action dimension mismatch");
  for (double a : action.values)
    if (!(std::fabs(a) <= 1.0))
      throw std::invalid_argument(spec_.name + ": action component out of [-1,1]");
  StepResult r;
  r.state.ground_truth = dynamics(state.ground_truth, action);
  r.state.step_count = state.step_count + 1;
  r.obs = render(r.state.ground_truth);
  return r;
}

std::vector<double> GoalEnv::achieved_goal(const GroundTruthState& state) const {
  return state.values;
}

bool GoalEnv::true_success(const GroundTruthState& state,
                           const GroundTruthState& goal_state) const {
  return l2_distance(achieved_goal(state), achieved_goal(goal_state)) <=
         spec_.epsilon;
}

namespace {

class PointReach final : public GoalEnv {
 public:
  PointReach(int dim, int horizon_T, double epsilon, double action_scale)
      : GoalEnv(EnvSpec{dim == 2 ? "PointReach2D" : (dim == 3 ? "PointReach3D" : "PointReach"),
                        dim, dim, dim, horizon_T, epsilon, action_scale}) {}

  Observation render(const GroundTruthState& state) const override {
    return Observation{state.values};
  }

 protected:
  GroundTruthState sample_initial(Rng& rng) const override { return sample_box(rng); }
  GroundTruthState sample_goal(Rng& rng) const override { return sample_box(rng); }

  GroundTruthState dynamics(const GroundTruthState& state,
                            const Action& action) const override {
    GroundTruthState next = state;
    for (int i = 0; i < spec_.state_dim; ++i) {
      next.values[i] = std::clamp(
          state.values[i] + spec_.action_scale * action.values[i], 0.0, 1.0);
    }
    return next;
  }

 private:
  GroundTruthState sample_box(Rng& rng) const {
    GroundTruthState s;
    s.values.resize(spec_.state_dim);
    for (auto& v : s.values) v = rng.uniform();
    return s;
  }
};

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_angle(double a) {
  // into [-pi, pi)
  a = std::fmod(a + M_PI, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a - M_PI;
}

class TwoLinkReacher final : public GoalEnv {
 public:
  TwoLinkReacher()
      : GoalEnv(EnvSpec{"TwoLinkReacher", 6, 2, 2, 50, 0.02, 0.2}) {}

  Observation render(const GroundTruthState& state) const override {
    const double t1 = state.values[0], t2 = state.values[1];
    const auto tip = fingertip(t1, t2);
    return Observation{{std::cos(t1), std::sin(t1), std::cos(t2), std::sin(t2),
                        tip.first, tip.second}};
  }

  std::vector<double> achieved_goal(const GroundTruthState& state) const override {
    const auto tip = fingertip(state.values[0], state.values[1]);
    return {tip.first, tip.second};
  }

 protected:
  GroundTruthState sample_initial(Rng& rng) const override { return sample_angles(rng); }
  GroundTruthState sample_goal(Rng& rng) const override { return sample_angles(rng); }

  GroundTruthState dynamics(const GroundTruthState& state,
                            const Action& action) const override {
    GroundTruthState next = state;
    for (int i = 0; i < 2; ++i)
      next.values[i] =
          wrap_angle(state.values[i] + spec_.action_scale * action.values[i]);
    return next;
  }

 private:
  static constexpr double kL1 = 0.1, kL2 = 0.1;

  static std::pair<double, double> fingertip(double t1, double t2) {
    return {kL1 * std::cos(t1) + kL2 * std::cos(t1 + t2),
            kL1 * std::sin(t1) + kL2 * std::sin(t1 + t2)};
  }

  GroundTruthState sample_angles(Rng& rng) const {
    GroundTruthState s;
    s.values = {rng.uniform(-M_PI, M_PI), rng.uniform(-M_PI, M_PI)};
    return s;
  }
};

class PixelReach final : public GoalEnv {
 public:
  explicit PixelReach(int k)
      : GoalEnv(EnvSpec{"PixelReach", k * k, 2, 2, 25, 0.1, 0.05}), k_(k) {}

  Observation render(const GroundTruthState& state) const override {
    // Gaussian blob (sigma = 1 cell) centered at the grid-mapped position,
    // quantized to 256 intensity levels so equal states render bit-equal.
    const double cx = state.values[0] * k_;
    const double cy = state.values[1] * k_;
    Observation o;
    o.values.resize(static_cast<std::size_t>(k_) * k_);
    constexpr double sigma = 1.0;
    for (int row = 0; row < k_; ++row) {
      for (int col = 0; col < k_; ++col) {
        const double dx = (col + 0.5) - cx;
        const double dy = (row + 0.5) - cy;
        const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
        o.values[static_cast<std::size_t>(row) * k_ + col] =
            std::round(v * 255.0) / 255.0;
      }
    }
    return o;
  }

  std::vector<double> achieved_goal(const GroundTruthState& state) const override {
    return state.values;  // position, as in PointReach
  }

 protected:
  GroundTruthState sample_initial(Rng& rng) const override { return sample_box(rng); }
  GroundTruthState sample_goal(Rng& rng) const override { return sample_box(rng); }

  GroundTruthState dynamics(const GroundTruthState& state,
                            const Action& action) const override {
    GroundTruthState next = state;
    for (int i = 0; i < 2; ++i)
      next.values[i] = std::clamp(
          state.values[i] + spec_.action_scale * action.values[i], 0.0, 1.0);
    return next;
  }

 private:
  GroundTruthState sample_box(Rng& rng) const {
    return GroundTruthState{{rng.uniform(), rng.uniform()}};
  }

  int k_;
};

class GridGoalWorld final : public GoalEnv {
 public:
  explicit GridGoalWorld(int n)
      : GoalEnv(EnvSpec{"GridGoalWorld:" + std::to_string(n), n * n, 2, 2,
                        4 * n, 0.5, 1.0}),
        n_(n) {}

  Observation render(const GroundTruthState& state) const override {
    Observation o;
    o.values.assign(static_cast<std::size_t>(n_) * n_, 0.0);
    o.values[cell_index(state)] = 1.0;
    return o;
  }

  bool true_success(const GroundTruthState& state,
                    const GroundTruthState& goal_state) const override {
    return cell_index(state) == cell_index(goal_state);
  }

  std::size_t cell_index(const GroundTruthState& state) const {
    const int r = static_cast<int>(state.values[0]);
    const int c = static_cast<int>(state.values[1]);
    return static_cast<std::size_t>(r) * n_ + c;
  }

 protected:
  GroundTruthState sample_initial(Rng& rng) const override { return sample_cell(rng); }
  GroundTruthState sample_goal(Rng& rng) const override { return sample_cell(rng); }

  GroundTruthState dynamics(const GroundTruthState& state,
                            const Action& action) const override {
    int r = static_cast<int>(state.values[0]);
    int c = static_cast<int>(state.values[1]);
    switch (grid::decode_move(action)) {
      case grid::kUp:    r = std::max(r - 1, 0); break;
      case grid::kDown:  r = std::min(r + 1, n_ - 1); break;
      case grid::kLeft:  c = std::max(c - 1, 0); break;
      case grid::kRight: c = std::min(c + 1, n_ - 1); break;
      default: break;  // stay
    }
    return GroundTruthState{{static_cast<double>(r), static_cast<double>(c)}};
  }

 private:
  GroundTruthState sample_cell(Rng& rng) const {
    const auto r = rng.uniform_int(static_cast<std::uint64_t>(n_));
    const auto c = rng.uniform_int(static_cast<std::uint64_t>(n_));
    return GroundTruthState{{static_cast<double>(r), static_cast<double>(c)}};
  }

  int n_;
};

}  // namespace

namespace grid {

int decode_move(const Action& action) {
  const double x = action.values.at(0);
  const double y = action.values.at(1);
  if (std::max(std::fabs(x), std::fabs(y)) < 0.5) return kStay;
  if (std::fabs(x) >= std::fabs(y)) return x < 0 ? kLeft : kRight;
  return y > 0 ? kUp : kDown;
}

Action encode_move(int move) {
  switch (move) {
    case kStay:  return Action{{0.0, 0.0}};
    case kUp:    return Action{{0.0, 1.0}};
    case kDown:  return Action{{0.0, -1.0}};
    case kLeft:  return Action{{-1.0, 0.0}};
    case kRight: return Action{{1.0, 0.0}};
    default: throw std::invalid_argument("encode_move: bad move index");
  }
}

}  // namespace grid

std::unique_ptr<GoalEnv> make_point_reach(int dim, int horizon_T, double epsilon,
                                          double action_scale) {
  return std::make_unique<PointReach>(dim, horizon_T, epsilon, action_scale);
}

std::unique_ptr<GoalEnv> make_two_link_reacher() {
  return std::make_unique<TwoLinkReacher>();
}

std::unique_ptr<GoalEnv> make_pixel_reach(int k) {
  return std::make_unique<PixelReach>(k);
}

std::unique_ptr<GoalEnv> make_grid_goal_world(int n) {
  if (n < 2) throw std::invalid_argument("GridGoalWorld: n must be >= 2");
  return std::make_unique<GridGoalWorld>(n);
}

std::unique_ptr<GoalEnv> make_env(const std::string& name) {
  if (name == "PointReach2D") return make_point_reach(2, 50, 0.01, 0.05);
  if (name == "PointReach3D") return make_point_reach(3, 50, 0.05, 0.05);
  if (name == "TwoLinkReacher") return make_two_link_reacher();
  if (name == "PixelReach") return make_pixel_reach(10);
  if (name.rfind("GridGoalWorld", 0) == 0) {
    int n = 8;
    const auto colon = name.find(':');
    if (colon != std::string::npos) n = std::stoi(name.substr(colon + 1));
    return make_grid_goal_world(n);
  }
  throw std::invalid_argument("unknown environment: " + name);
}

RewardConstants constants_for(const GoalEnv& env) {
  return RewardConstants::for_horizon(env.spec().horizon_T, env.spec().epsilon);
}

}  // namespace indigo
