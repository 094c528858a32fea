#include "indigo/core.hpp"

#include <cmath>
#include <cstring>

namespace indigo {

RewardConstants RewardConstants::for_horizon(int horizon_T, double epsilon) {
  if (horizon_T < 2) throw std::invalid_argument("horizon must be >= 2");
  RewardConstants c;
  c.r_plus = 1.0;
  c.r_minus = -1.0;
  c.gamma = (static_cast<double>(horizon_T) - 1.0) / horizon_T;
  c.epsilon = epsilon;
  c.validate();
  return c;
}

void RewardConstants::validate() const {
  if (!(r_plus > r_minus)) throw std::invalid_argument("require r_plus > r_minus");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must be in (0,1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
}

double l2_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw DimensionError("l2_distance: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

bool obs_equal(const Observation& a, const Observation& b) {
  if (a.values.size() != b.values.size())
    throw DimensionError("obs_equal: length mismatch");
  if (a.values.empty()) return true;
  return std::memcmp(a.values.data(), b.values.data(),
                     a.values.size() * sizeof(double)) == 0;
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace indigo
