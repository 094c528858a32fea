#pragma once

#include <cstdint>
#include <random>

namespace indigo {

/// Deterministic random source. All distributions are implemented by hand on
/// top of the raw 64-bit engine output so that a given seed produces the same
/// draw sequence on every platform and standard library.
///
/// Derived streams (see stream()) are statistically independent generators
/// keyed off the parent seed; the harness uses one stream per concern
/// (collection, relabeling, evaluation, ...) so that consumers cannot perturb
/// each other's sequences.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Uniform double in [0, 1).
  double uniform();
  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n). n must be >= 1.
  std::uint64_t uniform_int(std::uint64_t n);
  /// Standard normal via Box-Muller; always consumes exactly two raw draws.
  double normal();
  double normal(double mean, double stddev);

  /// Independent generator derived from this one's seed and the stream id.
  /// Does not consume any draws from this generator.
  Rng stream(std::uint64_t stream_id) const;

  /// Number of raw 64-bit engine draws consumed so far.
  std::uint64_t draw_count() const { return draws_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t next_raw();

  std::mt19937_64 engine_;
  std::uint64_t seed_ = 0;
  std::uint64_t draws_ = 0;
};

/// SplitMix64 step; used for seed derivation.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace indigo
