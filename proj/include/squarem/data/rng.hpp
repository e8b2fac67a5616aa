#pragma once

// Seeded random streams. The generator is std::mt19937_64, seeded through
// std::seed_seq from (seed, stream); both are fully specified by the C++
// standard, so a (seed, stream) pair yields the same draws on every
// conforming platform. All distributions are implemented here rather than
// through <random> distribution classes, whose algorithms are unspecified.

#include <cstdint>
#include <random>

namespace squarem {

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Independent stream for replicate `id` of an experiment seeded with `seed`.
  static Rng for_replicate(std::uint64_t seed, std::uint64_t id) { return Rng(seed, id + 1); }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

 private:
  std::mt19937_64 engine_;
};

double sample_uniform(double a, double b, Rng& rng);
/// Inverse CDF: scale * (-log U)^(1/shape).
double sample_weibull(double shape, double scale, Rng& rng);
double weibull_from_uniform(double shape, double scale, double u);
/// Counts unit-rate exponential gaps before their sum exceeds mu.
int sample_poisson(double mu, Rng& rng);
/// Box-Muller, one draw per call.
double sample_normal(Rng& rng);
/// Sum of two Bernoulli(p) draws.
int sample_binomial2(double p, Rng& rng);

}  // namespace squarem
