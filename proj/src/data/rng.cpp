#include "squarem/data/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace squarem {

namespace {
std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}
}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(seeded(seed, stream)) {}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double sample_uniform(double a, double b, Rng& rng) { return a + (b - a) * rng.uniform01(); }

double weibull_from_uniform(double shape, double scale, double u) {
  return scale * std::pow(-std::log(u), 1.0 / shape);
}

double sample_weibull(double shape, double scale, Rng& rng) {
  if (!(shape > 0.0) || !(scale > 0.0)) throw std::invalid_argument("Weibull needs positive parameters");
  double u = rng.uniform01();
  while (u == 0.0) u = rng.uniform01();
  return weibull_from_uniform(shape, scale, u);
}

int sample_poisson(double mu, Rng& rng) {
  if (!(mu >= 0.0)) throw std::invalid_argument("Poisson mean must be nonnegative");
  int k = 0;
  double t = 0.0;
  while (true) {
    t -= std::log1p(-rng.uniform01());
    if (t > mu) return k;
    ++k;
  }
}

double sample_normal(Rng& rng) {
  const double u1 = 1.0 - rng.uniform01();  // (0, 1]
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int sample_binomial2(double p, Rng& rng) {
  return static_cast<int>(rng.uniform01() < p) + static_cast<int>(rng.uniform01() < p);
}

}  // namespace squarem
