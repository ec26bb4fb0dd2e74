#ifndef REACHPROBE_RANDOM_HPP
#define REACHPROBE_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "reachprobe/geometry.hpp"

namespace reachprobe {

/// SplitMix64 stream keyed by (seed, index). Each trial or probe owns one, so
/// results do not depend on which thread ran it. Satisfies
/// UniformRandomBitGenerator for use with <random> distributions.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t index)
      : state_(mix(seed ^ mix(index + 0x632BE59BD9B4E019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (no cached state).
  double gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

inline Point gaussian_vector(StreamRng& rng, int dim) {
  Point v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.gaussian();
  return v;
}

/// Point on the sphere of the given radius in `ctx`, obtained by normalizing
/// i.i.d. Gaussian coordinates. Not uniform in surface measure for p != 2;
/// it covers every direction, which is all a universally quantified check needs.
inline Point sphere_point(StreamRng& rng, int dim, double radius, const NormContext& ctx) {
  for (;;) {
    Point v = gaussian_vector(rng, dim);
    const double n = ctx.norm(v);
    if (n > 1e-300) return v * (radius / n);
  }
}

/// Point in the closed ball of the given radius: sphere direction with the
/// radial law U^(1/dim).
inline Point ball_point(StreamRng& rng, int dim, double radius, const NormContext& ctx) {
  const double t = std::pow(rng.uniform(), 1.0 / dim);
  return sphere_point(rng, dim, radius * t, ctx);
}

}  // namespace reachprobe

#endif  // REACHPROBE_RANDOM_HPP
