#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "types.hpp"

namespace bsdgeo {

// Seed-reproducible uniform sampler. Doubles are derived from the raw
// mt19937_64 stream directly, so the same seed yields the same points on
// every platform (std::uniform_real_distribution is not portable).
class SampleRng {
public:
  explicit SampleRng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// Uniform on the closed disc of the given radius.
  Complex disc_point(double radius) {
    const double r = radius * std::sqrt(uniform());
    const double phi = 2.0 * M_PI * uniform();
    return std::polar(r, phi);
  }

  /// Uniform in the complex n-ball of the given radius.
  CVector ball_point(int n, double radius) {
    CVector g(n);
    double norm_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double re = normal();
      const double im = normal();
      g[i] = Complex(re, im);
      norm_sq += re * re + im * im;
    }
    if (norm_sq == 0.0) return CVector::Zero(n);
    const double r = radius * std::pow(uniform(), 1.0 / (2.0 * n));
    return g * (r / std::sqrt(norm_sq));
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace bsdgeo
