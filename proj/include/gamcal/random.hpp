#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gamcal/errors.hpp"
#include "gamcal/multivector.hpp"

namespace gamcal {

// Deterministic random source. Draws come from a mt19937_64 stream and are
// mapped to doubles by hand, so a fixed seed reproduces the same values on
// every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi).
  double uniform(double lo = 0.0, double hi = 1.0) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  // Standard normal via Box-Muller on the portable uniforms.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(6.283185307179586476925286766559 * u2);
    has_cached_ = true;
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Uniform integer in [lo, hi], rejection sampled to avoid modulo bias.
  int uniform_int(int lo, int hi) {
    if (hi < lo) throw Error("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return lo + static_cast<int>(x % span);
  }

  // Random element of pure grade r with coefficients uniform in [-scale, scale].
  Multivector pure_grade(int dim, int grade, double scale = 1.0) {
    Multivector out(dim);
    std::vector<double> coeffs(out.size(), 0.0);
    for (std::uint32_t m = 0; m < out.size(); ++m) {
      if (std::popcount(m) == grade) coeffs[m] = uniform(-scale, scale);
    }
    return Multivector::from_coefficients(dim, std::move(coeffs));
  }

  Multivector vector(int dim, double scale = 1.0) { return pure_grade(dim, 1, scale); }

  Multivector unit_vector(int dim) {
    for (;;) {
      const Multivector v = vector(dim);
      const double m = magnitude(v);
      if (m > 1e-3) return v / m;
    }
  }

  // Grade-r blade built as an outer product of r random vectors (retried when
  // the draw is nearly degenerate).
  Multivector blade(int dim, int grade, double scale = 1.0) {
    if (grade == 0) return Multivector::scalar(dim, uniform(-scale, scale));
    for (;;) {
      std::vector<Multivector> vs;
      for (int k = 0; k < grade; ++k) vs.push_back(vector(dim, 1.0));
      const Multivector w = wedge_all(vs);
      const double m = magnitude(w);
      if (m > 1e-3) return w * (uniform(0.2, 1.0) * scale / m);
    }
  }

  // Mixed-grade element with coefficients uniform in [-scale, scale].
  Multivector multivector(int dim, double scale = 1.0) {
    Multivector out(dim);
    std::vector<double> coeffs(out.size());
    for (double& c : coeffs) c = uniform(-scale, scale);
    return Multivector::from_coefficients(dim, std::move(coeffs));
  }

 private:
  std::mt19937_64 engine_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace gamcal
