#pragma once

#include <cstdint>
#include <random>

#include "ecg/models.hpp"

namespace ecg::testing {

inline constexpr std::uint64_t kSeed = 20240617;

class Draws {
 public:
  explicit Draws(std::uint64_t seed = kSeed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  /// A, B in [0.01, 1], n in [1, 3], alpha in (0, 1].
  PressureParams ecg_params() {
    const double a = uniform(0.01, 1.0);
    const double b = uniform(0.01, 1.0);
    const double n = uniform(1.0, 3.0);
    const double alpha = 1.0 - uniform(0.0, 0.99);
    return make_ecg(a, b, n, alpha);
  }

  State state(double rho_lo = 0.2, double rho_hi = 5.0, double u_span = 3.0) {
    return {log_uniform(rho_lo, rho_hi), uniform(-u_span, u_span)};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ecg::testing
