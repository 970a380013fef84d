#pragma once

#include <cmath>
#include <random>

#include "ellva/truncation.hpp"

namespace ellva {

// Deterministic spectral-point sampler: |z| log-uniform on [0.5, 2] with a
// uniform phase. Doubles are derived from raw engine words so sequences are
// identical across standard libraries.
class AnnulusSampler {
 public:
  explicit AnnulusSampler(unsigned long long seed = 0x5EED, double rmin = 0.5, double rmax = 2.0)
      : rng_(seed), log_rmin_(std::log(rmin)), log_rmax_(std::log(rmax)) {}

  Complex next() {
    const double u = unit();
    const double v = unit();
    const double r = std::exp(log_rmin_ + (log_rmax_ - log_rmin_) * u);
    return std::polar(r, 2.0 * kPi * v);
  }

 private:
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 rng_;
  double log_rmin_, log_rmax_;
};

}  // namespace ellva
