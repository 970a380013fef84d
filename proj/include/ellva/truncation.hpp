#pragma once

#include <cmath>
#include <complex>

#include "ellva/errors.hpp"

namespace ellva {

// Cutoff policy for infinite products and series. Every evaluation certifies
// at call time that the geometric tail it drops is below target_tol/10; the
// extra factor of ten keeps the certificate comfortably ahead of the
// tolerances asserted downstream.
struct Truncation {
  int product_order = 48;   // factors per geometric direction
  int series_order = 32;    // characteristic series range |m| <= series_order
  double target_tol = 1e-11;

  void validate() const {
    if (product_order < 1 || series_order < 1)
      fail(ErrorKind::InvalidConfig, "truncation orders must be >= 1");
    if (!(target_tol > 0.0) || !(target_tol < 1.0))
      fail(ErrorKind::InvalidConfig, "target_tol must lie in (0,1)");
  }

  // |r|^M / (1-|r|) < target_tol/10 for a nome of modulus r.
  void require_product_tail(double r, const char* where) const {
    if (!(r < 1.0)) fail(ErrorKind::NomeOutOfDisk, where);
    if (r <= 0.0) return;
    const double tail = std::pow(r, product_order) / (1.0 - r);
    if (!(tail < target_tol / 10.0)) fail(ErrorKind::TruncationInsufficient, where);
  }

  double pole_threshold() const { return 1e3 * target_tol; }
};

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace ellva
