#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "ellva/truncation.hpp"

namespace ellva {

using Matrix = Eigen::MatrixXcd;

// Spectral parameter on the covering space: xi with z = e^{i pi xi}. The
// R-matrix carries fractional powers of z and theta characteristics with
// non-integer xi-coefficients, so it is a function of xi rather than of z;
// all argument shifts (z -> -z, z -> s z, z -> q^k z) are additive here and
// therefore branch-exact. Lifting a bare z uses the principal logarithm,
// the single global branch convention of the library.
class SpectralPoint {
 public:
  SpectralPoint() = default;
  explicit SpectralPoint(Complex xi) : xi_(xi) {}

  static SpectralPoint from_z(Complex z) {
    if (z == Complex(0.0, 0.0)) fail(ErrorKind::ZeroArgument, "spectral point at z=0");
    return SpectralPoint(std::log(z) / Complex(0.0, kPi));
  }

  Complex xi() const { return xi_; }
  Complex z() const { return std::exp(Complex(0.0, kPi) * xi_); }
  Complex z2() const { return std::exp(Complex(0.0, 2.0 * kPi) * xi_); }
  // z^e on the same branch sheet.
  Complex pow(double e) const { return std::exp(Complex(0.0, kPi) * xi_ * e); }

  SpectralPoint shifted(Complex dxi) const { return SpectralPoint(xi_ + dxi); }
  SpectralPoint inverse() const { return SpectralPoint(-xi_); }
  SpectralPoint negated() const { return shifted(Complex(1.0, 0.0)); }   // z -> -z
  SpectralPoint scaled(double delta) const { return SpectralPoint(xi_ * delta); }

 private:
  Complex xi_{0.0, 0.0};
};

// Model parameter bundle (N, q, c) with the primitive square-root carrier
// s = -p^{1/2}. The carrier fixes the branch once: tau = Log(-s)/(i pi), so
// e^{i pi tau} = -s and e^{2 i pi tau} = p exactly. Quasi-periodicity then
// holds under z -> s z with no residual sign ambiguity.
class ModelParams {
 public:
  static ModelParams from_s(int N, Complex q, Complex s, double c);
  // s defaults to minus the principal square root of p.
  static ModelParams from_p(int N, Complex q, Complex p, double c) {
    return from_s(N, q, -std::sqrt(p), c);
  }

  int N() const { return N_; }
  Complex q() const { return q_; }
  double c() const { return c_; }
  Complex s() const { return s_; }
  Complex s_star() const { return s_star_; }
  Complex p() const { return s_ * s_; }
  Complex p_star() const { return s_star_ * s_star_; }
  Complex omega() const { return std::exp(Complex(0.0, 2.0 * kPi / N_)); }

  Complex zeta() const { return zeta_; }           // Log q / (i pi)
  Complex tau() const { return tau_; }             // Log(-s) / (i pi)
  Complex tau_star() const { return tau_star_; }   // Log(-s_star) / (i pi)

  // xi-shift realizing z -> s z (resp. s_star z): 1 + tau.
  Complex carrier_shift(bool starred = false) const {
    return Complex(1.0, 0.0) + (starred ? tau_star_ : tau_);
  }

  // Same parameters with the starred nome promoted to primary; used to build
  // the starred variants of the R-matrix.
  ModelParams starred() const { return from_s(N_, q_, s_star_, c_); }

  // |p| and |p*| strictly inside the unit disk; required by the matrix
  // builders (theta series in tau). Structure functions only need |q| < 1.
  void require_nomes_in_disk() const;

 private:
  int N_ = 2;
  Complex q_, s_, s_star_, zeta_, tau_, tau_star_;
  double c_ = 0.0;
};

// Gauge data: g = diag(omega^a), cyclic shift h, half gauge g^{1/2} on the
// principal branch and the quasi-periodicity conjugator G = g^{1/2} h g^{1/2}.
// G^N = (-1)^{N+1} I under any diagonal square-root convention; only
// conjugations by G enter the identities, so the sign is immaterial there.
struct GaugeMatrices {
  Matrix g, g_half, h, G;

  explicit GaugeMatrices(int N);
};

}  // namespace ellva
