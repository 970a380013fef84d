#pragma once

#include <span>
#include <vector>

#include "ellva/rational.hpp"
#include "ellva/truncation.hpp"

namespace ellva {

// Rational characteristics (gamma1, gamma2) of a Jacobi theta series, stored
// in lowest terms. The weight sums use gamma = 1/2 + alpha/N, so denominators
// up to 2N occur in practice.
struct Characteristics {
  Rational gamma1;
  Rational gamma2;

  static Characteristics half_plus(int alpha1, int alpha2, int N) {
    return {Rational(1, 2) + Rational(alpha1, N), Rational(1, 2) + Rational(alpha2, N)};
  }
};

// Truncated multiple q-Pochhammer product
//   (z; p1,...,pm)_inf = prod_{n_i >= 0} (1 - z p1^{n1} ... pm^{nm}),
// every n_i capped at trunc.product_order. One and two nome directions are
// all the R-matrix machinery needs.
Complex qpochhammer(Complex z, std::span<const Complex> nomes, const Truncation& trunc);

inline Complex qpochhammer(Complex z, Complex p, const Truncation& trunc) {
  const Complex nomes[1] = {p};
  return qpochhammer(z, nomes, trunc);
}

// Jacobi Theta function  Theta_p(z) = (z;p) (p/z;p) (p;p).
Complex theta_big(Complex z, Complex p, const Truncation& trunc);

// Characteristic series
//   sum_m exp(i pi (m+g1)^2 tau + 2 i pi (m+g1)(xi+g2)),  Im tau > 0,
// truncated at |m| <= trunc.series_order with a certified Gaussian tail.
Complex theta_char(const Characteristics& ch, Complex xi, Complex tau, const Truncation& trunc);

}  // namespace ellva
