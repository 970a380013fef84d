#include "ellva/theta.hpp"

#include <cmath>

namespace ellva {

namespace {
const Complex kIPi(0.0, kPi);
}

Complex qpochhammer(Complex z, std::span<const Complex> nomes, const Truncation& trunc) {
  trunc.validate();
  for (const Complex& r : nomes) trunc.require_product_tail(std::abs(r), "qpochhammer nome");

  const int M = trunc.product_order;
  Complex acc(1.0, 0.0);
  switch (nomes.size()) {
    case 1: {
      Complex w(1.0, 0.0);
      for (int n = 0; n < M; ++n) {
        acc *= (1.0 - z * w);
        w *= nomes[0];
      }
      return acc;
    }
    case 2: {
      Complex w1(1.0, 0.0);
      for (int n1 = 0; n1 < M; ++n1) {
        Complex w = w1;
        for (int n2 = 0; n2 < M; ++n2) {
          acc *= (1.0 - z * w);
          w *= nomes[1];
        }
        w1 *= nomes[0];
      }
      return acc;
    }
    default: {
      // Higher arities recurse on the first direction.
      Complex w(1.0, 0.0);
      for (int n = 0; n < M; ++n) {
        acc *= qpochhammer(z * w, nomes.subspan(1), trunc);
        w *= nomes[0];
      }
      return acc;
    }
  }
}

Complex theta_big(Complex z, Complex p, const Truncation& trunc) {
  if (z == Complex(0.0, 0.0)) fail(ErrorKind::ZeroArgument, "theta_big at z=0");
  const double ap = std::abs(p);
  if (!(ap > 0.0 && ap < 1.0)) fail(ErrorKind::NomeOutOfDisk, "theta_big nome");
  return qpochhammer(z, p, trunc) * qpochhammer(p / z, p, trunc) * qpochhammer(p, p, trunc);
}

Complex theta_char(const Characteristics& ch, Complex xi, Complex tau, const Truncation& trunc) {
  trunc.validate();
  const double t = tau.imag();
  if (!(t > 0.0)) fail(ErrorKind::TauNotInUpperHalfPlane, "theta_char");

  const double g1 = to_double(ch.gamma1);
  const double g2 = to_double(ch.gamma2);
  const int M = trunc.series_order;

  // Tail certificate: beyond |m| = M the term moduli are dominated by the
  // geometric sequence exp(-pi t (2|m|+1-2|g1|) + 2 pi B) with
  // B = |Im xi| (g2 is real). Require ratio < 1 and a tail sum < tol/10.
  const double B = std::abs(xi.imag());
  const double ratio =
      std::exp(-kPi * t * (2.0 * M + 1.0 - 2.0 * std::abs(g1)) + 2.0 * kPi * B);
  if (!(ratio < 1.0)) fail(ErrorKind::TruncationInsufficient, "theta_char tail ratio");
  const double edge =
      std::exp(-kPi * t * (M - std::abs(g1)) * (M - std::abs(g1)) + 2.0 * kPi * (M + std::abs(g1)) * B);
  if (!(edge * ratio / (1.0 - ratio) < trunc.target_tol / 10.0))
    fail(ErrorKind::TruncationInsufficient, "theta_char tail sum");

  Complex acc(0.0, 0.0);
  for (int m = -M; m <= M; ++m) {
    const double a = m + g1;
    acc += std::exp(kIPi * (a * a) * tau + 2.0 * kIPi * a * (xi + g2));
  }
  return acc;
}

}  // namespace ellva
