#include "ellva/params.hpp"

namespace ellva {

ModelParams ModelParams::from_s(int N, Complex q, Complex s, double c) {
  if (N < 2) fail(ErrorKind::WrongRank, "N must be >= 2");
  const double aq = std::abs(q);
  if (!(aq > 0.0 && aq < 1.0)) fail(ErrorKind::NomeOutOfDisk, "q outside the open unit disk");
  if (s == Complex(0.0, 0.0)) fail(ErrorKind::ZeroArgument, "carrier s must be nonzero");

  ModelParams mp;
  mp.N_ = N;
  mp.q_ = q;
  mp.c_ = c;
  mp.s_ = s;
  mp.zeta_ = std::log(q) / Complex(0.0, kPi);
  // q^{-c} on the principal branch, computed once.
  mp.s_star_ = s * std::exp(-c * std::log(q));
  mp.tau_ = std::log(-s) / Complex(0.0, kPi);
  mp.tau_star_ = std::log(-mp.s_star_) / Complex(0.0, kPi);
  return mp;
}

void ModelParams::require_nomes_in_disk() const {
  const double ap = std::abs(p());
  const double aps = std::abs(p_star());
  if (!(ap > 0.0 && ap < 1.0)) fail(ErrorKind::NomeOutOfDisk, "|p| not in (0,1)");
  if (!(aps > 0.0 && aps < 1.0)) fail(ErrorKind::NomeOutOfDisk, "|p*| not in (0,1)");
}

GaugeMatrices::GaugeMatrices(int N) {
  const Complex om = std::exp(Complex(0.0, 2.0 * kPi / N));
  g = Matrix::Zero(N, N);
  g_half = Matrix::Zero(N, N);
  h = Matrix::Zero(N, N);
  for (int a = 0; a < N; ++a) {
    g(a, a) = std::pow(om, a);
    g_half(a, a) = std::exp(Complex(0.0, kPi * a / N));
    h(a, (a + 1) % N) = 1.0;
  }
  G = g_half * h * g_half;
}

}  // namespace ellva
