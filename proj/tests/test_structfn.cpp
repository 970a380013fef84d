#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ellva/rmatrix.hpp"
#include "ellva/sampling.hpp"
#include "ellva/structfn.hpp"

using namespace ellva;

namespace {

const Truncation kTr;

// Generic (non-abelian) point of the S_{2,-1} family at N=2:
// 2 sigma - sigma* = -2 with sigma = 1.37.
ModelParams on_S21(double q = 0.4, double sigma = 1.37) {
  return ModelParams::from_s(2, Complex(q, 0.0), Complex(std::pow(q, sigma), 0.0), -sigma - 2.0);
}

const SurfaceSpec kSpec21{2, -1};

}  // namespace

TEST_CASE("calF basics") {
  const ModelParams mp = on_S21();
  const Complex x(0.9, 0.35);
  CHECK(calF(0, x, false, mp, kTr) == Complex(1.0, 0.0));
  CHECK(std::abs(calF(1, x, false, mp, kTr) - scalar_U(mp, x, kTr)) == 0.0);
  CHECK(std::abs(calF(-1, x, false, mp, kTr) * scalar_U(mp, x / mp.s(), kTr) - 1.0) < 1e-12);
}

TEST_CASE("calF equals its Theta-quadruple form") {
  const ModelParams mp = on_S21();
  CHECK(calF_theta(0, Complex(0.7, 0.1), mp, kTr) == Complex(1.0, 0.0));
  AnnulusSampler sampler(0x5EED);
  for (int i = 0; i < 8; ++i) {
    const Complex x = sampler.next();
    for (int a : {1, 2, 3, -1, -2})
      CHECK(std::abs(calF(a, x, false, mp, kTr) - calF_theta(a, x, mp, kTr)) < 1e-10);
  }
}

TEST_CASE("opposite-order forms compose to one at carrier-shifted points") {
  const ModelParams mp = on_S21();
  const Complex x(1.1, -0.2);
  for (int m : {1, 2, 3}) {
    Complex shift(1.0, 0.0);
    for (int k = 0; k < m; ++k) shift /= mp.s();
    CHECK(std::abs(calF_theta(m, shift * x, mp, kTr) * calF_theta(-m, x, mp, kTr) - 1.0) < 1e-10);
  }
}

TEST_CASE("calF is q^N periodic") {
  const ModelParams mp = on_S21();
  const Complex x(0.8, 0.3);
  const Complex qN = mp.q() * mp.q();
  for (int a : {1, 3, -2})
    CHECK(std::abs(calF(a, qN * x, false, mp, kTr) - calF(a, x, false, mp, kTr)) < 1e-10);
}

TEST_CASE("surface rewrite F_m(s*^n x) F_-m(x) = 1") {
  const ModelParams mp = on_S21();
  const Complex x(0.85, 0.4);
  const int m = kSpec21.m, n = kSpec21.n;
  Complex shift(1.0, 0.0);
  for (int k = 0; k < -n; ++k) shift /= mp.s_star();
  CHECK(std::abs(calF(m, shift * x, false, mp, kTr) * calF(-m, x, false, mp, kTr) - 1.0) < 1e-10);
}

TEST_CASE("Y ratio form: symmetry, inversion, fixed point") {
  const ModelParams mp = on_S21();
  const Complex x(0.83, 0.4);
  const Complex y = calY(kSpec21, x, mp, kTr);
  CHECK(std::abs(y - calY_raw(SurfaceSpec{-2, 1}, x, mp, kTr)) < 1e-12);
  CHECK(std::abs(y * calY(kSpec21, 1.0 / x, mp, kTr) - 1.0) < 1e-11);
  // x = 1 pairs the U(1) poles away
  CHECK(std::abs(calY(kSpec21, Complex(1.0, 0.0), mp, kTr) - 1.0) < 1e-11);
  CHECK(std::abs(calY_alt(kSpec21, x, mp, kTr) - y) < 1e-11);
  CHECK(std::abs(calY_alt(kSpec21, x, mp, kTr, /*prefer_full_m=*/false) - y) < 1e-11);
}

TEST_CASE("calY refuses off-surface parameters") {
  const ModelParams off = ModelParams::from_p(2, Complex(0.4, 0.0), Complex(0.09, 0.0), -2.0);
  CHECK_THROWS_AS(calY(kSpec21, Complex(0.8, 0.1), off, kTr), Error);
  CHECK_NOTHROW(calY_raw(kSpec21, Complex(0.8, 0.1), off, kTr));
}

TEST_CASE("g_k series and product agree on the series domain") {
  const ModelParams mp = ModelParams::from_p(2, Complex(0.4, 0.0), Complex(0.45, 0.0), -1.5);
  for (Complex z : {Complex(0.15, 0.0), Complex(-0.1, 0.05), Complex(0.02, 0.1)}) {
    for (int k : {1, 2}) {
      const Complex a = g_k(k, z, false, mp, kTr, GkForm::series);
      const Complex b = g_k(k, z, false, mp, kTr, GkForm::product);
      CHECK(std::abs(a - b) < 1e-11);
    }
  }
  CHECK(g_k(1, Complex(0.0, 0.0), false, mp, kTr, GkForm::series) == Complex(1.0, 0.0));
  CHECK(g_k(1, Complex(0.0, 0.0), false, mp, kTr, GkForm::product) == Complex(1.0, 0.0));
}

TEST_CASE("g_k starred is the p -> p* substitution") {
  const ModelParams mp = ModelParams::from_p(2, Complex(0.4, 0.0), Complex(0.45, 0.0), -0.5);
  const ModelParams swapped = ModelParams::from_s(2, mp.q(), mp.s_star(), 0.0);
  const Complex z(0.2, 0.1);
  CHECK(std::abs(g_k(1, z, true, mp, kTr, GkForm::product) -
                 g_k(1, z, false, swapped, kTr, GkForm::product)) < 1e-12);
}

TEST_CASE("g_k series rejects arguments outside its disk") {
  // |z/p| > 1 makes the exponential series diverge; the product form is the
  // right evaluation there.
  const ModelParams mp = ModelParams::from_p(2, Complex(0.4, 0.0), Complex(0.09, 0.0), -2.0);
  CHECK_THROWS_AS(g_k(1, Complex(0.3, 0.0), false, mp, kTr, GkForm::series), Error);
  CHECK_NOTHROW(g_k(1, Complex(0.3, 0.0), false, mp, kTr, GkForm::product));
}

TEST_CASE("factorized Y matches the ratio form on S_21") {
  const ModelParams mp = on_S21();
  AnnulusSampler sampler(0x5EED);
  for (int i = 0; i < 8; ++i) {
    const Complex x = sampler.next();
    CHECK(std::abs(calY(kSpec21, x, mp, kTr) - calY_factored(kSpec21, x, mp, kTr)) < 1e-10);
  }
  CHECK(std::abs(calY_factored(kSpec21, Complex(1.0, 0.0), mp, kTr) - 1.0) < 1e-11);
}

TEST_CASE("factorized Y with an empty m-product, spec (1, n)") {
  // m sigma + n sigma* = -2 with m=1, n=3.
  const double sigst = 0.41;
  const double sig = -2.0 - 3.0 * sigst;
  const ModelParams mp =
      ModelParams::from_s(2, Complex(0.4, 0.0), Complex(std::pow(0.4, sig), 0.0), sig - sigst);
  const SurfaceSpec spec{1, 3};
  const Complex x(0.9, 0.2);
  CHECK(std::abs(calY(spec, x, mp, kTr) - calY_factored(spec, x, mp, kTr)) < 1e-10);
}

TEST_CASE("tildeY reduces to the DVA structure function on S_{2,-1}") {
  const ModelParams mp = on_S21();
  AnnulusSampler sampler(0x5EED);
  for (int i = 0; i < 6; ++i) {
    const Complex x = sampler.next();
    const Complex x2 = x * x;
    const Complex dva = g_k(1, 1.0 / x2, false, mp, kTr, GkForm::product) /
                        g_k(1, x2, false, mp, kTr, GkForm::product);
    CHECK(std::abs(tildeY(2, x, false, mp, kTr) - dva) < 1e-10);
  }
  CHECK(std::abs(tildeY(2, Complex(1.0, 0.0), false, mp, kTr) - 1.0) < 1e-11);
}

TEST_CASE("N=2-only evaluations reject the wrong rank") {
  const ModelParams mp3 = ModelParams::from_p(3, Complex(0.4, 0.0), Complex(0.09, 0.0), -3.0);
  CHECK_THROWS_AS(tildeY(2, Complex(0.9, 0.1), false, mp3, kTr), Error);
  CHECK_THROWS_AS(calY_factored(kSpec21, Complex(0.9, 0.1), mp3, kTr), Error);
}

TEST_CASE("DVA parameter map Q = 1/p, P = q^2, 1/t = p q^2") {
  const Complex p(0.0813, 0.0);
  const Complex q(0.4, 0.0);
  const Complex Q = 1.0 / p, P = q * q, t_inv = p * q * q;
  CHECK(std::abs(P / Q - t_inv) < 1e-15);
  for (int l = 1; l <= 20; ++l) {
    const Complex ours = (1.0 - std::pow(p, -l)) * (1.0 - std::pow(p * q * q, l)) /
                         (1.0 + std::pow(q * q, l));
    const Complex theirs =
        (1.0 - std::pow(Q, l)) * (1.0 - std::pow(t_inv, l)) / (1.0 + std::pow(P, l));
    CHECK(std::abs(ours - theirs) < 1e-12 * std::abs(ours));
  }
}
