#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ellva/theta.hpp"

using namespace ellva;

namespace {

const Truncation kTr;

// Independent brute-force oracles, deliberately written as bare loops.
Complex oracle_qpoch2(Complex z, Complex p1, Complex p2, int order) {
  Complex acc(1.0, 0.0);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      acc *= 1.0 - z * std::pow(p1, a) * std::pow(p2, b);
  return acc;
}

Complex oracle_theta_char(double g1, double g2, Complex xi, Complex tau, int order) {
  Complex acc(0.0, 0.0);
  for (int m = -order; m <= order; ++m) {
    const double a = m + g1;
    acc += std::exp(Complex(0.0, kPi) * (a * a * tau + 2.0 * a * (xi + g2)));
  }
  return acc;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

TEST_CASE("qpochhammer basics") {
  CHECK(std::abs(qpochhammer(Complex(0.0, 0.0), Complex(0.1, 0.0), kTr) - 1.0) == 0.0);
  CHECK(std::abs(qpochhammer(Complex(1.0, 0.0), Complex(0.1, 0.0), kTr)) == 0.0);

  const Complex nomes[2] = {Complex(0.1, 0.0), Complex(0.04, 0.0)};
  const Complex got = qpochhammer(Complex(0.5, 0.0), std::span<const Complex>(nomes, 2), kTr);
  const Complex want = oracle_qpoch2(Complex(0.5, 0.0), nomes[0], nomes[1], 64);
  CHECK(std::abs(got - want) < 1e-13);
  CHECK(got.real() == doctest::Approx(0.46145907790779672).epsilon(1e-13));
}

TEST_CASE("qpochhammer rejects bad nomes") {
  CHECK_THROWS_AS(qpochhammer(Complex(0.5, 0.0), Complex(1.1, 0.0), kTr), Error);
  Truncation tight;
  tight.product_order = 4;
  CHECK_THROWS_AS(qpochhammer(Complex(0.5, 0.0), Complex(0.9, 0.0), tight), Error);
}

TEST_CASE("theta_big values and zeros") {
  CHECK(std::abs(theta_big(Complex(1.0, 0.0), Complex(0.1, 0.0), kTr)) == 0.0);
  const Complex got = theta_big(Complex(0.5, 0.0), Complex(0.1, 0.0), kTr);
  CHECK(got.real() == doctest::Approx(0.32886706409684302).epsilon(1e-13));
  CHECK_THROWS_AS(theta_big(Complex(0.0, 0.0), Complex(0.1, 0.0), kTr), Error);
  CHECK_THROWS_AS(theta_big(Complex(0.5, 0.0), Complex(1.0, 0.0), kTr), Error);
}

TEST_CASE("theta_big quasi-periodicity on a sampled grid") {
  std::mt19937_64 rng(0x5EED);
  for (int i = 0; i < 24; ++i) {
    const Complex z = std::polar(0.4 + 1.2 * unit(rng), 2.0 * kPi * unit(rng));
    const Complex p = std::polar(0.05 + 0.4 * unit(rng), 2.0 * kPi * unit(rng));
    const Complex t = theta_big(z, p, kTr);
    CHECK(std::abs(theta_big(p * z, p, kTr) + t / z) < kTr.target_tol);
    CHECK(std::abs(theta_big(1.0 / z, p, kTr) + t / z) < kTr.target_tol);
    // half-period symmetry with a^2 = p
    const Complex a = std::sqrt(p);
    CHECK(std::abs(theta_big(a * z, p, kTr) - theta_big(a / z, p, kTr)) < kTr.target_tol);
  }
}

TEST_CASE("theta_char against the direct summation oracle") {
  const Characteristics ch{Rational(1, 2), Rational(1, 2)};
  const Complex got = theta_char(ch, Complex(0.3, 0.0), Complex(0.0, 2.0), kTr);
  const Complex want = oracle_theta_char(0.5, 0.5, Complex(0.3, 0.0), Complex(0.0, 2.0), 40);
  CHECK(std::abs(got - want) < 1e-14);
  CHECK(got.real() == doctest::Approx(-0.33635577206042).epsilon(1e-12));
}

TEST_CASE("theta_char shift properties") {
  const Complex xi(0.21, 0.07);
  const Complex tau(0.3, 1.1);
  const Characteristics ch{Rational(5, 6), Rational(1, 3)};
  const double g1 = to_double(ch.gamma1);

  // gamma2 + 1 multiplies by e^{2 i pi gamma1}
  const Characteristics shifted{ch.gamma1, ch.gamma2 + Rational(1)};
  const Complex lhs = theta_char(shifted, xi, tau, kTr);
  const Complex rhs = std::exp(Complex(0.0, 2.0 * kPi * g1)) * theta_char(ch, xi, tau, kTr);
  CHECK(std::abs(lhs - rhs) < kTr.target_tol);

  // xi + l1 tau + l2 for integer (l1, l2)
  for (int l1 : {-1, 1}) {
    for (int l2 : {0, 1}) {
      const Complex arg = xi + Complex(l1) * tau + Complex(l2);
      const Complex a = theta_char(ch, arg, tau, kTr);
      const double g2 = to_double(ch.gamma2);
      const Complex phase = std::exp(Complex(0.0, kPi) * (-Complex(l1 * l1) * tau - 2.0 * Complex(l1) * xi)) *
                            std::exp(Complex(0.0, 2.0 * kPi) * (g1 * l2 - g2 * l1));
      CHECK(std::abs(a - phase * theta_char(ch, xi, tau, kTr)) < kTr.target_tol);
    }
  }

  // mixed shift exchange for non-integer lambda
  const double l1 = 1.0 / 3.0, l2 = 0.5;
  const Complex arg = xi + l1 * tau + l2;
  const Characteristics moved{ch.gamma1 + Rational(1, 3), ch.gamma2 + Rational(1, 2)};
  const double g2 = to_double(ch.gamma2);
  const Complex phase =
      std::exp(Complex(0.0, kPi) * (-l1 * l1 * tau - 2.0 * l1 * (xi + g2 + l2)));
  CHECK(std::abs(theta_char(ch, arg, tau, kTr) - phase * theta_char(moved, xi, tau, kTr)) <
        kTr.target_tol);
}

TEST_CASE("theta_char bridges to the Theta product") {
  // theta[g](xi,tau) = (-1)^{2 g1 g2} p^{g1^2/2} z^{2 g1} Theta_p(-e^{2 i pi g2} p^{g1+1/2} z^2)
  const Complex tau(0.12, 1.05);
  const Complex xi(0.4, -0.1);
  for (auto [n1, n2, den] : {std::tuple{1, 1, 2}, {5, 7, 6}, {2, 1, 3}}) {
    const Characteristics ch{Rational(n1, den), Rational(n2, den)};
    const double g1 = to_double(ch.gamma1), g2 = to_double(ch.gamma2);
    const Complex p = std::exp(Complex(0.0, 2.0 * kPi) * tau);
    auto p_pow = [&](double e) { return std::exp(Complex(0.0, 2.0 * kPi) * tau * e); };
    auto z_pow = [&](double e) { return std::exp(Complex(0.0, kPi) * xi * e); };
    const Complex sign_phase = std::exp(Complex(0.0, kPi) * (2.0 * g1 * g2));
    const Complex rhs = sign_phase * p_pow(g1 * g1 / 2.0) * z_pow(2.0 * g1) *
                        theta_big(-std::exp(Complex(0.0, 2.0 * kPi * g2)) * p_pow(g1 + 0.5) *
                                      z_pow(2.0),
                                  p, kTr);
    CHECK(std::abs(theta_char(ch, xi, tau, kTr) - rhs) < kTr.target_tol);
  }
}

TEST_CASE("doubling the truncation orders is inert") {
  Truncation doubled = kTr;
  doubled.product_order *= 2;
  doubled.series_order *= 2;
  const Complex z(0.7, 0.2);
  const Complex p(0.3, 0.1);
  CHECK(std::abs(theta_big(z, p, kTr) - theta_big(z, p, doubled)) < kTr.target_tol);
  const Characteristics ch{Rational(1, 2), Rational(1, 2)};
  CHECK(std::abs(theta_char(ch, z, Complex(0.1, 1.3), kTr) -
                 theta_char(ch, z, Complex(0.1, 1.3), doubled)) < kTr.target_tol);
}

TEST_CASE("theta_char rejects tau in the lower half plane") {
  const Characteristics ch{Rational(1, 2), Rational(1, 2)};
  CHECK_THROWS_AS(theta_char(ch, Complex(0.1, 0.0), Complex(0.1, -1.0), kTr), Error);
}
