#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ellva/limits.hpp"

using namespace ellva;

namespace {
const Truncation kTr;
const ScalingGrid kGrid;
}

TEST_CASE("scaling grid validation") {
  ScalingGrid bad;
  bad.eps = {1e-2, 5e-3};
  CHECK_THROWS_AS(bad.validate(), Error);
  bad.eps = {1e-2, 5e-3, 6e-3, 1e-3};
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_NOTHROW(kGrid.validate());
}

TEST_CASE("scaling coefficient of g^(k)") {
  // k=1, eta=1, z=0.3: -(3/2) * 0.3 / 0.49
  const Complex got = scaling_coeff_gk(1, 1.0, Complex(0.3, 0.0), kGrid);
  CHECK(std::abs(got - Complex(-0.9183673469387755, 0.0)) < 1e-4 * 0.92);

  for (int k : {2, 4}) {
    for (double eta : {0.5, 2.0}) {
      const Complex v = scaling_coeff_gk(k, eta, Complex(0.2, 0.0), kGrid);
      const double want = scaling_closed_form_gk(k, eta, Complex(0.2, 0.0));
      CHECK(std::abs(v - want) < 1e-4 * std::abs(want));
    }
  }

  // z = 0 is an exact fixed point of the profile.
  CHECK(std::abs(scaling_coeff_gk(2, 1.0, Complex(0.0, 0.0), kGrid)) < 1e-10);
}

TEST_CASE("scaling coefficient of g*^(k) carries the central charge") {
  const double c = -2.0;
  const Complex got = scaling_coeff_gk(1, 1.0, Complex(0.3, 0.0), kGrid, true, c);
  const double want = scaling_closed_form_gk_starred(1, 1.0, c, Complex(0.3, 0.0));
  CHECK(std::abs(got - want) < 1e-4 * std::abs(want));
}

TEST_CASE("beta coefficient values") {
  CHECK(beta_coefficient(2, 1.0) == doctest::Approx(1.0));   // 2*1*3/6 + 1*2*0
  CHECK(beta_coefficient(1, 0.5) == doctest::Approx(-0.5));  // 0 + eta*1*(-1)
  CHECK(beta_coefficient(-2, 1.0) == doctest::Approx(9.0));  // 2*1*3/6 + 8
}

TEST_CASE("scaling coefficient of g_mn at the surface-consistent charge") {
  for (auto [m, n, eta] : {std::tuple{2, -1, 1.0}, {3, 2, 1.0}, {1, 1, 0.5}}) {
    const double c = surface_consistent_c(m, n, eta);
    const Complex got = scaling_coeff_gmn(m, n, c, eta, Complex(0.3, 0.0), kGrid);
    const double want = scaling_closed_form_gmn(m, n, c, eta, Complex(0.3, 0.0));
    CHECK(std::abs(got - want) < 1e-4 * std::max(1.0, std::abs(want)));
  }
  CHECK(std::abs(scaling_coeff_gmn(2, -1, surface_consistent_c(2, -1, 1.0), 1.0,
                                   Complex(0.0, 0.0), kGrid)) < 1e-10);
  // Off the consistent charge the displayed combination no longer matches.
  const Complex off = scaling_coeff_gmn(2, -1, -2.0, 1.0, Complex(0.3, 0.0), kGrid);
  const double wrong = scaling_closed_form_gmn(2, -1, -2.0, 1.0, Complex(0.3, 0.0));
  CHECK(std::abs(off - wrong) > 1e-2);
}

TEST_CASE("Poisson case derivation") {
  PoissonCase pc;
  pc.tag = PoissonCaseTag::n_unit_even;
  pc.m = 2; pc.n = 1; pc.ell = 2;
  pc.validate(2);
  CHECK(pc.k_sup == 2);
  CHECK(pc.sign == 1);

  pc.tag = PoissonCaseTag::n_unit_odd;
  pc.ell = 1;
  pc.m = 2; pc.n = -1;
  pc.validate(2);
  CHECK(pc.k_sup == 1);  // mn < 0 drops one unit

  pc.tag = PoissonCaseTag::n_unit_divisor;
  pc.m = 4; pc.n = 1; pc.u = 5; pc.ell = 2;
  pc.validate(2);
  CHECK(pc.g == 1);
  CHECK(pc.eta_sign == -1);  // u divides k_sup + 1
  CHECK(pc.w == 1);

  pc.u = 2; pc.ell = 3;
  pc.validate(2);
  CHECK(pc.g == 2);
  CHECK(pc.eta_sign == 1);

  PoissonCase bad;
  bad.tag = PoissonCaseTag::n_unit_even;
  bad.m = 2; bad.n = 1; bad.ell = 3;  // parity mismatch
  CHECK_THROWS_AS(bad.validate(2), Error);
  bad.tag = PoissonCaseTag::n_unit_divisor;
  bad.ell = 2; bad.u = 4;  // k_sup = 2: 4 divides neither 2 nor 3
  CHECK_THROWS_AS(bad.validate(2), Error);
  bad.tag = PoissonCaseTag::both_large;
  bad.m = 2; bad.n = -3; bad.ell = 2;  // gcd(ell, m) = 2
  CHECK_THROWS_AS(bad.validate(2), Error);
}

TEST_CASE("Poisson I profiles") {
  const Complex q(0.45, 0.0);
  PoissonCase pc;
  pc.tag = PoissonCaseTag::n_unit_even;
  pc.m = 2; pc.n = 1; pc.ell = 2;
  pc.validate(2);

  // Prefactor m(m+1)/2 = 3 on the even profile.
  const Complex x(0.3, 0.2);
  Complex base(0.0, 0.0);
  {
    const Complex x2 = x * x;
    Complex t = std::pow(q, 4);
    for (int s = 1; s < 4000; ++s) {
      const Complex term = x2 * t / (1.0 - x2 * t);
      base += term;
      t *= std::pow(q, 4);
      if (std::abs(term) < 1e-18) break;
    }
    base += 0.5 * x2 / (1.0 - x2);
  }
  CHECK(std::abs(poisson_I(pc, x, 2, q, kTr) - 3.0 * base) < 1e-12);

  // Floor terms for the odd profile at m=3, n=+1: weights
  // floor(3/2)(floor(3/2)+1) = 2 on the even lattice and floor(4/2)^2 = 4 on
  // the odd one.
  PoissonCase odd;
  odd.tag = PoissonCaseTag::n_unit_odd;
  odd.m = 3; odd.n = 1; odd.ell = 1;
  odd.validate(2);
  CHECK(odd.k_sup == 3);
  {
    const Complex x2 = x * x;
    Complex even_sum(0.0, 0.0), odd_sum(0.0, 0.0);
    for (int s = 1; s < 200; ++s) even_sum += x2 * std::pow(q, 4 * s) / (1.0 - x2 * std::pow(q, 4 * s));
    for (int s = 0; s < 200; ++s) odd_sum += x2 * std::pow(q, 2 * (2 * s + 1)) / (1.0 - x2 * std::pow(q, 2 * (2 * s + 1)));
    const Complex expect = 2.0 * (even_sum + 0.5 * x2 / (1.0 - x2)) + 4.0 * odd_sum;
    CHECK(std::abs(poisson_I(odd, x, 2, q, kTr) - expect) < 1e-11);
  }

  // I vanishes with x.
  CHECK(std::abs(poisson_I(pc, Complex(1e-8, 0.0), 2, q, kTr)) < 1e-14);
}

TEST_CASE("Poisson closed form against the finite-difference oracle") {
  const Complex q(0.45, 0.0);
  const Complex x(0.8 * std::cos(0.35), 0.8 * std::sin(0.35));

  auto check_case = [&](PoissonCase pc) {
    pc.validate(2);
    const Complex closed = poisson_f(pc, x, 2, q, kTr);
    const Complex oracle = poisson_fd_oracle(pc, x, 2, q, 1e-5, kTr);
    CHECK(std::abs(closed - oracle) < 1e-5 * std::max(std::abs(closed), 1e-3));
    CHECK(std::abs(poisson_f(pc, 1.0 / x, 2, q, kTr) + closed) < 1e-9 * std::abs(closed));
  };

  PoissonCase pc;
  pc.tag = PoissonCaseTag::both_large; pc.m = 2; pc.n = -3; pc.ell = 1;
  check_case(pc);
  pc.tag = PoissonCaseTag::n_unit_even; pc.m = 2; pc.n = 1; pc.ell = 2;
  check_case(pc);
  pc.tag = PoissonCaseTag::n_unit_odd; pc.m = 3; pc.n = 1; pc.ell = 1;
  check_case(pc);
  pc.tag = PoissonCaseTag::n_unit_divisor; pc.m = 4; pc.n = 1; pc.u = 5; pc.ell = 2;
  check_case(pc);
  pc.tag = PoissonCaseTag::m_unit; pc.m = 1; pc.n = 3; pc.ell = 2;
  check_case(pc);
}

TEST_CASE("Poisson odds and ends") {
  const Complex q(0.45, 0.0);
  PoissonCase pc;
  pc.tag = PoissonCaseTag::n_unit_even;
  pc.m = 2; pc.n = 1; pc.ell = 2;
  pc.validate(2);

  // x = 1 is the antisymmetry fixed point (a pole of each half separately).
  CHECK(poisson_f(pc, Complex(1.0, 0.0), 2, q, kTr) == Complex(0.0, 0.0));
  CHECK(poisson_f(pc, Complex(-1.0, 0.0), 2, q, kTr) == Complex(0.0, 0.0));

  // Oracle is stable in the step size.
  const Complex x(0.8, 0.3);
  const Complex a = poisson_fd_oracle(pc, x, 2, q, 1e-4, kTr);
  const Complex b = poisson_fd_oracle(pc, x, 2, q, 1e-5, kTr);
  CHECK(std::abs(a - b) < 1e-4 * std::abs(b));

  // q^N periodicity survives the folding.
  const Complex folded = poisson_f(pc, x * std::pow(q, 2), 2, q, kTr);
  CHECK(std::abs(folded - poisson_f(pc, x, 2, q, kTr)) < 1e-8 * std::abs(folded));
}

TEST_CASE("critical level: the exchange function is flat along the family") {
  // On c = -N every carrier gives Y = 1, so a c-preserving reparametrization
  // has zero logarithmic derivative.
  const SurfaceSpec spec{1, -1};
  auto lnY = [&](double sigma) {
    const ModelParams mp =
        ModelParams::from_s(2, Complex(0.6, 0.0), Complex(std::pow(0.6, sigma), 0.0), -2.0);
    return std::log(calY(spec, Complex(0.9, 0.25), mp, kTr));
  };
  const Complex d = (lnY(1.2 + 1e-4) - lnY(1.2 - 1e-4)) / 2e-4;
  CHECK(std::abs(d) < 1e-8);
}
