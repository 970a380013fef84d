#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include "ellva/rmatrix.hpp"
#include "ellva/sampling.hpp"

using namespace ellva;

namespace {

const Truncation kTr;

ModelParams params2() { return ModelParams::from_p(2, Complex(0.4, 0.0), Complex(0.09, 0.0), -2.0); }
ModelParams params3() {
  return ModelParams::from_p(3, Complex(0.4, 0.05), Complex(0.09, 0.0), -2.0);
}

// Straight-from-formula oracle for Z: identical assembly, but every
// characteristic series is replaced by its Theta-product bridge, so the
// transcendental layer is a different code path entirely.
Complex bridge_theta(const Characteristics& ch, Complex xi, Complex tau) {
  const double g1 = to_double(ch.gamma1), g2 = to_double(ch.gamma2);
  auto p_pow = [&](double e) { return std::exp(Complex(0.0, 2.0 * kPi) * tau * e); };
  auto z_pow = [&](double e) { return std::exp(Complex(0.0, kPi) * xi * e); };
  const Complex p = p_pow(1.0);
  return std::exp(Complex(0.0, kPi) * (2.0 * g1 * g2)) * p_pow(g1 * g1 / 2.0) * z_pow(2.0 * g1) *
         theta_big(-std::exp(Complex(0.0, 2.0 * kPi * g2)) * p_pow(g1 + 0.5) * z_pow(2.0), p, kTr);
}

Matrix oracle_Z(const ModelParams& mp, SpectralPoint z) {
  const int N = mp.N();
  const Complex xi = z.xi();
  const Complex ze = mp.zeta();
  const Complex tau = mp.tau();
  const Complex q = mp.q();
  const Complex p = mp.p();
  const Complex q2N = std::pow(q, 2 * N);
  const Complex nomes[2] = {p, q2N};
  auto qp2 = [&](Complex a) { return qpochhammer(a, std::span<const Complex>(nomes, 2), kTr); };
  const Complex z2 = z.z2();
  const Complex kinv = qp2(q2N / z2) * qp2(q * q * z2) * qp2(p / z2) *
                       qp2(p * std::pow(q, 2 * N - 2) * z2) /
                       (qp2(q2N * z2) * qp2(q * q / z2) * qp2(p * z2) *
                        qp2(p * std::pow(q, 2 * N - 2) / z2));
  const Characteristics half{Rational(1, 2), Rational(1, 2)};
  const Complex pref =
      z.pow(2.0 / N - 2.0) * kinv * bridge_theta(half, ze, tau) / bridge_theta(half, xi + ze, tau);

  const GaugeMatrices gauge(N);
  Matrix acc = Matrix::Zero(N * N, N * N);
  for (int a2 = 0; a2 < N; ++a2) {
    for (int a1 = 0; a1 < N; ++a1) {
      const Characteristics ch = Characteristics::half_plus(a1, a2, N);
      const Complex W = bridge_theta(ch, xi + ze / Complex(N), tau) /
                        (Complex(N) * bridge_theta(ch, ze / Complex(N), tau));
      Matrix I_mat = Matrix::Identity(N, N);
      for (int i = 0; i < a2; ++i) I_mat = I_mat * gauge.g;
      for (int i = 0; i < a1; ++i) I_mat = I_mat * gauge.h;
      acc += W * tensor::kron(I_mat, I_mat.adjoint());
    }
  }
  return pref * acc;
}

}  // namespace

TEST_CASE("Z builder against the product-representation oracle, N=3") {
  const ModelParams mp = params3();
  const SpectralPoint z = SpectralPoint::from_z(Complex(0.7 * std::cos(0.3), 0.7 * std::sin(0.3)));
  const Matrix built = build_Z(mp, z, kTr);
  const Matrix want = oracle_Z(mp, z);
  REQUIRE(built.rows() == 9);
  CHECK(tensor::max_rel_diff(built, want) < 1e-11);
}

TEST_CASE("explicit eight-vertex form at N=2") {
  const ModelParams mp = params2();
  AnnulusSampler sampler(0x5EED);
  for (int i = 0; i < 6; ++i) {
    const SpectralPoint z = SpectralPoint::from_z(sampler.next());
    CHECK(explicit_matrix_residual(mp, z, kTr) < 1e-12);
  }
}

TEST_CASE("regularity R(1) = P") {
  CHECK(regularity_residual(params2(), kTr) < 1e-12);
  CHECK(regularity_residual(params3(), kTr) < 1e-12);
}

TEST_CASE("core identities at sampled spectral points") {
  for (const ModelParams& mp : {params2(), params3()}) {
    AnnulusSampler sampler(0x5EED);
    for (int i = 0; i < 4; ++i) {
      const SpectralPoint z = SpectralPoint::from_z(sampler.next());
      const SpectralPoint w = SpectralPoint::from_z(sampler.next());
      CHECK(unitarity_residual(mp, z, kTr) < 1e-10);
      CHECK(ybe_residual(mp, z, w, kTr) < 1e-10);
      CHECK(crossing_residual(mp, z, kTr) < 1e-10);
      CHECK(antisymmetry_residual(mp, z, kTr) < 1e-10);
      CHECK(quasiperiodicity_residual(mp, z, kTr) < 1e-10);
      CHECK(transpose_inversion_residual(mp, z, kTr) < 1e-10);
      CHECK(unitarity_hat_residual(mp, z, kTr) < 1e-10);
    }
  }
}

TEST_CASE("YBE with coincident spectral points and the permutation sanity") {
  const ModelParams mp = params2();
  const SpectralPoint z = SpectralPoint::from_z(Complex(0.7, 0.0));
  CHECK(ybe_residual(mp, z, z, kTr) < 1e-10);

  // Constant permutation satisfies the braid form of the relation.
  const int N = 2;
  const Matrix P12 = tensor::embed12(tensor::permutation(N), N);
  const Matrix P13 = tensor::embed13(tensor::permutation(N), N);
  const Matrix P23 = tensor::embed23(tensor::permutation(N), N);
  CHECK(tensor::max_abs(P12 * P13 * P23 - P23 * P13 * P12) == 0.0);
}

TEST_CASE("tau_N scalar properties") {
  for (const ModelParams& mp : {params2(), params3()}) {
    CHECK(std::abs(tau_N(mp, SpectralPoint(Complex(0.0, 0.0)), kTr) - 1.0) < 1e-12);
    const SpectralPoint z = SpectralPoint::from_z(Complex(0.8, 0.3));
    CHECK(std::abs(tau_N(mp, z, kTr) * tau_N(mp, z.inverse(), kTr) - 1.0) < 1e-11);
    const SpectralPoint shifted = z.shifted(Complex(mp.N()) * mp.zeta());
    CHECK(std::abs(tau_N(mp, shifted, kTr) - tau_N(mp, z, kTr)) < 1e-11);
  }
}

TEST_CASE("scalar U: symmetry, tau route, frozen value") {
  const ModelParams mp = params2();
  const Complex z(0.8, 0.25);
  CHECK(std::abs(scalar_U(mp, z, kTr) - scalar_U(mp, 1.0 / z, kTr)) < 1e-12);
  const SpectralPoint zp = SpectralPoint::from_z(z);
  CHECK(std::abs(scalar_U(mp, z, kTr) - scalar_U_via_tau(mp, zp, kTr)) < 1e-11);
  CHECK(scalar_U(mp, Complex(0.8, 0.0), kTr).real() ==
        doctest::Approx(-6.1778038993666362).epsilon(1e-12));
  // U has poles at the Theta zeros z^{+-2} = 1
  CHECK_THROWS_AS(scalar_U(mp, Complex(1.0, 0.0), kTr), Error);
}

TEST_CASE("intertwiners") {
  const ModelParams mp = params2();
  const SpectralPoint x = SpectralPoint::from_z(Complex(0.9, 0.4));
  CHECK(intertwiner_residual(mp, 0, x, false, kTr) == 0.0);
  for (bool starred : {false, true}) {
    CHECK(intertwiner_residual(mp, 1, x, starred, kTr) < 1e-10);
    CHECK(intertwiner_residual(mp, 3, x, starred, kTr) < 1e-10);
    CHECK(intertwiner_residual(mp, -2, x, starred, kTr) < 1e-10);
  }
  const ModelParams mp3 = params3();
  CHECK(intertwiner_residual(mp3, 2, x, false, kTr) < 1e-10);
  CHECK(intertwiner_residual(mp3, -1, x, true, kTr) < 1e-10);
}

TEST_CASE("antisymmetrizer point at z = -1/q") {
  const ModelParams mp = ModelParams::from_p(2, Complex(0.45, 0.0), Complex(0.1, 0.0), -2.0);
  // The weight-sum matrix lands on the g-twisted antisymmetrizer; the
  // untwisted comparison measures the gauge distance, which is exactly 2.
  CHECK(antisymmetrizer_twisted_residual(mp, kTr) < 1e-9);
  CHECK(antisymmetrizer_residual(mp, kTr) == doctest::Approx(2.0).epsilon(1e-9));

  // Projector facts underneath the construction.
  const Matrix A = tensor::identity(4) - tensor::permutation(2);
  CHECK(tensor::max_abs((A / 2.0) * (A / 2.0) - A / 2.0) == 0.0);
  const Eigen::JacobiSVD<Matrix> svd(A);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-12) ++rank;
  CHECK(rank == 1);

  CHECK_THROWS_AS(antisymmetrizer_residual(params3(), kTr), Error);
}

TEST_CASE("pole detection aborts instead of returning garbage") {
  const ModelParams mp = params2();
  // tau_N has a Theta zero when q z^{-2} = 1.
  const SpectralPoint bad = SpectralPoint::from_z(std::sqrt(Complex(0.4, 0.0)));
  CHECK_THROWS_AS(tau_N(mp, bad, kTr), Error);
}

TEST_CASE("gauge matrix facts") {
  for (int N : {2, 3, 4, 5}) {
    const GaugeMatrices gauge(N);
    Matrix gN = Matrix::Identity(N, N);
    for (int i = 0; i < N; ++i) gN = gN * gauge.g;
    CHECK(tensor::max_abs(gN - Matrix::Identity(N, N)) < 1e-12);
    Matrix hN = Matrix::Identity(N, N);
    for (int i = 0; i < N; ++i) hN = hN * gauge.h;
    CHECK(tensor::max_abs(hN - Matrix::Identity(N, N)) == 0.0);
    Matrix GN = Matrix::Identity(N, N);
    for (int i = 0; i < N; ++i) GN = GN * gauge.G;
    const double sign = (N % 2 == 1) ? 1.0 : -1.0;
    CHECK(tensor::max_abs(GN - sign * Matrix::Identity(N, N)) < 1e-12);
  }
}
