#include "ellva/rmatrix.hpp"

namespace ellva {

namespace {

// kappa^{-1}(z^2): ratio of eight double products in the nomes (p, q^{2N}).
Complex kappa_inv(const ModelParams& mp, Complex z2, const Truncation& trunc) {
  const Complex q = mp.q();
  const Complex p = mp.p();
  const int N = mp.N();
  const Complex q2N = std::pow(q, 2 * N);
  const Complex nomes[2] = {p, q2N};
  auto qp = [&](Complex arg) { return qpochhammer(arg, std::span<const Complex>(nomes, 2), trunc); };

  const Complex num = qp(q2N / z2) * qp(q * q * z2) * qp(p / z2) * qp(p * std::pow(q, 2 * N - 2) * z2);
  const Complex den = qp(q2N * z2) * qp(q * q / z2) * qp(p * z2) * qp(p * std::pow(q, 2 * N - 2) / z2);
  if (std::abs(den) < trunc.pole_threshold()) fail(ErrorKind::PoleProximity, "kappa denominator");
  return num / den;
}

void guard_denominator(Complex value, const Truncation& trunc, const char* where) {
  if (std::abs(value) < trunc.pole_threshold()) fail(ErrorKind::PoleProximity, where);
}

}  // namespace

Matrix build_Z(const ModelParams& mp, SpectralPoint z, const Truncation& trunc) {
  mp.require_nomes_in_disk();
  const int N = mp.N();
  const Complex xi = z.xi();
  const Complex ze = mp.zeta();
  const Complex tau = mp.tau();

  const Characteristics half{Rational(1, 2), Rational(1, 2)};
  const Complex th_den = theta_char(half, xi + ze, tau, trunc);
  guard_denominator(th_den, trunc, "Z theta prefactor");
  const Complex pref =
      z.pow(2.0 / N - 2.0) * kappa_inv(mp, z.z2(), trunc) * theta_char(half, ze, tau, trunc) / th_den;

  const GaugeMatrices gauge(N);
  Matrix acc = Matrix::Zero(N * N, N * N);
  Matrix g_pow = Matrix::Identity(N, N);
  for (int a2 = 0; a2 < N; ++a2) {
    Matrix I_mat = g_pow;
    for (int a1 = 0; a1 < N; ++a1) {
      const Characteristics ch = Characteristics::half_plus(a1, a2, N);
      const Complex w_den = theta_char(ch, ze / Complex(N), tau, trunc);
      guard_denominator(w_den, trunc, "weight denominator");
      const Complex W = theta_char(ch, xi + ze / Complex(N), tau, trunc) / (Complex(N) * w_den);
      // I = g^{a2} h^{a1}; monomial matrix, so the inverse is its conjugate
      // transpose up to the unimodular weights: use adjoint of the inverse via
      // solve-free formula I^{-1} = I^dagger for unitary I.
      acc += W * tensor::kron(I_mat, I_mat.adjoint());
      I_mat = I_mat * gauge.h;
    }
    g_pow = g_pow * gauge.g;
  }
  return pref * acc;
}

Matrix build_R(const ModelParams& mp, SpectralPoint z, const Truncation& trunc) {
  const GaugeMatrices gauge(mp.N());
  const Matrix C = tensor::kron(gauge.g_half, gauge.g_half);
  return C * build_Z(mp, z, trunc) * C.inverse();
}

Complex tau_N(const ModelParams& mp, SpectralPoint z, const Truncation& trunc) {
  const int N = mp.N();
  const Complex q = mp.q();
  const Complex q2N = std::pow(q, 2 * N);
  const Complex z2 = z.z2();
  const Complex den = theta_big(q / z2, q2N, trunc);
  guard_denominator(den, trunc, "tau_N denominator");
  return z.pow(2.0 / N - 2.0) * theta_big(q * z2, q2N, trunc) / den;
}

Matrix build_Rhat(const ModelParams& mp, SpectralPoint z, const Truncation& trunc) {
  const SpectralPoint arg(mp.zeta() / 2.0 - z.xi());  // q^{1/2} z^{-1}
  return tau_N(mp, arg, trunc) * build_R(mp, z, trunc);
}

Complex scalar_U(const ModelParams& mp, Complex z, const Truncation& trunc) {
  const int N = mp.N();
  const Complex q = mp.q();
  const Complex q2N = std::pow(q, 2 * N);
  // U is exactly q^N-periodic; fold the argument into the fundamental
  // annulus so extreme carrier shifts (large locus exponents) keep the
  // Theta products inside double range. The tau route stays unfolded, which
  // keeps the periodicity cross-checks meaningful.
  {
    const Complex qN = std::pow(q, N);
    const double aqN = std::abs(qN);
    int guard = 0;
    for (double az = std::abs(z); az > 1.0 / std::sqrt(aqN) && guard < 4096; ++guard)
      az = std::abs(z *= qN);
    for (double az = std::abs(z); az <= std::sqrt(aqN) && guard < 4096; ++guard)
      az = std::abs(z /= qN);
  }
  const Complex z2 = z * z;
  const Complex den = theta_big(z2, q2N, trunc) * theta_big(1.0 / z2, q2N, trunc);
  guard_denominator(den, trunc, "U denominator");
  return std::pow(q, 2.0 / N - 2.0) * theta_big(q * q * z2, q2N, trunc) *
         theta_big(q * q / z2, q2N, trunc) / den;
}

Complex scalar_U_via_tau(const ModelParams& mp, SpectralPoint z, const Truncation& trunc) {
  const Complex half_zeta = mp.zeta() / 2.0;
  return tau_N(mp, z.shifted(half_zeta), trunc) * tau_N(mp, z.inverse().shifted(half_zeta), trunc);
}


Matrix explicit_R_n2(const ModelParams& mp, SpectralPoint z, const Truncation& trunc) {
  if (mp.N() != 2) fail(ErrorKind::WrongRank, "explicit matrix requires N=2");
  mp.require_nomes_in_disk();
  const Complex q = mp.q();
  const Complex p = mp.p();
  const Complex p2 = p * p;
  const Complex z2 = z.z2();
  auto T = [&](Complex w) { return theta_big(w, p2, trunc); };

  const Complex den_ad = T(p * q * q * z2);
  const Complex den_bc = T(q * q * z2);
  if (std::abs(den_ad) < trunc.pole_threshold() || std::abs(den_bc) < trunc.pole_threshold())
    fail(ErrorKind::PoleProximity, "explicit N=2 matrix");

  const Complex a = T(p * z2) * T(p * q * q) / (z.z() * den_ad);
  const Complex d = -mp.s() / (q * z2) * T(z2) * T(q * q) / den_ad;
  const Complex b = q * T(z2) * T(p * q * q) / (z.z() * den_bc);
  const Complex c = T(p * z2) * T(q * q) / den_bc;

  Matrix M(4, 4);
  M << a, 0, 0, d,
       0, b, c, 0,
       0, c, b, 0,
       d, 0, 0, a;
  const Complex pref =
      kappa_inv(mp, z2, trunc) * qpochhammer(p2, p2, trunc) /
      (qpochhammer(p, p, trunc) * qpochhammer(p, p, trunc));
  return pref * M;
}

double explicit_matrix_residual(const ModelParams& mp, SpectralPoint z, const Truncation& trunc) {
  return tensor::max_rel_diff(build_R(mp, z, trunc), explicit_R_n2(mp, z, trunc));
}

double regularity_residual(const ModelParams& mp, const Truncation& trunc) {
  const Matrix R = build_R(mp, SpectralPoint(Complex(0.0, 0.0)), trunc);
  return tensor::max_abs(R - tensor::permutation(mp.N()));
}

double unitarity_residual(const ModelParams& mp, SpectralPoint z, const Truncation& trunc) {
  const int N = mp.N();
  const Matrix R = build_R(mp, z, trunc);
  const Matrix Rinv = tensor::swap_sites(build_R(mp, z.inverse(), trunc), N);
  return tensor::max_abs(R * Rinv - tensor::identity(N * N));
}

double ybe_residual(const ModelParams& mp, SpectralPoint z, SpectralPoint w, const Truncation& trunc) {
  const int N = mp.N();
  const Matrix R12 = tensor::embed12(build_R(mp, z, trunc), N);
  const Matrix R13 = tensor::embed13(build_R(mp, w, trunc), N);
  const Matrix R23 = tensor::embed23(build_R(mp, SpectralPoint(w.xi() - z.xi()), trunc), N);
  return tensor::max_abs(R12 * R13 * R23 - R23 * R13 * R12);
}

double crossing_residual(const ModelParams& mp, SpectralPoint z, const Truncation& trunc) {
  const int N = mp.N();
  const Matrix A = tensor::transpose_site2(build_R(mp, z, trunc), N);
  // z^{-1} q^{-N}: xi -> -xi - N zeta
  const SpectralPoint cz(-z.xi() - Complex(N) * mp.zeta());
  const Matrix B = tensor::transpose_site2(tensor::swap_sites(build_R(mp, cz, trunc), N), N);
  return tensor::max_abs(A * B - tensor::identity(N * N));
}

double antisymmetry_residual(const ModelParams& mp, SpectralPoint z, const Truncation& trunc) {
  const int N = mp.N();
  const GaugeMatrices gauge(N);
  const Matrix lhs = build_R(mp, z.negated(), trunc);
  const Matrix rhs = mp.omega() * tensor::on_site1(gauge.g.inverse(), N) *
                     build_R(mp, z, trunc) * tensor::on_site1(gauge.g, N);
  return tensor::max_abs(lhs - rhs);
}

double quasiperiodicity_residual(const ModelParams& mp, SpectralPoint z, const Truncation& trunc) {
  const int N = mp.N();
  const GaugeMatrices gauge(N);
  const Matrix GI = tensor::on_site1(gauge.G, N);
  const Matrix lhs = build_Rhat(mp, z.shifted(mp.carrier_shift()), trunc);
  const Matrix inner = tensor::swap_sites(build_Rhat(mp, z.inverse(), trunc), N);
  const Matrix rhs = GI.inverse() * inner.inverse() * GI;
  return tensor::max_abs(lhs - rhs);
}

double transpose_inversion_residual(const ModelParams& mp, SpectralPoint z, const Truncation& trunc) {
  const int N = mp.N();
  const Matrix lhs = tensor::transpose_site2(build_Rhat(mp, z, trunc), N).inverse();
  const SpectralPoint shifted = z.shifted(Complex(N) * mp.zeta());
  const Matrix rhs = tensor::transpose_site2(build_Rhat(mp, shifted, trunc).inverse(), N);
  return tensor::max_abs(lhs - rhs);
}

double unitarity_hat_residual(const ModelParams& mp, SpectralPoint z, const Truncation& trunc) {
  const int N = mp.N();
  const Matrix Rh = build_Rhat(mp, z, trunc);
  const Matrix Rh21 = tensor::swap_sites(build_Rhat(mp, z.inverse(), trunc), N);
  const Complex U = scalar_U(mp, z.z(), trunc);
  return tensor::max_abs(Rh * Rh21 - U * tensor::identity(N * N));
}

namespace {

Complex calF_for_intertwiner(const ModelParams& mp, int m, SpectralPoint x, bool starred,
                             const Truncation& trunc) {
  // F_m(x) = prod U(s^k x), k = 0..m-1 (inverse product for m < 0).
  const Complex shift = mp.carrier_shift(starred);
  Complex acc(1.0, 0.0);
  if (m > 0) {
    for (int k = 0; k < m; ++k) acc *= scalar_U(mp, x.shifted(Complex(k) * shift).z(), trunc);
  } else {
    for (int k = 1; k <= -m; ++k) acc /= scalar_U(mp, x.shifted(Complex(-k) * shift).z(), trunc);
  }
  return acc;
}

}  // namespace

double intertwiner_residual(const ModelParams& mp, int m, SpectralPoint x, bool starred,
                            const Truncation& trunc) {
  if (std::abs(m) > 8) fail(ErrorKind::InvalidConfig, "intertwiner order |m| <= 8");
  const int N = mp.N();
  const GaugeMatrices gauge(N);
  const ModelParams& builder = starred ? mp.starred() : mp;

  Matrix Gm = Matrix::Identity(N, N);
  const Matrix Gstep = m >= 0 ? Matrix(gauge.G.inverse()) : gauge.G;
  for (int k = 0; k < std::abs(m); ++k) Gm = Gm * Gstep;
  const Matrix M0 = tensor::on_site1(Gm, N);

  const Complex F = calF_for_intertwiner(mp, m, x, starred, trunc);
  const Matrix lhs = M0 * build_Rhat(builder, x, trunc);
  const Matrix rhs = F * build_Rhat(builder, x.shifted(Complex(m) * mp.carrier_shift(starred)), trunc) * M0;
  return tensor::max_abs(lhs - rhs);
}

Matrix limit_R(const ModelParams& mp, SpectralPoint z0, const Truncation& trunc, double delta) {
  // Two-sided averages kill the odd orders; one Richardson step then leaves
  // O(delta^4). Offsets are multiplicative along the ray: xi -> xi + eps/(i pi).
  auto even_avg = [&](double d) {
    const Complex dxi = std::log(Complex(1.0 + d)) / Complex(0.0, kPi);
    const Complex dxi2 = std::log(Complex(1.0 - d)) / Complex(0.0, kPi);
    return Matrix(0.5 * (build_R(mp, z0.shifted(dxi), trunc) + build_R(mp, z0.shifted(dxi2), trunc)));
  };
  const Matrix E1 = even_avg(delta);
  const Matrix E2 = even_avg(delta / 2.0);
  const Matrix E3 = even_avg(delta / 4.0);
  const Matrix R1 = (4.0 * E2 - E1) / 3.0;
  const Matrix R2 = (4.0 * E3 - E2) / 3.0;
  return (16.0 * R2 - R1) / 15.0;
}

namespace {

Matrix antisymmetrizer_point(const ModelParams& mp, const Truncation& trunc) {
  if (mp.N() != 2) fail(ErrorKind::WrongRank, "antisymmetrizer requires N=2");
  mp.require_nomes_in_disk();
  // z = -q^{-1}: xi = 1 - zeta. kappa^{-1} and the b,c entries share a zero
  // there, so the value is a removable 0/0 limit.
  const SpectralPoint z0(Complex(1.0, 0.0) - mp.zeta());
  return limit_R(mp, z0, trunc);
}

}  // namespace

double antisymmetrizer_residual(const ModelParams& mp, const Truncation& trunc) {
  const Matrix A = tensor::identity(4) - tensor::permutation(2);
  return tensor::max_abs(antisymmetrizer_point(mp, trunc) - A);
}

double antisymmetrizer_twisted_residual(const ModelParams& mp, const Truncation& trunc) {
  const GaugeMatrices gauge(2);
  const Matrix gi = tensor::on_site1(gauge.g.inverse(), 2);
  const Matrix gf = tensor::on_site1(gauge.g, 2);
  const Matrix A = tensor::identity(4) - gi * tensor::permutation(2) * gf;
  return tensor::max_abs(antisymmetrizer_point(mp, trunc) - A);
}

}  // namespace ellva
