#include "ellva/structfn.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "ellva/rmatrix.hpp"

namespace ellva {

namespace {

Complex ipow(Complex b, int e) {
  Complex acc(1.0, 0.0);
  const Complex f = e >= 0 ? b : 1.0 / b;
  for (int i = 0; i < std::abs(e); ++i) acc *= f;
  return acc;
}

// (argument, exponent) factors of F_a(x) under the carrier `shift`.
void append_factors(std::vector<std::pair<Complex, int>>& out, int a, Complex x, Complex shift,
                    int sign) {
  if (a > 0) {
    for (int k = 0; k < a; ++k) out.emplace_back(ipow(shift, k) * x, sign);
  } else {
    for (int k = 1; k <= -a; ++k) out.emplace_back(ipow(shift, -k) * x, -sign);
  }
}

}  // namespace

double surface_residual(const ModelParams& mp, const SurfaceSpec& spec) {
  spec.validate();
  const Complex lhs = ipow(mp.s(), spec.m) * ipow(mp.s_star(), spec.n);
  return std::abs(lhs - ipow(mp.q(), -mp.N()));
}

Complex calF(int a, Complex x, bool starred, const ModelParams& mp, const Truncation& trunc) {
  const Complex shift = starred ? mp.s_star() : mp.s();
  Complex acc(1.0, 0.0);
  if (a > 0) {
    for (int k = 0; k < a; ++k) acc *= scalar_U(mp, ipow(shift, k) * x, trunc);
  } else {
    for (int k = 1; k <= -a; ++k) acc /= scalar_U(mp, ipow(shift, -k) * x, trunc);
  }
  return acc;
}

Complex calF_theta(int m, Complex x, const ModelParams& mp, const Truncation& trunc) {
  if (m == 0) return Complex(1.0, 0.0);
  const int N = mp.N();
  const Complex q = mp.q();
  const Complex p = mp.p();
  const Complex q2N = std::pow(q, 2 * N);
  const Complex x2 = x * x;
  auto T = [&](Complex w) { return theta_big(w, q2N, trunc); };
  auto guarded_div = [&](Complex num, Complex den) {
    if (std::abs(den) < trunc.pole_threshold()) fail(ErrorKind::PoleProximity, "calF_theta");
    return num / den;
  };

  Complex acc = std::exp(Complex(m) * (2.0 / N - 2.0) * std::log(q));
  if (m > 0) {
    for (int k = 0; k < m; ++k) {
      const Complex pk = ipow(p, k);
      acc *= guarded_div(T(q * q * pk * x2) * T(q * q / (pk * x2)), T(pk * x2) * T(1.0 / (pk * x2)));
    }
  } else {
    for (int k = 1; k <= -m; ++k) {
      const Complex pk = ipow(p, k);
      acc *= guarded_div(T(x2 / pk) * T(pk / x2), T(q * q * x2 / pk) * T(q * q * pk / x2));
    }
  }
  return acc;
}

namespace {

Complex eval_Y_FF(const SurfaceSpec& spec, Complex x, const ModelParams& mp,
                  const Truncation& trunc) {
  // Collect U-factors of F*_n F*_-n / (F_m F_-m), then cancel numerator /
  // denominator factors whose arguments coincide; x = 1 pairs U(1) poles.
  std::vector<std::pair<Complex, int>> factors;
  append_factors(factors, spec.n, x, mp.s_star(), +1);
  append_factors(factors, -spec.n, x, mp.s_star(), +1);
  append_factors(factors, spec.m, x, mp.s(), -1);
  append_factors(factors, -spec.m, x, mp.s(), -1);

  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      if (factors[i].second * factors[j].second >= 0) continue;
      const double scale = std::abs(factors[i].first) + std::abs(factors[j].first);
      if (std::abs(factors[i].first - factors[j].first) <= 1e-12 * scale) {
        factors[i].second = 0;
        factors[j].second = 0;
        break;
      }
    }
  }

  Complex acc(1.0, 0.0);
  for (const auto& [arg, e] : factors) {
    if (e == 0) continue;
    const Complex u = scalar_U(mp, arg, trunc);
    acc *= (e > 0) ? u : 1.0 / u;
  }
  return acc;
}

}  // namespace

Complex calY(const SurfaceSpec& spec, Complex x, const ModelParams& mp, const Truncation& trunc) {
  const double resid = surface_residual(mp, spec);
  if (!(resid < 1e-9)) fail(ErrorKind::NotOnSurface, "surface residual " + std::to_string(resid));
  return eval_Y_FF(spec, x, mp, trunc);
}

Complex calY_raw(const SurfaceSpec& spec, Complex x, const ModelParams& mp,
                 const Truncation& trunc) {
  spec.validate();
  return eval_Y_FF(spec, x, mp, trunc);
}

Complex calY_alt(const SurfaceSpec& spec, Complex x, const ModelParams& mp, const Truncation& trunc,
                 bool prefer_full_m) {
  const int am = std::abs(spec.m), an = std::abs(spec.n);
  int k_sup, kp_sup;
  if (spec.m * spec.n > 0) {
    k_sup = prefer_full_m ? am : am - 1;
    kp_sup = prefer_full_m ? an - 1 : an;
  } else {
    k_sup = am - 1;
    kp_sup = an - 1;
  }
  Complex acc(1.0, 0.0);
  for (int k = 1; k <= k_sup; ++k)
    acc *= scalar_U(mp, ipow(mp.s(), -k) * x, trunc) / scalar_U(mp, ipow(mp.s(), k) * x, trunc);
  for (int k = 1; k <= kp_sup; ++k)
    acc *= scalar_U(mp, ipow(mp.s_star(), k) * x, trunc) /
           scalar_U(mp, ipow(mp.s_star(), -k) * x, trunc);
  return acc;
}

Complex g_k(int k, Complex z, bool starred, const ModelParams& mp, const Truncation& trunc,
            GkForm form) {
  return g_k_raw(k, z, starred ? mp.p_star() : mp.p(), mp.q(), trunc, form);
}

Complex g_k_raw(int k, Complex z, Complex p, Complex q, const Truncation& trunc, GkForm form) {
  if (k < 1) fail(ErrorKind::InvalidConfig, "g_k requires k >= 1");
  if (z == Complex(0.0, 0.0)) return Complex(1.0, 0.0);

  if (form == GkForm::series) {
    // Per-term geometric pieces must all sit inside the unit disk.
    const Complex pk = ipow(p, k);
    const double r = std::max({std::abs(z), std::abs(z / pk), std::abs(pk * q * q * z),
                               std::abs(q * q * z)});
    if (!(r < 0.95)) fail(ErrorKind::SeriesDiverges, "g_k series outside its disk");
    const double aq = std::abs(q);
    // |1 + q^{2l}| >= 1 - |q|^2 inside the disk and >= 1 for real q >= 1.
    const double denom_floor = aq < 1.0 ? (1.0 - aq * aq) : 1.0;
    const double majorant_scale = 4.0 / denom_floor;
    int L = 16;
    while (L < 100000 &&
           !(majorant_scale * std::pow(r, L + 1) / ((L + 1) * (1.0 - r)) < trunc.target_tol / 10.0))
      ++L;
    Complex S(0.0, 0.0);
    Complex zl(1.0, 0.0);
    for (int l = 1; l <= L; ++l) {
      zl *= z;
      S += (1.0 - ipow(p, -k * l)) * (1.0 - ipow(pk * q * q, l)) / (1.0 + ipow(q * q, l)) * zl /
           Complex(l);
    }
    return std::exp(S);
  }

  // Product route: the same function assembled from (.;q^4) factors. This is
  // the reciprocal of the raw fraction one would write down naively; the
  // series fixes the normalization and the cross-checks against the F-ratio
  // form pin it this way.
  const Complex q4 = std::pow(q, 4);
  const Complex pk = ipow(p, k);
  auto qp = [&](Complex a) { return qpochhammer(a, q4, trunc); };
  const Complex den = (1.0 - z) * qp(pk * z) * qp(q * q * z / pk);
  if (std::abs(den) < trunc.pole_threshold()) fail(ErrorKind::PoleProximity, "g_k product");
  return (1.0 - pk * z) * qp(z / pk) * qp(q * q * pk * z) / den;
}

namespace {

Complex g_mn_product(const SurfaceSpec& spec, Complex z, const ModelParams& mp,
                     const Truncation& trunc) {
  const int am = std::abs(spec.m), an = std::abs(spec.n);
  Complex acc = g_k(am, z, false, mp, trunc, GkForm::product) /
                g_k(an, z, true, mp, trunc, GkForm::product);
  for (int k = 1; k < am; ++k) {
    const Complex v = g_k(k, z, false, mp, trunc, GkForm::product);
    acc *= v * v;
  }
  for (int k = 1; k < an; ++k) {
    const Complex v = g_k(k, z, true, mp, trunc, GkForm::product);
    acc /= v * v;
  }
  return acc;
}

}  // namespace

Complex calY_factored(const SurfaceSpec& spec, Complex x, const ModelParams& mp,
                      const Truncation& trunc) {
  if (mp.N() != 2) fail(ErrorKind::WrongRank, "factorized Y requires N=2");
  if (spec.m == 0 || spec.n == 0) fail(ErrorKind::InvalidConfig, "factorized Y needs m,n nonzero");
  const double resid = surface_residual(mp, spec);
  if (!(resid < 1e-9)) fail(ErrorKind::NotOnSurface, "surface residual " + std::to_string(resid));
  const Complex x2 = x * x;
  // x^2 = 1/x^2: numerator and denominator are the same evaluation, with the
  // g^{(k)} poles at z = 1 pairing off. The ratio is exactly one.
  if (std::abs(x2 - 1.0 / x2) < 1e-12) return Complex(1.0, 0.0);
  return g_mn_product(spec, 1.0 / x2, mp, trunc) / g_mn_product(spec, x2, mp, trunc);
}

Complex tildeY(int m_or_n, Complex x, bool starred, const ModelParams& mp,
               const Truncation& trunc) {
  if (mp.N() != 2) fail(ErrorKind::WrongRank, "tildeY requires N=2");
  const SpectralPoint xp = SpectralPoint::from_z(x);
  const Complex half = mp.zeta() / 2.0;
  const double c = mp.c();

  // At x^2 = 1 the tau_2 prefactor pairs its poles between the x and 1/x
  // arguments and collapses to one.
  const bool self_dual = std::abs(x - 1.0 / x) < 1e-12;

  if (!starred) {
    const SurfaceSpec spec{m_or_n, -1};
    const Complex y = calY(spec, x, mp, trunc);
    if (self_dual) return y;
    // tau_2(q^{1/2-c} x) tau_2(q^{1/2} x^{-1}) / (tau_2(q^{1/2} x) tau_2(q^{1/2-c} x^{-1}))
    const Complex shifted = half - c * mp.zeta();
    const Complex pref = tau_N(mp, xp.shifted(shifted), trunc) *
                         tau_N(mp, xp.inverse().shifted(half), trunc) /
                         (tau_N(mp, xp.shifted(half), trunc) *
                          tau_N(mp, xp.inverse().shifted(shifted), trunc));
    return pref * y;
  }
  const SurfaceSpec spec{-1, m_or_n};
  const Complex y = calY(spec, x, mp, trunc);
  if (self_dual) return y;
  const Complex shifted = half + c * mp.zeta();
  const Complex pref = tau_N(mp, xp.inverse().shifted(shifted), trunc) *
                       tau_N(mp, xp.shifted(half), trunc) /
                       (tau_N(mp, xp.inverse().shifted(half), trunc) *
                        tau_N(mp, xp.shifted(shifted), trunc));
  return pref * y;
}

Complex commutant_exchange_ratio(int m, Complex x, const ModelParams& mp, const Truncation& trunc) {
  return calF(-m, x, false, mp, trunc) / calF(-m, x, true, mp, trunc);
}

}  // namespace ellva
