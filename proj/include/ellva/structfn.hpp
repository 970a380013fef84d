#pragma once

#include "ellva/params.hpp"
#include "ellva/theta.hpp"

namespace ellva {

// Surface label S_{mn}: (-p^{1/2})^m (-p*^{1/2})^n = q^{-N}, i.e.
// s^m s_star^n = q^{-N} in carrier form.
struct SurfaceSpec {
  int m = 0;
  int n = 0;

  void validate() const {
    if (m == 0 && n == 0) fail(ErrorKind::InvalidConfig, "surface label (0,0)");
  }
};

// |s^m s_star^n - q^{-N}|
double surface_residual(const ModelParams& mp, const SurfaceSpec& spec);

// Exchange factor F_a(x): ordered product of U(s^k x) for a > 0, empty for
// a = 0, inverse product with negative shifts for a < 0. starred replaces the
// shift carrier s by s_star.
Complex calF(int a, Complex x, bool starred, const ModelParams& mp, const Truncation& trunc);

// Same function through the Theta_{q^{2N}} quadruple products with the
// p^{+-k} shifts multiplied out.
Complex calF_theta(int m, Complex x, const ModelParams& mp, const Truncation& trunc);

// Y_mn(x) = F*_n(x) F*_{-n}(x) / (F_m(x) F_{-m}(x)); valid for any N.
// Matching pole pairs between numerator and denominator (notably U(x) at
// x = 1) cancel exactly before evaluation. Requires the parameters to sit on
// S_mn; calY_raw skips that check (off-surface sweeps, negative controls).
Complex calY(const SurfaceSpec& spec, Complex x, const ModelParams& mp, const Truncation& trunc);
Complex calY_raw(const SurfaceSpec& spec, Complex x, const ModelParams& mp, const Truncation& trunc);

// Index-folded on-surface form of Y_mn: products of U(s^{-k}x)/U(s^k x) and
// U(s*^{k'}x)/U(s*^{-k'}x) up to case-dependent upper bounds. prefer_full_m
// selects which of the two equivalent mn>0 foldings is used.
Complex calY_alt(const SurfaceSpec& spec, Complex x, const ModelParams& mp, const Truncation& trunc,
                 bool prefer_full_m = true);

enum class GkForm { series, product };

// g^{(k)}(z) = exp( sum_{l>=1} (1-p^{-kl})(1-(p^k q^2)^l)/(1+q^{2l}) z^l/l ).
// The product route evaluates the same function from four (.;q^4) Pochhammer
// factors; the series route needs every geometric piece inside the unit disk.
Complex g_k(int k, Complex z, bool starred, const ModelParams& mp, const Truncation& trunc,
            GkForm form);

// Same function on bare (p, q); the scaling limits drive p and q through
// 1 + O(eps), outside the ModelParams nome domain.
Complex g_k_raw(int k, Complex z, Complex p, Complex q, const Truncation& trunc, GkForm form);

// N=2 factorized evaluation of Y_mn via
//   g_mn(z) = g_corr(z) (prod_{k<|m|} g^{(k)}(z))^2 (prod_{k<|n|} g*^{(k)}(z))^{-2},
//   g_corr(z) = g^{(|m|)}(z) / g*^{(|n|)}(z),
// combined as Y_mn(x) = g_mn(x^-2)/g_mn(x^2). With g^{(k)} normalized by its
// series representation this fraction direction is the one that reproduces
// the F-ratio form; the product-form route is used so surface-sized nomes
// stay inside the evaluation domain.
Complex calY_factored(const SurfaceSpec& spec, Complex x, const ModelParams& mp,
                      const Truncation& trunc);

// Deformed-Virasoro structure functions on S_{m,-1} (starred: S_{-1,n}):
// a tau_2 prefactor ratio times Y_{m,-1}(x) (resp. Y_{-1,n}(x)). N = 2 only.
Complex tildeY(int m_or_n, Complex x, bool starred, const ModelParams& mp, const Truncation& trunc);

// Exchange factor of the m+n=0 commutant family:
//   prod_{k=1}^{m} U(s*^{-k}x)/U(s^{-k}x)  (m > 0)
//   prod_{k=0}^{-m-1} U(s^{k}x)/U(s*^{k}x) (m < 0),
// both equal to F_{-m}(x) / F*_{-m}(x).
Complex commutant_exchange_ratio(int m, Complex x, const ModelParams& mp, const Truncation& trunc);

}  // namespace ellva
