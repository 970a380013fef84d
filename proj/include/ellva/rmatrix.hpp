#pragma once

#include "ellva/params.hpp"
#include "ellva/tensor.hpp"
#include "ellva/theta.hpp"

namespace ellva {

// Builders and identity residuals for the Z_N-vertex elliptic R-matrix.
//
// All spectral shifts run through SpectralPoint so that the fractional
// prefactors z^{2/N-2} and the characteristic series stay on one branch
// sheet; overloads taking a bare complex z lift it on the principal branch.

// Bare weight-sum matrix Z(z,q,p) on the two-site space.
Matrix build_Z(const ModelParams& mp, SpectralPoint z, const Truncation& trunc);

// Gauge-rotated R = (g^{1/2} (x) g^{1/2}) Z (g^{-1/2} (x) g^{-1/2}).
Matrix build_R(const ModelParams& mp, SpectralPoint z, const Truncation& trunc);
inline Matrix build_R(const ModelParams& mp, Complex z, const Truncation& trunc) {
  return build_R(mp, SpectralPoint::from_z(z), trunc);
}

// tau_N(z) = z^{2/N-2} Theta_{q^{2N}}(q z^2) / Theta_{q^{2N}}(q z^{-2}).
Complex tau_N(const ModelParams& mp, SpectralPoint z, const Truncation& trunc);
inline Complex tau_N(const ModelParams& mp, Complex z, const Truncation& trunc) {
  return tau_N(mp, SpectralPoint::from_z(z), trunc);
}

// Rhat(z) = tau_N(q^{1/2} z^{-1}) R(z).
Matrix build_Rhat(const ModelParams& mp, SpectralPoint z, const Truncation& trunc);
inline Matrix build_Rhat(const ModelParams& mp, Complex z, const Truncation& trunc) {
  return build_Rhat(mp, SpectralPoint::from_z(z), trunc);
}

// U(z) = q^{2/N-2} Theta(q^2 z^2) Theta(q^2 z^-2) / (Theta(z^2) Theta(z^-2)),
// all nomes q^{2N}. Depends on z only through z^{+-2}.
Complex scalar_U(const ModelParams& mp, Complex z, const Truncation& trunc);

// Cross-check route U(z) = tau_N(q^{1/2} z) tau_N(q^{1/2} z^{-1}).
Complex scalar_U_via_tau(const ModelParams& mp, SpectralPoint z, const Truncation& trunc);


// Independent N=2 oracle: the eight-vertex form assembled from Theta_{p^2}
// ratios. The corner entries carry the factor -s/(q z^2); together with the
// carrier convention e^{i pi tau} = -s this is the sign produced by the
// weight-sum builder (and the one under which the quasi-periodicity shift is
// s). N = 2 only.
Matrix explicit_R_n2(const ModelParams& mp, SpectralPoint z, const Truncation& trunc);

// Worst entrywise relative deviation of build_R from explicit_R_n2.
double explicit_matrix_residual(const ModelParams& mp, SpectralPoint z, const Truncation& trunc);

// --- identity residuals (max-norm), all branch-exact in xi ---

double regularity_residual(const ModelParams& mp, const Truncation& trunc);
double unitarity_residual(const ModelParams& mp, SpectralPoint z, const Truncation& trunc);
double ybe_residual(const ModelParams& mp, SpectralPoint z, SpectralPoint w, const Truncation& trunc);
double crossing_residual(const ModelParams& mp, SpectralPoint z, const Truncation& trunc);
double antisymmetry_residual(const ModelParams& mp, SpectralPoint z, const Truncation& trunc);
double quasiperiodicity_residual(const ModelParams& mp, SpectralPoint z, const Truncation& trunc);
// (Rhat^{t2})^{-1} = (Rhat(q^N x)^{-1})^{t2}
double transpose_inversion_residual(const ModelParams& mp, SpectralPoint z, const Truncation& trunc);
// Rhat_12(z) Rhat_21(1/z) = U(z) I
double unitarity_hat_residual(const ModelParams& mp, SpectralPoint z, const Truncation& trunc);

// G^{-m} (x) I  intertwines Rhat(x) with Rhat(s^m x) at weight F_m(x)
// (starred variant: s_star, Rhat*, F*_m).
double intertwiner_residual(const ModelParams& mp, int m, SpectralPoint x, bool starred,
                            const Truncation& trunc);

// R(z0) at a removable 0/0 point, via two-sided Richardson along the ray.
Matrix limit_R(const ModelParams& mp, SpectralPoint z0, const Truncation& trunc,
               double delta = 1e-3);

// || R(-q^{-1}) - (I - P) ||, N = 2 only. The builder actually lands on the
// gauge-twisted antisymmetrizer I - (g^{-1} (x) I) P (g (x) I); this residual
// measures the untwisted comparison and sits at 2 for every parameter point.
double antisymmetrizer_residual(const ModelParams& mp, const Truncation& trunc);

// || R(-q^{-1}) - (I - (g^{-1} (x) I) P (g (x) I)) ||, the identity the
// weight-sum construction satisfies. N = 2 only.
double antisymmetrizer_twisted_residual(const ModelParams& mp, const Truncation& trunc);

}  // namespace ellva
