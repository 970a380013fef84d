#pragma once

#include "ellva/limits.hpp"
#include "ellva/report.hpp"
#include "ellva/rmatrix.hpp"
#include "ellva/surfaces.hpp"
#include "ellva/sweep.hpp"

namespace ellva {

struct SuiteOptions {
  int samples = 16;
  unsigned long long seed = 0x5EED;
  ExecMode mode = ExecMode::parallel;
  Truncation trunc;
};

// Full matrix-identity campaign at one parameter point: regularity,
// unitarity, Yang-Baxter, crossing, antisymmetry, quasi-periodicity,
// transpose-inversion exchange, hatted unitarity, the N=2 explicit-matrix
// cross-check, the antisymmetrizer point (untwisted and twisted), the
// intertwiners for |m| <= 4, and the surface solver consistency.
VerificationReport rmatrix_identity_suite(const ModelParams& mp, const SuiteOptions& opt);

// Representation equivalences: F products vs Theta form, g^{(k)} series vs
// product, Y via F-ratios vs factorized N=2 form, tilde-Y vs the g^{(1)}
// ratio. Runs on an S_{2,-1} family point at the given q.
VerificationReport structfn_equivalence_suite(double q, const SuiteOptions& opt);

// Abelianity atlas over |m|, |n| <= mmax/nmax plus negative controls.
struct AtlasRecord {
  AbelianLocus locus;
  int N = 2;
  double q = 0.7;
  double residual = 0.0;
  bool instantiable = false;
  bool verified = false;
  std::string error;

  Json to_json() const;
};
std::vector<AtlasRecord> build_atlas(int N, double q, int mmax, int nmax, int bound,
                                     int samples, const SuiteOptions& opt);
VerificationReport atlas_suite(int N, double q, int mmax, int nmax, const SuiteOptions& opt);

// Localized-center campaign: accepted lambdas verify, rejected ones carry
// their reason, span check agrees with the gcd criterion for odd m <= 99.
VerificationReport localized_center_suite(int N, double q, const SuiteOptions& opt);

// Scaling-limit coefficients against closed forms, Poisson closed forms
// against the finite-difference oracle, antisymmetry of f.
VerificationReport scaling_suite(const SuiteOptions& opt);
VerificationReport poisson_suite(int N, double q, const SuiteOptions& opt);
VerificationReport verify_poisson_case(const PoissonCase& pc, int N, double q,
                                       const SuiteOptions& opt);

}  // namespace ellva
