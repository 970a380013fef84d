#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellva/rational.hpp"
#include "ellva/structfn.hpp"

namespace ellva {

enum class LocusCase { generic, n_unit, m_unit, antidiagonal, localized_center };

const char* to_string(LocusCase c);

// A fully solved parameter point on which Y_mn is expected to be identically
// one. Everything is exact-rational; s and s_star instantiate as q^exponent.
struct AbelianLocus {
  SurfaceSpec spec;
  LocusCase case_tag = LocusCase::generic;
  Rational c{0};
  Rational lambda{0};
  Rational lambda_prime{0};
  Rational s_exponent{0};
  Rational s_star_exponent{0};
  // m+n=0, |n|=1 critical levels constrain only c; the exponent recorded
  // there is an arbitrary admissible representative.
  bool free_p = false;

  // s_exponent*m + s_star_exponent*n = -N and c = s_exponent - s_star_exponent.
  void check_consistency(int N) const;
  // |p| and |p*| both inside the unit disk for real q in (0,1).
  bool instantiable() const {
    return s_exponent > Rational(0) && s_star_exponent > Rational(0);
  }
};

struct BezoutData {
  long long a = 0, b = 0, gcd = 0, beta = 0, beta_prime = 0;
};

// Extended Euclid with beta canonicalized to 0 <= beta < |b|/gcd for b != 0.
BezoutData bezout(long long a, long long b);

// Roots of s^{m+n} = q^{nc-N} (via s_star = s q^{-c}). For m+n = 0 the
// equation degenerates: c = N/n is forced and s stays free.
struct SurfaceSolution {
  std::vector<Complex> roots;
  bool free_family = false;
};
SurfaceSolution solve_surface(const SurfaceSpec& spec, Complex q, const Rational& c, int N);

// All loci of the matching case families with |lambda|, |lambda'| and
// divisor searches bounded, deduplicated on (c, s_exponent).
std::vector<AbelianLocus> enumerate_abelian_loci(int m, int n, int N, int bound);

// Model parameters at the locus for a given real q in (0,1).
ModelParams instantiate(const AbelianLocus& locus, double q, int N);

// max over sampled x of |Y_mn(x) - 1|; sampling is seeded and resamples on
// pole hits. The F-ratio form only needs |q| < 1, so loci with |p| >= 1 are
// still measurable; `instantiable()` records the disk status separately.
double check_locus(const AbelianLocus& locus, double q, int N, int samples,
                   const Truncation& trunc, unsigned long long seed = 0x5EED);

// Same residual with the central charge displaced off the locus.
double check_locus_perturbed(const AbelianLocus& locus, double q, int N, int samples,
                             const Truncation& trunc, double c_offset,
                             unsigned long long seed = 0x5EED);

struct LocalizedCenterResult {
  std::optional<AbelianLocus> locus;
  std::string rejection;  // names the violated condition when empty locus
  BezoutData bz;
};

// Commutant family on S_{m,-m}: m odd, |m| != 1; accepts lambda iff
// lambda != |m|-1, gcd(lambda, m) = 1 and gcd(beta+1, m) = 1.
LocalizedCenterResult localized_center_params(int m, int N, long long lambda);

// sigma(k) = m + k(beta+1) mod m is a bijection of {1..m}.
bool permutation_span_check(int m, long long lambda);

// max over samples of |exchange ratio - 1| for the commutant family.
double verify_localized_center(const AbelianLocus& locus, double q, int N, int samples,
                               const Truncation& trunc, unsigned long long seed = 0x5EED);

}  // namespace ellva
