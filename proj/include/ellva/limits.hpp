#pragma once

#include <vector>

#include "ellva/structfn.hpp"

namespace ellva {

// Epsilon grid for limit extraction, strictly decreasing, all < 0.1, at least
// four points so the Neville tableau can clear the low orders.
struct ScalingGrid {
  std::vector<double> eps{1e-2, 5e-3, 2.5e-3, 1.25e-3};

  void validate() const;
};

// Extrapolated eps^2 coefficient of g^{(k)} (starred: g*^{(k)}, which needs
// the central charge) along p = 1 + eps, q = 1 + eta eps. Closed forms:
//   g^{(k)}:  -k(k+2 eta)/2 * z/(1-z)^2
//   g*^{(k)}: -kk(kk+2 eta)/2 * z/(1-z)^2,  kk = k(1-2 eta c).
Complex scaling_coeff_gk(int k, double eta, Complex z, const ScalingGrid& grid,
                         bool starred = false, double c = 0.0);

// Extrapolated eps^2 coefficient of g_mn. The displayed closed form
//   -(beta_m - (1-2 eta c)^2 beta_n - 2 eta^2 c (1-2 eta c) n (n-2)) z/(1-z)^2
// holds exactly when c is the scaling image of the surface constraint,
// c = ((m+n)/(2 eta) + N)/n; surface_consistent_c supplies it.
Complex scaling_coeff_gmn(int m, int n, double c, double eta, Complex z, const ScalingGrid& grid);

double surface_consistent_c(int m, int n, double eta, int N = 2);

double scaling_closed_form_gk(int k, double eta, Complex z);
double scaling_closed_form_gk_starred(int k, double eta, double c, Complex z);
double beta_coefficient(int ell, double eta);  // |l|(|l|-1)(2|l|-1)/6 + eta l(l-2)
double scaling_closed_form_gmn(int m, int n, double c, double eta, Complex z);

enum class PoissonCaseTag { both_large, n_unit_even, n_unit_odd, n_unit_divisor, m_unit };

const char* to_string(PoissonCaseTag t);

// One deformation direction off an abelian locus. ell indexes the direction
// (the alpha of the case fixes the exponent lattice); the derived fields are
// filled by validate(). `sign` is the overall normalization pinned against
// the finite-difference oracle: +1 except for the both_large and m_unit
// cases, whose displayed forms come out with the opposite orientation.
struct PoissonCase {
  PoissonCaseTag tag = PoissonCaseTag::n_unit_even;
  int m = 2;
  int n = 1;
  int ell = 2;   // ell' for the m_unit case
  int u = 1;     // divisor case only

  // derived
  int k_sup = 0;
  int w = 1;
  int w_prime = 1;
  int g = 1;
  int eta_sign = 1;
  double alpha = 1.0;
  int sign = 1;

  void validate(int N);
};

// Case-appropriate I(x) series (geometric sums certified by their ratio).
Complex poisson_I(const PoissonCase& pc, Complex x, int N, Complex q, const Truncation& trunc);

// f_ell(x) = sign * 2 N ell ln(q) (2I(x) - I(qx) - I(x/q) - (x <-> 1/x)),
// with x folded into the fundamental annulus of the q^N periodicity first.
Complex poisson_f(const PoissonCase& pc, Complex x, int N, Complex q, const Truncation& trunc);

// Independent oracle: -(ln Y(eps) - ln Y(-eps))/(2 eps) along the on-surface
// deformation s-exponent(eps) = alpha N ell / (2(1-eps)).
Complex poisson_fd_oracle(const PoissonCase& pc, Complex x, int N, Complex q, double eps,
                          const Truncation& trunc);

}  // namespace ellva
