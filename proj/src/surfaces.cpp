#include "ellva/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ellva/sampling.hpp"

namespace ellva {

const char* to_string(LocusCase c) {
  switch (c) {
    case LocusCase::generic: return "generic";
    case LocusCase::n_unit: return "n_unit";
    case LocusCase::m_unit: return "m_unit";
    case LocusCase::antidiagonal: return "antidiagonal";
    case LocusCase::localized_center: return "localized_center";
  }
  return "?";
}

void AbelianLocus::check_consistency(int N) const {
  if (s_exponent * spec.m + s_star_exponent * spec.n != Rational(-N))
    fail(ErrorKind::InconsistentSurface, "exponent form of the surface condition");
  if (c != s_exponent - s_star_exponent)
    fail(ErrorKind::InconsistentSurface, "c vs exponent difference");
}

BezoutData bezout(long long a, long long b) {
  if (a == 0 && b == 0) fail(ErrorKind::BothZero, "bezout(0,0)");
  long long old_r = a, r = b;
  long long old_s = 1, s = 0;
  long long old_t = 0, t = 1;
  while (r != 0) {
    const long long q = old_r / r;
    std::tie(old_r, r) = std::pair(r, old_r - q * r);
    std::tie(old_s, s) = std::pair(s, old_s - q * s);
    std::tie(old_t, t) = std::pair(t, old_t - q * t);
  }
  long long g = old_r, beta = old_s, beta_p = old_t;
  if (g < 0) { g = -g; beta = -beta; beta_p = -beta_p; }
  if (b != 0) {
    const long long bb = std::abs(b) / g;
    beta = ((beta % bb) + bb) % bb;
    beta_p = (g - beta * a) / b;
  }
  return {a, b, g, beta, beta_p};
}

SurfaceSolution solve_surface(const SurfaceSpec& spec, Complex q, const Rational& c, int N) {
  spec.validate();
  const double aq = std::abs(q);
  if (!(aq > 0.0 && aq < 1.0)) fail(ErrorKind::NomeOutOfDisk, "q outside the open unit disk");

  SurfaceSolution out;
  const int mn = spec.m + spec.n;
  const Rational rhs_exp = c * spec.n - Rational(N);  // s^{m+n} = q^{nc - N}
  if (mn == 0) {
    if (c * spec.n != Rational(N))
      fail(ErrorKind::InconsistentSurface,
           "m+n=0 forces c = N/n, got c = " + to_string(c));
    out.free_family = true;
    return out;
  }
  const Complex base = std::exp(to_double(rhs_exp) / mn * std::log(q));
  const int count = std::abs(mn);
  for (int k = 0; k < count; ++k)
    out.roots.push_back(base * std::exp(Complex(0.0, 2.0 * kPi * k / mn)));
  return out;
}

namespace {

std::vector<long long> divisors_of(long long v) {
  v = std::abs(v);
  std::vector<long long> out;
  for (long long d = 1; d <= v; ++d)
    if (v % d == 0) out.push_back(d);
  return out;
}

AbelianLocus make_locus(const SurfaceSpec& spec, LocusCase tag, Rational c, Rational lambda,
                        Rational lambda_prime, Rational s_exp, Rational ss_exp, int N) {
  AbelianLocus l{spec, tag, c, lambda, lambda_prime, s_exp, ss_exp};
  l.check_consistency(N);
  return l;
}

void emit_n_unit(std::vector<AbelianLocus>& out, int m, int n, int N, const Rational& lambda) {
  // c = N n (1 - lambda (m+n)), s = q^{-N lambda}, s* = q^{-N n (1 - lambda m)}
  const Rational c = Rational(N * n) * (Rational(1) - lambda * (m + n));
  const Rational se = -Rational(N) * lambda;
  const Rational sse = -Rational(N * n) * (Rational(1) - lambda * m);
  out.push_back(make_locus({m, n}, LocusCase::n_unit, c, lambda, Rational(1) - lambda, se, sse, N));
}

void emit_m_unit(std::vector<AbelianLocus>& out, int m, int n, int N, const Rational& lambda_p) {
  // c = N m (lambda'(n+m) - 1), s = q^{-N m (1 - lambda' n)}, s* = q^{-N lambda'}
  const Rational c = Rational(N * m) * (lambda_p * (n + m) - Rational(1));
  const Rational se = -Rational(N * m) * (Rational(1) - lambda_p * n);
  const Rational sse = -Rational(N) * lambda_p;
  out.push_back(
      make_locus({m, n}, LocusCase::m_unit, c, Rational(1) - lambda_p, lambda_p, se, sse, N));
}

}  // namespace

std::vector<AbelianLocus> enumerate_abelian_loci(int m, int n, int N, int bound) {
  SurfaceSpec spec{m, n};
  spec.validate();
  if (std::abs(m) > 8 || std::abs(n) > 8) fail(ErrorKind::InvalidConfig, "|m|,|n| <= 8");
  std::vector<AbelianLocus> out;

  const int am = std::abs(m), an = std::abs(n);

  if (m + n == 0) {
    // Integer-lambda family: c = N/n forced, s = q^{-N lambda / m}.
    for (long long lam = -bound; lam <= bound; ++lam) {
      if (lam == 0) continue;
      const Rational lambda(lam);
      const Rational c = Rational(N, n);
      const Rational se = -Rational(N) * lambda / m;
      const Rational sse = se - c;
      out.push_back(make_locus(spec, LocusCase::generic, c, lambda, Rational(1) - lambda, se, sse, N));
    }
    // Cross-cancellation point for odd |n|, recorded on the sign-normalized
    // pair with n > 0 (Y_mn = Y_-m,-n makes the two queries one family).
    if (an % 2 == 1 && an > 1) {
      const Rational c(N, an);
      const Rational se = -Rational((an - 1) * N, 2 * an);
      const Rational sse = -Rational((an + 1) * N, 2 * an);
      out.push_back(make_locus({-an, an}, LocusCase::antidiagonal, c, Rational(0), Rational(0), se,
                               sse, N));
    }
  } else if (am == 1 && an == 1) {
    // m = n = +-1: half-integer lambda with lambda + lambda' = 1.
    for (long long j = -2 * bound; j <= 2 * bound; ++j) {
      const Rational lambda(j, 2);
      if (lambda == Rational(0) || lambda == Rational(1)) continue;
      emit_n_unit(out, m, n, N, lambda);
    }
  } else if (an == 1) {
    // lambda in Z/2 or Z/u, u | m or u | m+n.
    std::set<Rational> lambdas;
    std::vector<long long> units = divisors_of(am);
    for (long long u : divisors_of(std::abs(m + n))) units.push_back(u);
    units.push_back(2);
    for (long long u : units)
      for (long long j = -bound * u; j <= bound * u; ++j)
        if (j != 0) lambdas.insert(Rational(j, u));
    for (const Rational& lambda : lambdas) emit_n_unit(out, m, n, N, lambda);
  } else if (am == 1) {
    std::set<Rational> lambdas;
    std::vector<long long> units = divisors_of(an);
    for (long long u : divisors_of(std::abs(m + n))) units.push_back(u);
    units.push_back(2);
    for (long long u : units)
      for (long long j = -bound * u; j <= bound * u; ++j)
        if (j != 0) lambdas.insert(Rational(j, u));
    for (const Rational& lambda_p : lambdas) emit_m_unit(out, m, n, N, lambda_p);
  } else {
    // |m|,|n| > 1: lambda, lambda' nonzero integers with lambda + lambda' = 1.
    for (long long lam = -bound; lam <= bound; ++lam) {
      if (lam == 0 || lam == 1) continue;
      const Rational lambda(lam), lambda_p = Rational(1) - lambda;
      const Rational c = Rational(N) * (lambda_p * m - lambda * n) / Rational(n * m);
      const Rational se = -Rational(N) * lambda / m;
      const Rational sse = -Rational(N) * lambda_p / n;
      out.push_back(make_locus(spec, LocusCase::generic, c, lambda, lambda_p, se, sse, N));
    }
  }

  // Drop degenerate p = 1 or p* = 1 points and deduplicate.
  std::vector<AbelianLocus> uniq;
  std::set<std::pair<Rational, Rational>> seen;
  for (const AbelianLocus& l : out) {
    if (l.s_exponent == Rational(0) || l.s_star_exponent == Rational(0)) continue;
    if (seen.insert({l.c, l.s_exponent}).second) uniq.push_back(l);
  }
  return uniq;
}

ModelParams instantiate(const AbelianLocus& locus, double q, int N) {
  if (!(q > 0.0 && q < 1.0)) fail(ErrorKind::NomeOutOfDisk, "locus instantiation wants real q in (0,1)");
  const double s = std::pow(q, to_double(locus.s_exponent));
  return ModelParams::from_s(N, Complex(q, 0.0), Complex(s, 0.0), to_double(locus.c));
}

namespace {

double max_Y_deviation(const SurfaceSpec& spec, const ModelParams& mp, int samples,
                       const Truncation& trunc, unsigned long long seed, bool checked) {
  AnnulusSampler sampler(seed);
  double worst = 0.0;
  int done = 0, attempts = 0;
  while (done < samples) {
    if (++attempts > 16 * samples + 64) fail(ErrorKind::PoleProximity, "sampling kept hitting poles");
    const Complex x = sampler.next();
    try {
      const Complex y = checked ? calY(spec, x, mp, trunc) : calY_raw(spec, x, mp, trunc);
      const double dev = std::abs(y - Complex(1.0, 0.0));
      if (!std::isfinite(dev)) fail(ErrorKind::SeriesDiverges, "non-finite Y evaluation");
      worst = std::max(worst, dev);
      ++done;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PoleProximity) throw;
    }
  }
  return worst;
}

}  // namespace

double check_locus(const AbelianLocus& locus, double q, int N, int samples,
                   const Truncation& trunc, unsigned long long seed) {
  const ModelParams mp = instantiate(locus, q, N);
  return max_Y_deviation(locus.spec, mp, samples, trunc, seed, /*checked=*/true);
}

double check_locus_perturbed(const AbelianLocus& locus, double q, int N, int samples,
                             const Truncation& trunc, double c_offset, unsigned long long seed) {
  const double s = std::pow(q, to_double(locus.s_exponent));
  const ModelParams mp =
      ModelParams::from_s(N, Complex(q, 0.0), Complex(s, 0.0), to_double(locus.c) + c_offset);
  return max_Y_deviation(locus.spec, mp, samples, trunc, seed, /*checked=*/false);
}

LocalizedCenterResult localized_center_params(int m, int N, long long lambda) {
  if (m % 2 == 0 || std::abs(m) == 1) fail(ErrorKind::InvalidM, "m must be odd with |m| != 1");
  LocalizedCenterResult res;
  if (lambda == std::abs(m) - 1) {
    res.rejection = "lambda == |m|-1";
    return res;
  }
  if (std::gcd(lambda, static_cast<long long>(m)) != 1) {
    res.rejection = "gcd(lambda, m) != 1";
    return res;
  }
  res.bz = bezout(lambda, m);
  if (std::gcd(res.bz.beta + 1, static_cast<long long>(m)) != 1) {
    res.rejection = "gcd(beta+1, m) != 1";
    return res;
  }
  // c = -N/m, s = q^{N lambda / m}; s* follows from s q^{-c}.
  AbelianLocus locus;
  locus.spec = {m, -m};
  locus.case_tag = LocusCase::localized_center;
  locus.c = Rational(-N, m);
  locus.lambda = Rational(lambda);
  locus.lambda_prime = Rational(0);
  locus.s_exponent = Rational(N) * Rational(lambda, m);
  locus.s_star_exponent = locus.s_exponent - locus.c;
  locus.check_consistency(N);
  res.locus = locus;
  return res;
}

bool permutation_span_check(int m, long long lambda) {
  if (m % 2 == 0 || std::abs(m) == 1) fail(ErrorKind::InvalidM, "m must be odd with |m| != 1");
  const int mm = std::abs(m);
  const BezoutData bz = bezout(lambda, mm);
  if (bz.gcd != 1) return false;
  std::vector<char> hit(mm + 1, 0);
  for (long long k = 1; k <= mm; ++k) {
    long long v = (mm + k * (bz.beta + 1)) % mm;
    if (v == 0) v = mm;
    hit[v] = 1;
  }
  return std::all_of(hit.begin() + 1, hit.end(), [](char c) { return c == 1; });
}

double verify_localized_center(const AbelianLocus& locus, double q, int N, int samples,
                               const Truncation& trunc, unsigned long long seed) {
  const ModelParams mp = instantiate(locus, q, N);
  AnnulusSampler sampler(seed);
  double worst = 0.0;
  int done = 0, attempts = 0;
  while (done < samples) {
    if (++attempts > 16 * samples + 64) fail(ErrorKind::PoleProximity, "sampling kept hitting poles");
    const Complex x = sampler.next();
    try {
      const Complex r = commutant_exchange_ratio(locus.spec.m, x, mp, trunc);
      const double dev = std::abs(r - Complex(1.0, 0.0));
      if (!std::isfinite(dev)) fail(ErrorKind::SeriesDiverges, "non-finite exchange ratio");
      worst = std::max(worst, dev);
      ++done;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PoleProximity) throw;
    }
  }
  return worst;
}

}  // namespace ellva
