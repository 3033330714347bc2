#pragma once

#include <complex>

#include "rrtcut/pmf.hpp"
#include "rrtcut/rational.hpp"

namespace rrtcut::asymptotics {

/// Limit law of a normalized cut count: beta(l, 1) on [0, 1] for the last and
/// random rules, the spectrally negative 1-stable law for the first rule.
struct LimitTarget {
  enum class Kind { beta, stable };
  Kind kind = Kind::beta;
  unsigned ell = 1;

  static LimitTarget beta(unsigned ell);
  static LimitTarget stable() { return {Kind::stable, 0}; }
  /// Target of the normalized count under `rule`.
  static LimitTarget for_rule(Rule rule, unsigned ell);
};

/// l / (l + s). Throws std::invalid_argument for l < 1.
Rational beta_moment(unsigned ell, unsigned s);

/// x^l with x clamped to [0, 1].
double beta_cdf(unsigned ell, double x);

/// E exp(i t Z) for Z ~ beta(l, 1), by Gauss-Legendre quadrature.
std::complex<double> beta_cf(unsigned ell, double t);

/// exp(i t log|t| - pi |t| / 2), and 1 at t = 0.
std::complex<double> stable_cf(double t);

/// (x - (l-1) - n/log n - n log log n / log^2 n) / (n / log^2 n); n >= 3.
double normalize_R(double x, double n, unsigned ell);

/// (log n / n) x.
double scale_LY(double x, double n);

/// Leading term of E X^s: n^s / log^s n for the first rule, times l/(l+s)
/// otherwise. n >= 2.
double leading_moment(Rule rule, double n, unsigned ell, unsigned s);

/// (s! / (l+s)) binom(l+s-1, s).
Rational alpha_closed(unsigned ell, unsigned s);

/// The same numbers from their recurrence in s, seeded with 1/l at s = 0:
/// (l+s)(l+s-1) a_{l,s} = s (l+s-1)^2 a_{l,s-1}
///   + sum_{r<l} sum_{s1+s2=s} binom(s,s1) (r+s1) a_{r,s1} (l-r+s2) a_{l-r,s2}.
Rational alpha_recurrence(unsigned ell, unsigned s);

}  // namespace rrtcut::asymptotics
