#pragma once

#include <string>
#include <vector>

#include "rrtcut/rational.hpp"

namespace rrtcut::series {

/// Polynomial in v with rational coefficients; coeff(i) multiplies v^i.
class Poly {
 public:
  Poly() = default;
  Poly(Rational constant);  // NOLINT(google-explicit-constructor)
  Poly(long constant) : Poly(Rational(constant)) {}  // NOLINT(google-explicit-constructor)
  explicit Poly(std::vector<Rational> coeffs);

  /// a * v^degree
  static Poly monomial(Rational a, unsigned degree);

  bool is_zero() const noexcept { return c_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  Rational evaluate(const Rational& v) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& a);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& b) { return a *= b; }
  friend Poly operator*(const Rational& b, Poly a) { return a *= b; }

  bool operator==(const Poly&) const = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::string to_string(const Poly& p);

/// Power series in z truncated after z^Z, with coefficients in Q[v].
/// Binary operations require equal truncation orders.
class Series {
 public:
  /// Zero series with truncation order Z >= 0.
  explicit Series(int z_trunc);
  Series(int z_trunc, std::vector<Poly> coeffs);

  /// c * z^k (zero if k > Z).
  static Series monomial(int z_trunc, int k, Poly c = Poly(1));

  int z_trunc() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const Poly& coeff(int i) const { return c_.at(static_cast<std::size_t>(i)); }
  void set_coeff(int i, Poly p) { c_.at(static_cast<std::size_t>(i)) = std::move(p); }
  bool is_zero() const;

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Poly& a);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator-(Series a) { return a *= Poly(-1); }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(Series a, const Poly& b) { return a *= b; }
  friend Series operator*(const Poly& b, Series a) { return a *= b; }

  /// d/dz; the result is known only up to z^(Z-1). Needs Z >= 1.
  Series differentiate_z() const;
  /// Antiderivative with zero constant term, known up to z^(Z+1).
  Series integrate_z() const;
  /// Keeps terms up to z^Z' (Z' <= Z).
  Series truncate(int z_trunc) const;
  /// Substitutes a value for v.
  Series at_v(const Rational& v) const;

  bool operator==(const Series&) const = default;

 private:
  std::vector<Poly> c_;
};

/// q with q * den = num up to Z; den must have constant term 1.
Series divide_by_unit(const Series& num, const Series& den);

/// exp(s) for s with zero constant term.
Series exp_series(const Series& s);

/// log(1/(1-z)) = sum_{i>=1} z^i / i.
Series log_series(int z_trunc);

/// f(z, v) = v log(1/(1-z)) / ((1-z) v log(1/(1-z)) + z(1-v)), obtained by
/// cancelling z from both parts and dividing by the unit denominator.
Series f_series(int z_trunc);

/// Closed form v^(l-1) (l-1)! exp(l * integral of f).
Series M_series(int ell, int z_trunc);

/// Generating functions rebuilt from the exact laws:
///   M_l = sum (n-1)^(l-1)   E v^R_{n,l}  z^(n-l)
///   N_l = sum (n-1)^(l-2)   E v^L_{n,l}  z^(n+1-l)   ((n-1)^(-1) = 1/n)
///   G_l = sum binom(n,l)/n  E v^Y_{n,l}  z^n
Series M_series_from_dist(int ell, int z_trunc);
Series N_series_from_dist(int ell, int z_trunc);
Series G_series_from_dist(int ell, int z_trunc);

/// Outcome of an exact identity check between two truncated series.
struct ResidualReport {
  std::string name;
  int ell = 0;
  int z_trunc = 0;
  std::vector<int> nonzero_degrees;  // z-degrees where the residual is not 0
  double max_abs = 0;                // largest |coefficient| in the residual
  bool ok() const { return nonzero_degrees.empty(); }
};

ResidualReport residual(std::string name, int ell, const Series& lhs, const Series& rhs);

/// D M' + (l-1 - l v lambda) M = v sum [binom(l-1,r)+binom(l-1,r-2)] M_r M_{l-r},
/// with D = (1-z) v lambda + z(1-v) and lambda = log(1/(1-z)).
ResidualReport check_ode_M(int ell, int z_trunc = 20);

/// (1-z)(D N'' + (l-1) N' - b) - v N = 0, with
/// b = v sum binom(l,r) N_r N''_{l-r} + sum binom(l,r-1) (l-r-1)! v^(l-r) N'_r.
ResidualReport check_ode_N(int ell, int z_trunc = 16);

/// (1-z)(z(1-v)+v(1-z)lambda) G'' - (z(1-v)+2v(1-z)lambda) G' + (1-v) G = b with
/// b = -(1-z)^2 sum G''_r G_{l-r} + v(1-z)^2 sum G'_r G'_q G_{l-r-q}
///     + v(1-z)^2 lambda sum G'_r G'_{l-r} + 2v(1-z) sum G'_r G_{l-r}.
ResidualReport check_ode_G(int ell, int z_trunc = 14);

/// The sum on the right of the M equation equals (l-1) v^(l-1) (l-1)! M_1^l.
ResidualReport check_b_M(int ell, int z_trunc = 20);

/// Closed-form M_l against the series rebuilt from the exact laws, for all
/// coefficients with n <= n_max.
ResidualReport check_M_coefficients(int ell, int n_max);

/// v = 1 specializations: N_1 = lambda, N_l = (l-2)!/(1-z)^(l-1) - (l-2)!,
/// G_l = z^l / (l (1-z)^l).
ResidualReport check_N_at_one(int ell, int z_trunc = 16);
ResidualReport check_G_at_one(int ell, int z_trunc = 14);

}  // namespace rrtcut::series
