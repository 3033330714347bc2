#include "rrtcut/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rrtcut/exactdist.hpp"

namespace rrtcut::series {

Poly::Poly(Rational constant) : c_{std::move(constant)} { trim(); }

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(Rational a, unsigned degree) {
  std::vector<Rational> c(degree + 1);
  c[degree] = std::move(a);
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::evaluate(const Rational& v) const {
  Rational out;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * v + *it;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& a) {
  if (a == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= a;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(c));
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i <= p.degree(); ++i) {
    const Rational& a = p.coeffs()[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << rrtcut::to_string(a);
    if (i >= 1) out << "*v";
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

Series::Series(int z_trunc) {
  if (z_trunc < 0) throw std::invalid_argument("truncation order must be >= 0");
  c_.resize(static_cast<std::size_t>(z_trunc) + 1);
}

Series::Series(int z_trunc, std::vector<Poly> coeffs) : Series(z_trunc) {
  if (coeffs.size() > c_.size()) coeffs.resize(c_.size());
  std::move(coeffs.begin(), coeffs.end(), c_.begin());
}

Series Series::monomial(int z_trunc, int k, Poly c) {
  Series s(z_trunc);
  if (k >= 0 && k <= z_trunc) s.c_[static_cast<std::size_t>(k)] = std::move(c);
  return s;
}

bool Series::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Poly& p) { return p.is_zero(); });
}

namespace {

void require_same(const Series& a, const Series& b) {
  if (a.z_trunc() != b.z_trunc())
    throw std::invalid_argument("series truncated at z^" + std::to_string(a.z_trunc()) +
                                " and z^" + std::to_string(b.z_trunc()) + " cannot be combined");
}

}  // namespace

Series& Series::operator+=(const Series& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Series& Series::operator-=(const Series& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Series& Series::operator*=(const Poly& a) {
  for (auto& p : c_) p = p * a;
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  require_same(a, b);
  Series out(a.z_trunc());
  const std::size_t len = a.c_.size();
  for (std::size_t i = 0; i < len; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < len; ++j)
      if (!b.c_[j].is_zero()) out.c_[i + j] += a.c_[i] * b.c_[j];
  }
  return out;
}

Series Series::differentiate_z() const {
  if (z_trunc() < 1) throw std::invalid_argument("differentiating needs truncation order >= 1");
  Series out(z_trunc() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out.c_[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return out;
}

Series Series::integrate_z() const {
  Series out(z_trunc() + 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    out.c_[i + 1] = c_[i] * make_rational(1, static_cast<long>(i) + 1);
  return out;
}

Series Series::truncate(int z_trunc) const {
  if (z_trunc > this->z_trunc())
    throw std::invalid_argument("cannot extend a series from z^" + std::to_string(this->z_trunc()) +
                                " to z^" + std::to_string(z_trunc));
  return Series(z_trunc, std::vector<Poly>(c_.begin(), c_.begin() + z_trunc + 1));
}

Series Series::at_v(const Rational& v) const {
  Series out(z_trunc());
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = Poly(c_[i].evaluate(v));
  return out;
}

Series divide_by_unit(const Series& num, const Series& den) {
  require_same(num, den);
  if (den.coeff(0) != Poly(1))
    throw std::invalid_argument("divisor must have constant term 1, got " + to_string(den.coeff(0)));
  const int z = num.z_trunc();
  Series q(z);
  for (int n = 0; n <= z; ++n) {
    Poly acc = num.coeff(n);
    for (int k = 1; k <= n; ++k) acc -= den.coeff(k) * q.coeff(n - k);
    q.set_coeff(n, std::move(acc));
  }
  return q;
}

Series exp_series(const Series& s) {
  if (!s.coeff(0).is_zero()) throw std::invalid_argument("exp needs a zero constant term");
  const int z = s.z_trunc();
  Series e(z);
  e.set_coeff(0, Poly(1));
  // n e_n = sum_k k s_k e_{n-k}
  for (int n = 1; n <= z; ++n) {
    Poly acc;
    for (int k = 1; k <= n; ++k) acc += s.coeff(k) * e.coeff(n - k) * Rational(k);
    e.set_coeff(n, acc * make_rational(1, n));
  }
  return e;
}

Series log_series(int z_trunc) {
  Series s(z_trunc);
  for (int i = 1; i <= z_trunc; ++i) s.set_coeff(i, Poly(make_rational(1, i)));
  return s;
}

Series f_series(int z_trunc) {
  const Poly v = Poly::monomial(1, 1);
  Series num(z_trunc), den(z_trunc);
  // num / z = v sum_{i>=1} z^(i-1)/i; den / z = 1 - v sum_{i>=2} z^(i-1)/(i(i-1))
  den.set_coeff(0, Poly(1));
  for (int j = 0; j <= z_trunc; ++j) {
    const long i = j + 1;
    num.set_coeff(j, v * make_rational(1, i));
    if (j >= 1) den.set_coeff(j, v * make_rational(-1, i * (i - 1)));
  }
  return divide_by_unit(num, den);
}

Series M_series(int ell, int z_trunc) {
  if (ell < 1) throw std::invalid_argument("M_l needs l >= 1");
  const Series exponent = f_series(z_trunc).integrate_z().truncate(z_trunc) * Poly(ell);
  return exp_series(exponent) * Poly::monomial(Rational(factorial(ell - 1)), static_cast<unsigned>(ell - 1));
}

namespace {

Poly pgf(Rule rule, long n, long ell) {
  const auto p = exactdist::pmf<Rational>(rule, static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(ell));
  return Poly(p.probs);
}

}  // namespace

Series M_series_from_dist(int ell, int z_trunc) {
  Series s(z_trunc);
  for (int i = 0; i <= z_trunc; ++i) {
    const long n = ell + i;
    s.set_coeff(i, pgf(Rule::first, n, ell) * falling(n - 1, ell - 1));
  }
  return s;
}

Series N_series_from_dist(int ell, int z_trunc) {
  Series s(z_trunc);
  for (int i = 1; i <= z_trunc; ++i) {
    const long n = ell - 1 + i;
    if (n < ell) continue;
    s.set_coeff(i, pgf(Rule::last, n, ell) * falling(n - 1, ell - 2));
  }
  return s;
}

Series G_series_from_dist(int ell, int z_trunc) {
  Series s(z_trunc);
  for (int n = ell; n <= z_trunc; ++n)
    s.set_coeff(n, pgf(Rule::random, n, ell) * make_rational(binomial(n, ell), Integer(n)));
  return s;
}

ResidualReport residual(std::string name, int ell, const Series& lhs, const Series& rhs) {
  const Series diff = lhs - rhs;
  ResidualReport rep{std::move(name), ell, diff.z_trunc(), {}, 0.0};
  for (int i = 0; i <= diff.z_trunc(); ++i) {
    const Poly& p = diff.coeff(i);
    if (p.is_zero()) continue;
    rep.nonzero_degrees.push_back(i);
    for (const auto& a : p.coeffs()) rep.max_abs = std::max(rep.max_abs, std::abs(to_double(a)));
  }
  return rep;
}

namespace {

const Poly kV = Poly::monomial(1, 1);

Series one_minus_z(int z_trunc) {
  return Series(z_trunc, {Poly(1), Poly(-1)});
}

// (1-z) v lambda + z (1-v)
Series d_factor(int z_trunc) {
  return one_minus_z(z_trunc) * log_series(z_trunc) * kV +
         Series::monomial(z_trunc, 1, Poly(1) - kV);
}

void require_ell(int ell) {
  if (ell < 1) throw std::invalid_argument("l must be >= 1");
}

}  // namespace

ResidualReport check_ode_M(int ell, int z) {
  require_ell(ell);
  std::vector<Series> m;
  for (int r = 0; r <= ell; ++r) m.push_back(r == 0 ? Series(z + 1) : M_series_from_dist(r, z + 1));
  const Series lam = log_series(z);
  const Series lhs = d_factor(z) * m[ell].differentiate_z() +
                     (Series::monomial(z, 0, Poly(ell - 1)) - lam * (kV * Rational(ell))) * m[ell].truncate(z);
  Series rhs(z);
  for (int r = 1; r < ell; ++r) {
    const Rational c(binomial(ell - 1, r) + binomial(ell - 1, r - 2));
    rhs += m[r].truncate(z) * m[ell - r].truncate(z) * (kV * c);
  }
  return residual("ode-M", ell, lhs, rhs);
}

ResidualReport check_ode_N(int ell, int z) {
  require_ell(ell);
  const int w = z + 2;
  std::vector<Series> n0, n1, n2;
  for (int r = 0; r <= ell; ++r) {
    const Series s = r == 0 ? Series(w) : N_series_from_dist(r, w);
    n0.push_back(s.truncate(z));
    n1.push_back(s.differentiate_z().truncate(z));
    n2.push_back(s.differentiate_z().differentiate_z());
  }
  Series b(z);
  for (int r = 1; r < ell; ++r) {
    b += n0[r] * n2[ell - r] * (kV * Rational(binomial(ell, r)));
    const Rational c(binomial(ell, r - 1) * factorial(ell - r - 1));
    b += n1[r] * Poly::monomial(c, static_cast<unsigned>(ell - r));
  }
  const Series inner = d_factor(z) * n2[ell] + n1[ell] * Poly(ell - 1) - b;
  const Series lhs = one_minus_z(z) * inner - n0[ell] * kV;
  return residual("ode-N", ell, lhs, Series(z));
}

ResidualReport check_ode_G(int ell, int z) {
  require_ell(ell);
  const int w = z + 2;
  std::vector<Series> g0, g1, g2;
  for (int r = 0; r <= ell; ++r) {
    const Series s = r == 0 ? Series(w) : G_series_from_dist(r, w);
    g0.push_back(s.truncate(z));
    g1.push_back(s.differentiate_z().truncate(z));
    g2.push_back(s.differentiate_z().differentiate_z());
  }
  const Series omz = one_minus_z(z);
  const Series omz2 = omz * omz;
  const Series lam = log_series(z);
  const Series zpart = Series::monomial(z, 1, Poly(1) - kV);  // z(1-v)
  const Series vl = omz * lam * kV;                            // v(1-z) lambda

  const Series lhs = omz * (zpart + vl) * g2[ell] - (zpart + vl * Poly(2)) * g1[ell] +
                     g0[ell] * (Poly(1) - kV);
  Series sum_a(z), sum_b(z), sum_c(z), sum_d(z);
  for (int r = 1; r < ell; ++r) {
    sum_a += g2[r] * g0[ell - r];
    for (int q = 1; q < ell - r; ++q) sum_b += g1[r] * g1[q] * g0[ell - r - q];
    sum_c += g1[r] * g1[ell - r];
    sum_d += g1[r] * g0[ell - r];
  }
  const Series rhs = -(omz2 * sum_a) + omz2 * sum_b * kV + omz2 * lam * sum_c * kV +
                     omz * sum_d * (kV * Rational(2));
  return residual("ode-G", ell, lhs, rhs);
}

ResidualReport check_b_M(int ell, int z) {
  require_ell(ell);
  Series b(z);
  for (int r = 1; r < ell; ++r) {
    const Rational c(binomial(ell - 1, r) + binomial(ell - 1, r - 2));
    b += M_series(r, z) * M_series(ell - r, z) * (kV * c);
  }
  Series power = Series::monomial(z, 0, Poly(1));
  const Series m1 = M_series(1, z);
  for (int i = 0; i < ell; ++i) power = power * m1;
  const Rational c = Rational(ell - 1) * Rational(factorial(ell - 1));
  return residual("b-M", ell, b, power * Poly::monomial(c, static_cast<unsigned>(ell - 1)));
}

ResidualReport check_M_coefficients(int ell, int n_max) {
  require_ell(ell);
  if (n_max < ell) throw std::invalid_argument("need n_max >= l");
  const int z = n_max - ell;
  return residual("gf-M", ell, M_series(ell, z), M_series_from_dist(ell, z));
}

ResidualReport check_N_at_one(int ell, int z) {
  require_ell(ell);
  const Series got = N_series_from_dist(ell, z).at_v(1);
  Series want(z);
  if (ell == 1) {
    want = log_series(z);
  } else {
    const Rational c(factorial(ell - 2));
    for (int i = 1; i <= z; ++i)  // (1-z)^-(l-1) minus its constant term
      want.set_coeff(i, Poly(c * Rational(binomial(i + ell - 2, ell - 2))));
  }
  return residual("N-at-1", ell, got, want);
}

ResidualReport check_G_at_one(int ell, int z) {
  require_ell(ell);
  const Series got = G_series_from_dist(ell, z).at_v(1);
  Series want(z);
  for (int i = ell; i <= z; ++i)  // z^l (1-z)^-l / l
    want.set_coeff(i, Poly(make_rational(binomial(i - 1, ell - 1), Integer(ell))));
  return residual("G-at-1", ell, got, want);
}

}  // namespace rrtcut::series
