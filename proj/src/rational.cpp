#include "rrtcut/rational.hpp"

#include <stdexcept>
#include <vector>

namespace rrtcut {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(long num, long den) { return make_rational(Integer(num), Integer(den)); }

Integer binomial(long a, long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return out;
}

Integer factorial(long k) {
  if (k < 0) throw std::domain_error("factorial of a negative number");
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(k));
  return out;
}

Rational falling(long x, long k) {
  if (k >= 0) {
    Integer p = 1;
    for (long i = 0; i < k; ++i) p *= x - i;
    return Rational(p);
  }
  Integer p = 1;
  for (long i = 1; i <= -k; ++i) p *= x + i;
  if (p == 0) throw std::domain_error("negative falling factorial through zero");
  return make_rational(Integer(1), p);
}

Integer stirling2(long s, long j) {
  if (s < 0 || j < 0 || j > s) return 0;
  // Row recurrence S(i, t) = t S(i-1, t) + S(i-1, t-1).
  std::vector<Integer> row(static_cast<std::size_t>(s) + 1, 0);
  row[0] = 1;
  for (long i = 1; i <= s; ++i) {
    for (long t = i; t >= 1; --t) row[t] = t * row[t] + row[t - 1];
    row[0] = 0;
  }
  return row[static_cast<std::size_t>(j)];
}

double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace rrtcut
