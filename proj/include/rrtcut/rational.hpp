#pragma once

#include <gmpxx.h>

#include <string>

namespace rrtcut {

using Integer = mpz_class;
using Rational = mpq_class;

/// num/den in lowest terms with a positive denominator.
Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den);

/// binom(a, b), zero whenever b < 0, a < 0 or b > a.
Integer binomial(long a, long b);

Integer factorial(long k);

/// Falling factorial x(x-1)...(x-k+1). For k < 0 this is the reciprocal
/// rising factorial 1/((x+1)(x+2)...(x-k)), i.e. (j-1)^(-p) = 1/(j(j+1)...(j+p-1)).
Rational falling(long x, long k);

/// Stirling number of the second kind {s over j}.
Integer stirling2(long s, long j);

double to_double(const Rational& q);
std::string to_string(const Rational& q);

}  // namespace rrtcut
