#pragma once

#include <cstdint>

#include "rrtcut/pmf.hpp"
#include "rrtcut/rational.hpp"

namespace rrtcut::exactdist {

enum class Backend { rational, floating };

std::string_view to_string(Backend b);
Backend parse_backend(std::string_view text);

/// Exact law of the cut count for a uniform recursive tree of size n with the
/// targets chosen by `rule`, from the splitting recurrences. T is Rational or
/// double; the double version mixes with rounded exact split probabilities.
/// Results are memoized per (rule, n, l) and safe to request concurrently.
/// Throws std::invalid_argument unless 1 <= l <= n.
template <class T>
Pmf<T> pmf(Rule rule, std::uint32_t n, std::uint32_t ell);

extern template Pmf<Rational> pmf<Rational>(Rule, std::uint32_t, std::uint32_t);
extern template Pmf<double> pmf<double>(Rule, std::uint32_t, std::uint32_t);

template <class T = Rational>
Pmf<T> pmf_R(std::uint32_t n, std::uint32_t ell) { return pmf<T>(Rule::first, n, ell); }
template <class T = Rational>
Pmf<T> pmf_L(std::uint32_t n, std::uint32_t ell) { return pmf<T>(Rule::last, n, ell); }
template <class T = Rational>
Pmf<T> pmf_Y(std::uint32_t n, std::uint32_t ell) { return pmf<T>(Rule::random, n, ell); }

/// E[X(X-1)...(X-s+1)].
template <class T>
T factorial_moment(const Pmf<T>& p, unsigned s);

/// E[X^s] from factorial moments via Stirling numbers of the second kind.
template <class T>
T raw_moment(const Pmf<T>& p, unsigned s);

/// E[X^s] summed directly.
template <class T>
T raw_moment_direct(const Pmf<T>& p, unsigned s);

/// Drops all memoized tables.
void clear_cache();

}  // namespace rrtcut::exactdist
