#pragma once

#include <cstdint>
#include <vector>

#include "rrtcut/pmf.hpp"
#include "rrtcut/rational.hpp"

namespace rrtcut::splitprob {

// One random cut of a uniform recursive tree of size n: the part containing
// node l has size k and l has rank r among its labels. All functions throw
// std::invalid_argument when (n, l, k, r) is outside the documented range.

/// Two-case closed form; n >= 2, 1 <= l <= n, 1 <= k < n, 1 <= r <= min(k, l).
Rational p_split(long n, long ell, long k, long r);

/// Size of the root part: n / ((n-1)(n-k+1)(n-k)); n >= 2, 1 <= k < n.
Rational p_root(long n, long k);

/// Joint law of (size, targets) of the part holding node l when the targets
/// are 1..l. Equal to p_split, written with falling factorials.
Rational joint_R(long n, long ell, long k, long r);

/// Same for targets n+1-l..n: the part holding node n+1-l has size k and
/// holds r of the targets. Equal to p_split(n, n+1-l, k, k+1-r).
Rational joint_L(long n, long ell, long k, long r);

/// Same for a uniform l-subset: the root part has size k and holds r targets
/// (hypergeometric placement); max(0, l-(n-k)) <= r <= min(k, l).
Rational joint_Y(long n, long ell, long k, long r);

/// Dispatch on the label rule (first -> R, last -> L, random -> Y).
Rational joint(Rule rule, long n, long ell, long k, long r);

/// Admissible r for a given (n, l, k) under a rule.
long r_min(Rule rule, long n, long ell, long k);
long r_max(long ell, long k);

struct JointCell {
  long k;
  long r;
  Rational p;
};

/// Every admissible (k, r) cell of the joint table, k then r ascending.
std::vector<JointCell> joint_table(Rule rule, long n, long ell);

struct Mismatch {
  long k;
  long r;
  Rational formula;
  Rational counted;
};

struct EnumerationReport {
  long n = 0;
  long ell = 0;
  std::uint64_t pairs = 0;  // (tree, edge) pairs examined
  std::vector<Mismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Largest n accepted by verify_against_enumeration.
inline constexpr long kEnumerationCap = 8;

/// Counts (k, r) over all (tree, edge) pairs of size n and compares the
/// frequencies with p_split. Throws BudgetExceeded for n > kEnumerationCap.
EnumerationReport verify_against_enumeration(long n, long ell);

}  // namespace rrtcut::splitprob
