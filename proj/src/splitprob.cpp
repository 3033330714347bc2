#include "rrtcut/splitprob.hpp"

#include <stdexcept>
#include <string>

#include "rrtcut/errors.hpp"
#include "rrtcut/tree.hpp"

namespace rrtcut::splitprob {

namespace {

[[noreturn]] void out_of_range(const char* what, long n, long ell, long k, long r) {
  throw std::invalid_argument(std::string(what) + ": (n,l,k,r) = (" + std::to_string(n) + "," +
                              std::to_string(ell) + "," + std::to_string(k) + "," +
                              std::to_string(r) + ") out of range");
}

void check_split(const char* what, long n, long ell, long k, long r) {
  if (n < 2 || ell < 1 || ell > n || k < 1 || k > n - 1 || r < 1 || r > std::min(k, ell))
    out_of_range(what, n, ell, k, r);
}

}  // namespace

Rational p_split(long n, long ell, long k, long r) {
  check_split("p_split", n, ell, k, r);
  const Rational base = make_rational(factorial(k - 1) * factorial(n - k - 1),
                                      Integer(n - 1) * factorial(n - 1));
  Integer count;
  if (r == ell)
    count = (ell - 1) * binomial(n - ell, n - k) + binomial(n - ell + 1, n - k + 1);
  else
    count = (binomial(ell - 1, r) + binomial(ell - 1, r - 2)) * binomial(n - ell, k - r);
  return Rational(count) * base;
}

Rational p_root(long n, long k) {
  if (n < 2 || k < 1 || k > n - 1) out_of_range("p_root", n, 1, k, 1);
  return make_rational(Integer(n), Integer(n - 1) * (n - k + 1) * (n - k));
}

Rational joint_R(long n, long ell, long k, long r) {
  check_split("joint_R", n, ell, k, r);
  const Rational denom = Rational(n - 1) * falling(n - 1, ell - 1);
  if (r == ell) {
    const Rational lead = Rational(ell - 1) + make_rational(n - ell + 1, n - k + 1);
    return lead * falling(k - 1, ell - 1) / (denom * (n - k));
  }
  const Rational c(binomial(ell - 1, r) + binomial(ell - 1, r - 2));
  return c * falling(k - 1, r - 1) * falling(n - k - 1, ell - r - 1) / denom;
}

Rational joint_L(long n, long ell, long k, long r) {
  check_split("joint_L", n, ell, k, r);
  // The other part has n-k nodes and must hold the remaining l-r targets.
  if (ell - r > n - k) return Rational(0);
  const Rational denom = Rational(n - 1) * falling(n - 1, ell - 1);
  Rational v = Rational(binomial(ell - 1, r - 1)) *
               (falling(k - 1, r - 2) * falling(n - k - 1, ell - r) +
                falling(k - 1, r) * falling(n - k - 1, ell - r - 2)) /
               denom;
  if (k == n + r - ell)
    v += Rational(binomial(ell, r - 1) * factorial(ell - r - 1)) /
         (Rational(n - 1) * falling(n - 1, ell - r));
  return v;
}

Rational joint_Y(long n, long ell, long k, long r) {
  if (n < 2 || ell < 1 || ell > n || k < 1 || k > n - 1 || r < std::max(0L, ell - (n - k)) ||
      r > std::min(k, ell))
    out_of_range("joint_Y", n, ell, k, r);
  return make_rational(binomial(k, r) * binomial(n - k, ell - r), binomial(n, ell)) * p_root(n, k);
}

Rational joint(Rule rule, long n, long ell, long k, long r) {
  switch (rule) {
    case Rule::first: return joint_R(n, ell, k, r);
    case Rule::last: return joint_L(n, ell, k, r);
    case Rule::random: return joint_Y(n, ell, k, r);
  }
  throw std::logic_error("unreachable");
}

long r_min(Rule rule, long n, long ell, long k) {
  return rule == Rule::random ? std::max(0L, ell - (n - k)) : 1;
}

long r_max(long ell, long k) { return std::min(k, ell); }

std::vector<JointCell> joint_table(Rule rule, long n, long ell) {
  if (n < 2 || ell < 1 || ell > n)
    throw std::invalid_argument("joint table needs n >= 2 and 1 <= l <= n");
  std::vector<JointCell> out;
  for (long k = 1; k < n; ++k)
    for (long r = r_min(rule, n, ell, k); r <= r_max(ell, k); ++r)
      out.push_back({k, r, joint(rule, n, ell, k, r)});
  return out;
}

EnumerationReport verify_against_enumeration(long n, long ell) {
  if (n > kEnumerationCap)
    throw BudgetExceeded("split enumeration needs n <= " + std::to_string(kEnumerationCap) +
                         ", got " + std::to_string(n));
  if (n < 2 || ell < 1 || ell > n)
    throw std::invalid_argument("split enumeration needs n >= 2 and 1 <= l <= n");

  // counts[k][r]
  std::vector<std::vector<std::uint64_t>> counts(n, std::vector<std::uint64_t>(ell + 1, 0));
  EnumerationReport report{n, ell, 0, {}};
  std::vector<std::vector<std::uint8_t>> below(n + 1, std::vector<std::uint8_t>(n + 1));
  tree::for_each_tree(static_cast<std::size_t>(n), [&](const tree::RecursiveTree& t) {
    // below[c][v]: v lies in the subtree of c.
    for (long c = n; c >= 1; --c) {
      std::fill(below[c].begin(), below[c].end(), 0);
      below[c][c] = 1;
    }
    for (long v = n; v >= 2; --v)
      for (long c = v; c != 1;) {
        c = t.parent(static_cast<Label>(c));
        below[c][v] = 1;
      }
    for (long c = 2; c <= n; ++c) {
      long size = 0, rank = 0;
      const bool inside = below[c][ell];
      for (long v = 1; v <= n; ++v) {
        if (static_cast<bool>(below[c][v]) != inside) continue;
        ++size;
        if (v <= ell) ++rank;
      }
      ++counts[size][rank];
      ++report.pairs;
    }
  });
  for (long k = 1; k < n; ++k)
    for (long r = 1; r <= std::min(k, ell); ++r) {
      const Rational counted = make_rational(Integer(counts[k][r]), Integer(report.pairs));
      const Rational formula = p_split(n, ell, k, r);
      if (counted != formula) report.mismatches.push_back({k, r, formula, counted});
    }
  return report;
}

}  // namespace rrtcut::splitprob
