#include <gtest/gtest.h>

#include "rrtcut/errors.hpp"
#include "rrtcut/splitprob.hpp"

using namespace rrtcut;
using namespace rrtcut::splitprob;

TEST(Split, SmallValues) {
  EXPECT_EQ(p_split(2, 1, 1, 1), 1);
  EXPECT_EQ(p_split(3, 1, 2, 1), Rational(3, 4));
  EXPECT_EQ(p_root(2, 1), 1);
  EXPECT_EQ(p_root(3, 1), Rational(1, 4));
  EXPECT_EQ(p_root(3, 2), Rational(3, 4));
  EXPECT_EQ(joint_R(2, 1, 1, 1), 1);
  EXPECT_EQ(joint_L(2, 1, 1, 1), 1);
  EXPECT_EQ(joint_Y(3, 1, 2, 1), Rational(1, 2));
  EXPECT_EQ(joint_Y(2, 2, 1, 1), 1);
}

TEST(Split, RangeErrors) {
  EXPECT_THROW(p_split(1, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(p_split(4, 5, 1, 1), std::invalid_argument);
  EXPECT_THROW(p_split(4, 2, 4, 1), std::invalid_argument);
  EXPECT_THROW(p_split(4, 2, 2, 3), std::invalid_argument);
  EXPECT_THROW(p_split(4, 2, 2, 0), std::invalid_argument);
  EXPECT_THROW(p_root(4, 0), std::invalid_argument);
  EXPECT_THROW(joint_L(4, 2, 3, 0), std::invalid_argument);
  EXPECT_NO_THROW(joint_Y(4, 3, 1, 0));
  EXPECT_THROW(joint_Y(4, 3, 2, 0), std::invalid_argument);  // other part holds only 2 nodes
  EXPECT_THROW(joint_Y(4, 1, 1, 2), std::invalid_argument);
}

TEST(Split, RootIsFirstLabel) {
  for (long n = 2; n <= 25; ++n)
    for (long k = 1; k < n; ++k) EXPECT_EQ(p_root(n, k), p_split(n, 1, k, 1)) << n << "," << k;
}

TEST(Split, FallingFactorialFormsAgree) {
  for (long n = 2; n <= 12; ++n)
    for (long ell = 1; ell <= n; ++ell)
      for (long k = 1; k < n; ++k)
        for (long r = 1; r <= std::min(k, ell); ++r) {
          EXPECT_EQ(joint_R(n, ell, k, r), p_split(n, ell, k, r));
          const long rp = k + 1 - r, lp = n + 1 - ell;
          const Rational mirrored = rp <= lp ? p_split(n, lp, k, rp) : Rational(0);
          EXPECT_EQ(joint_L(n, ell, k, r), mirrored) << n << "," << ell << "," << k << "," << r;
        }
}

TEST(Split, TablesAreNormalized) {
  for (long n = 2; n <= 15; ++n)
    for (long ell = 1; ell <= n; ++ell)
      for (Rule rule : {Rule::first, Rule::last, Rule::random}) {
        Rational total;
        for (const auto& cell : joint_table(rule, n, ell)) {
          EXPECT_GE(cell.p, 0);
          total += cell.p;
        }
        EXPECT_EQ(total, 1) << to_string(rule) << " n=" << n << " l=" << ell;
      }
  Rational total;
  for (long k = 1; k < 7; ++k)
    for (long r = 1; r <= std::min(k, 3L); ++r) total += p_split(7, 3, k, r);
  EXPECT_EQ(total, 1);
}

TEST(Split, RandomRuleStartsAtZeroTargets) {
  const auto cells = joint_table(Rule::random, 5, 2);
  EXPECT_EQ(cells.front().k, 1);
  EXPECT_EQ(cells.front().r, 0);
  EXPECT_EQ(joint_table(Rule::first, 5, 2).front().r, 1);
}

TEST(Split, Enumeration) {
  for (long n = 2; n <= 7; ++n)
    for (long ell = 1; ell <= n; ++ell) {
      const auto rep = verify_against_enumeration(n, ell);
      EXPECT_TRUE(rep.ok()) << "n=" << n << " l=" << ell;
    }
  EXPECT_EQ(verify_against_enumeration(4, 2).pairs, 6u * 3u);
  EXPECT_THROW(verify_against_enumeration(9, 1), BudgetExceeded);
}
