#include <gtest/gtest.h>

#include <thread>

#include "rrtcut/exactdist.hpp"

using namespace rrtcut;
using namespace rrtcut::exactdist;

TEST(ExactDist, SmallLaws) {
  const auto r31 = pmf_R(3, 1);
  EXPECT_EQ(r31.at(0), 0);
  EXPECT_EQ(r31.at(1), Rational(1, 4));
  EXPECT_EQ(r31.at(2), Rational(3, 4));
  EXPECT_EQ(raw_moment(r31, 1), Rational(7, 4));
  EXPECT_EQ(r31.rule, Rule::first);
  EXPECT_EQ(pmf_L(2, 1).at(1), 1);
  EXPECT_EQ(pmf_Y(2, 1).at(1), 1);
}

TEST(ExactDist, AllTargetsIsPointMass) {
  for (std::uint32_t n = 1; n <= 12; ++n)
    for (Rule rule : {Rule::first, Rule::last, Rule::random})
      EXPECT_EQ(pmf<Rational>(rule, n, n).at(n - 1), 1) << to_string(rule) << " " << n;
}

TEST(ExactDist, NormalizedWithBoundedSupport) {
  for (std::uint32_t n = 1; n <= 20; ++n)
    for (std::uint32_t ell = 1; ell <= n; ++ell)
      for (Rule rule : {Rule::first, Rule::last, Rule::random}) {
        const auto p = pmf<Rational>(rule, n, ell);
        Rational total;
        for (std::size_t m = 0; m < p.probs.size(); ++m) {
          total += p.probs[m];
          if (m + 1 < ell) EXPECT_EQ(p.probs[m], 0);
          EXPECT_GE(p.probs[m], 0);
        }
        EXPECT_EQ(total, 1);
        EXPECT_EQ(p.probs.size(), n);
      }
}

TEST(ExactDist, RangeErrors) {
  EXPECT_THROW(pmf_R(3, 4), std::invalid_argument);
  EXPECT_THROW(pmf_L(3, 0), std::invalid_argument);
}

TEST(ExactDist, FloatBackendAgrees) {
  for (std::uint32_t n = 1; n <= 25; ++n)
    for (std::uint32_t ell = 1; ell <= n; ++ell)
      for (Rule rule : {Rule::first, Rule::last, Rule::random}) {
        const auto exact = pmf<Rational>(rule, n, ell);
        const auto approx = pmf<double>(rule, n, ell);
        double total = 0;
        for (std::size_t m = 0; m < n; ++m) {
          EXPECT_NEAR(approx.probs[m], to_double(exact.probs[m]), 1e-10);
          total += approx.probs[m];
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
      }
}

TEST(ExactDist, MomentsTwoWays) {
  EXPECT_EQ(raw_moment(Pmf<Rational>{std::nullopt, 4, 1, {0, 0, 0, 1}}, 3), 27);
  for (std::uint32_t n = 1; n <= 20; ++n)
    for (std::uint32_t ell : {1u, 2u, 3u})
      if (ell <= n)
        for (Rule rule : {Rule::first, Rule::last, Rule::random}) {
          const auto p = pmf<Rational>(rule, n, ell);
          for (unsigned s = 0; s <= 4; ++s) EXPECT_EQ(raw_moment(p, s), raw_moment_direct(p, s));
        }
}

TEST(ExactDist, FactorialMoment) {
  const Pmf<Rational> p{std::nullopt, 5, 1, {0, Rational(1, 2), 0, Rational(1, 2)}};
  EXPECT_EQ(factorial_moment(p, 1), 2);
  EXPECT_EQ(factorial_moment(p, 2), 3);
  EXPECT_EQ(factorial_moment(p, 4), 0);
}

TEST(ExactDist, ConcurrentRequestsAgree) {
  clear_cache();
  std::vector<Pmf<Rational>> got(4);
  std::vector<std::thread> pool;
  for (int i = 0; i < 4; ++i) pool.emplace_back([&, i] { got[i] = pmf_L(30, 3); });
  for (auto& t : pool) t.join();
  for (int i = 1; i < 4; ++i) EXPECT_EQ(got[i], got[0]);
}
