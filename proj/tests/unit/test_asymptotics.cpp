#include <gtest/gtest.h>

#include <numbers>

#include "rrtcut/asymptotics.hpp"

using namespace rrtcut;
using namespace rrtcut::asymptotics;

TEST(Beta, MomentsAndCdf) {
  EXPECT_EQ(beta_moment(1, 1), Rational(1, 2));
  EXPECT_EQ(beta_moment(2, 3), Rational(2, 5));
  for (unsigned ell = 1; ell <= 5; ++ell)
    for (unsigned s = 1; s <= 5; ++s) {
      EXPECT_GT(beta_moment(ell, s), beta_moment(ell, s + 1));
      EXPECT_LT(beta_moment(ell, s), beta_moment(ell + 1, s));
    }
  EXPECT_DOUBLE_EQ(beta_cdf(3, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(beta_cdf(3, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(beta_cdf(3, -1.0), 0.0);
  EXPECT_DOUBLE_EQ(beta_cdf(2, 0.5), 0.25);
  EXPECT_THROW(beta_moment(0, 1), std::invalid_argument);
}

TEST(Stable, CharacteristicFunction) {
  EXPECT_EQ(stable_cf(0.0), std::complex<double>(1.0, 0.0));
  for (double t : {0.5, 1.0, 2.0}) {
    EXPECT_NEAR(std::abs(stable_cf(t)), std::exp(-std::numbers::pi * t / 2), 1e-15);
    const auto a = stable_cf(-t), b = std::conj(stable_cf(t));
    EXPECT_NEAR(a.real(), b.real(), 1e-15);
    EXPECT_NEAR(a.imag(), b.imag(), 1e-15);
  }
  // t log|t| vanishes at t = 1
  EXPECT_NEAR(stable_cf(1.0).imag(), 0.0, 1e-15);
}

TEST(Normalization, CenteringAndScaling) {
  for (double n : {10.0, 1e4, 1e6})
    for (unsigned ell : {1u, 3u}) {
      const double ln = std::log(n);
      const double a = n / ln + n * std::log(ln) / (ln * ln);
      EXPECT_NEAR(normalize_R(a + ell - 1, n, ell), 0.0, 1e-9);
      EXPECT_LT(normalize_R(a, n, ell), normalize_R(a + 1, n, ell));
    }
  EXPECT_DOUBLE_EQ(scale_LY(1e5 / std::log(1e5), 1e5), 1.0);
  EXPECT_THROW(normalize_R(1.0, 2.0, 1), std::invalid_argument);
}

TEST(Leading, Moments) {
  const double n = 1e5, ln = std::log(n);
  EXPECT_NEAR(leading_moment(Rule::last, n, 2, 3) * std::pow(ln / n, 3), 0.4, 1e-12);
  EXPECT_DOUBLE_EQ(leading_moment(Rule::first, n, 1, 2), leading_moment(Rule::first, n, 4, 2));
  EXPECT_DOUBLE_EQ(leading_moment(Rule::random, n, 2, 1), leading_moment(Rule::last, n, 2, 1));
}

TEST(Alpha, ClosedFormAndRecurrence) {
  EXPECT_EQ(alpha_closed(1, 1), Rational(1, 2));
  for (unsigned ell = 1; ell <= 20; ++ell) {
    EXPECT_EQ(alpha_closed(ell, 0), Rational(1, ell));
    for (unsigned s = 0; s <= 20; ++s) EXPECT_EQ(alpha_recurrence(ell, s), alpha_closed(ell, s));
  }
}

TEST(Target, ForRule) {
  EXPECT_EQ(LimitTarget::for_rule(Rule::first, 2).kind, LimitTarget::Kind::stable);
  EXPECT_EQ(LimitTarget::for_rule(Rule::random, 2).ell, 2u);
}

TEST(Beta, CharacteristicFunction) {
  EXPECT_NEAR(std::abs(beta_cf(2, 0.0) - 1.0), 0.0, 1e-14);
  // l = 1: (e^{it} - 1) / (it)
  for (double t : {0.5, 1.0, 2.0}) {
    const std::complex<double> it(0, t);
    EXPECT_NEAR(std::abs(beta_cf(1, t) - (std::exp(it) - 1.0) / it), 0.0, 1e-13);
  }
  // l = 2: 2 (e^{it}(1 - it) - 1) / t^2 ... checked through the mean: derivative at 0 is i l/(l+1)
  const double h = 1e-5;
  EXPECT_NEAR(((beta_cf(2, h) - beta_cf(2, -h)) / (2 * h)).imag(), 2.0 / 3, 1e-8);
}
