#include <gtest/gtest.h>

#include <cstring>

#include "rrtcut/exactdist.hpp"
#include "rrtcut/montecarlo.hpp"

using namespace rrtcut;
using namespace rrtcut::montecarlo;

namespace {

ExperimentConfig config(Rule rule, std::uint32_t n, std::uint32_t ell, std::uint64_t reps, std::uint64_t seed) {
  ExperimentConfig c;
  c.rule = rule;
  c.n = n;
  c.ell = ell;
  c.replicates = reps;
  c.seed = seed;
  return c;
}

std::vector<double> exact_probs(Rule rule, std::uint32_t n, std::uint32_t ell) {
  const auto p = exactdist::pmf<Rational>(rule, n, ell);
  std::vector<double> out;
  for (const auto& q : p.probs) out.push_back(to_double(q));
  return out;
}

double mean_cuts(const SampleSummary& s) {
  double m = 0;
  for (std::size_t k = 0; k < s.histogram.size(); ++k) m += static_cast<double>(k * s.histogram[k]);
  return m / static_cast<double>(s.replicates);
}

}  // namespace

TEST(Experiment, TwoNodesAlwaysOneCut) {
  for (Rule rule : {Rule::first, Rule::last, Rule::random})
    for (Engine engine : {Engine::forest, Engine::streaming}) {
      auto c = config(rule, 2, 1, 100, 3);
      c.engine = engine;
      c.keep_cuts = true;
      const auto s = run_experiment(c);
      EXPECT_EQ(s.histogram[1], 100u);
      EXPECT_EQ(s.cuts, std::vector<std::uint32_t>(100, 1));
    }
}

TEST(Experiment, MeanForThreeNodes) {
  const auto s = run_experiment(config(Rule::first, 3, 1, 1000000, 17));
  const double sigma = std::sqrt(0.25 * 0.75 / 1e6);
  EXPECT_NEAR(mean_cuts(s), 1.75, 3 * sigma);
}

TEST(Experiment, IndependentOfWorkerCount) {
  for (Engine engine : {Engine::forest, Engine::streaming}) {
    auto c = config(Rule::random, 500, 3, 3000, 99);
    c.engine = engine;
    c.keep_cuts = true;
    c.workers = 1;
    const auto a = run_experiment(c);
    c.workers = 4;
    const auto b = run_experiment(c);
    EXPECT_EQ(a.histogram, b.histogram);
    EXPECT_EQ(a.cuts, b.cuts);
    EXPECT_EQ(std::memcmp(a.moments.data(), b.moments.data(), sizeof a.moments), 0);
    EXPECT_EQ(a.cf, b.cf);
    EXPECT_EQ(a.cdf, b.cdf);
  }
}

TEST(Experiment, SeedChangesOutcome) {
  auto c = config(Rule::last, 300, 2, 500, 1);
  const auto a = run_experiment(c);
  c.seed = 2;
  EXPECT_NE(a.histogram, run_experiment(c).histogram);
}

TEST(Experiment, EnginesMatchExactLaw) {
  for (Engine engine : {Engine::forest, Engine::streaming})
    for (Rule rule : {Rule::first, Rule::last, Rule::random})
      for (std::uint32_t ell : {1u, 2u, 4u}) {
        auto c = config(rule, 7, ell, 100000, 1234 + ell);
        c.engine = engine;
        const auto s = run_experiment(c);
        const auto res = chi_square_gof(s.histogram, exact_probs(rule, 7, ell));
        EXPECT_GE(res.p_value, 1e-3) << to_string(engine) << " " << to_string(rule) << " l=" << ell
                                     << " chi2=" << res.statistic << " df=" << res.df;
      }
}

TEST(Experiment, SummaryInvariants) {
  for (Rule rule : {Rule::first, Rule::last}) {
    const auto s = run_experiment(config(rule, 2000, 2, 2000, 5));
    EXPECT_LE(s.moments[0] * s.moments[0], s.moments[1]);
    EXPECT_TRUE(std::is_sorted(s.cdf.begin(), s.cdf.end()));
    EXPECT_GE(s.cdf.front(), 0.0);
    EXPECT_LE(s.cdf.back(), 1.0);
    const auto sample = s.sorted_sample();
    EXPECT_EQ(sample.size(), 2000u);
    EXPECT_TRUE(std::is_sorted(sample.begin(), sample.end()));
    if (rule == Rule::last) {
      const double ln = std::log(2000.0);
      EXPECT_GE(sample.front(), 1 * ln / 2000);
      EXPECT_LE(sample.back(), 1999 * ln / 2000);
      EXPECT_EQ(s.normalization, Normalization::scale);
    } else {
      EXPECT_EQ(s.normalization, Normalization::stable);
    }
    const auto cf = empirical_cf(sample, s.cf_grid);
    for (std::size_t j = 0; j < cf.size(); ++j) EXPECT_NEAR(std::abs(cf[j] - s.cf[j]), 0.0, 1e-12);
  }
}

TEST(Experiment, TracesOnlyWithForest) {
  auto c = config(Rule::random, 40, 3, 5, 8);
  c.want_trace = true;
  EXPECT_THROW(run_experiment(c), std::invalid_argument);
  c.engine = Engine::forest;
  c.keep_cuts = true;
  const auto s = run_experiment(c);
  ASSERT_EQ(s.traces.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(s.traces[i].size(), s.cuts[i]);
}

TEST(Experiment, BudgetCarriesPartialResult) {
  auto c = config(Rule::first, 100000, 1, 1000000, 1);
  c.time_budget = std::chrono::milliseconds(50);
  try {
    run_experiment(c);
    FAIL() << "expected the budget to run out";
  } catch (const ExperimentBudgetExceeded& e) {
    EXPECT_TRUE(e.partial().partial);
    EXPECT_LT(e.partial().replicates, 1000000u);
    std::uint64_t total = 0;
    for (auto h : e.partial().histogram) total += h;
    EXPECT_EQ(total, e.partial().replicates);
  }
}

TEST(Experiment, RejectsBadConfig) {
  EXPECT_THROW(run_experiment(config(Rule::first, 3, 4, 10, 1)), std::invalid_argument);
  EXPECT_THROW(run_experiment(config(Rule::first, 3, 1, 0, 1)), std::invalid_argument);
}

TEST(Ks, UniformQuantiles) {
  const std::size_t m = 1000;
  std::vector<double> q(m);
  for (std::size_t i = 0; i < m; ++i) q[i] = static_cast<double>(i + 1) / (m + 1);
  EXPECT_LE(ks_statistic(q, asymptotics::LimitTarget::beta(1)), 1.0 / (m + 1) + 1.0 / m);
}

TEST(Ks, DegenerateSample) {
  const std::vector<double> ones(50, 1.0);
  EXPECT_DOUBLE_EQ(ks_statistic(ones, asymptotics::LimitTarget::beta(1)), 1.0);
  EXPECT_THROW(ks_statistic(std::vector<double>{}, asymptotics::LimitTarget::beta(1)), std::invalid_argument);
  EXPECT_THROW(ks_statistic(ones, asymptotics::LimitTarget::stable()), std::invalid_argument);
}

TEST(Ks, HistogramAgreesWithSortedSample) {
  const auto s = run_experiment(config(Rule::last, 5000, 2, 3000, 3));
  const auto target = asymptotics::LimitTarget::beta(2);
  EXPECT_NEAR(ks_statistic(s, target), ks_statistic(s.sorted_sample(), target), 1e-12);
}

TEST(Cf, Basics) {
  const std::vector<double> sample{0.3, -1.2, 4.0};
  const std::vector<double> zero{0.0};
  EXPECT_EQ(empirical_cf(sample, zero)[0], std::complex<double>(1.0, 0.0));
  const std::vector<double> zeros(10, 0.0);
  const std::vector<double> ts{-2, 1, 3};
  for (auto c : empirical_cf(zeros, ts)) EXPECT_EQ(c, std::complex<double>(1.0, 0.0));
  EXPECT_THROW(empirical_cf(std::vector<double>{}, ts), std::invalid_argument);
}

TEST(ChiSquare, Basics) {
  const std::vector<std::uint64_t> obs{250, 250, 500};
  const std::vector<double> p{0.25, 0.25, 0.5};
  const auto perfect = chi_square_gof(obs, p);
  EXPECT_DOUBLE_EQ(perfect.statistic, 0.0);
  EXPECT_EQ(perfect.df, 2);
  EXPECT_DOUBLE_EQ(perfect.p_value, 1.0);

  const auto off = chi_square_gof(std::vector<std::uint64_t>{400, 100, 500}, p);
  EXPECT_LT(off.p_value, 1e-10);

  const auto impossible = chi_square_gof(std::vector<std::uint64_t>{1, 9}, std::vector<double>{0.0, 1.0});
  EXPECT_EQ(impossible.p_value, 0.0);

  // tiny cells are pooled into their neighbours
  const auto pooled = chi_square_gof(std::vector<std::uint64_t>{1, 0, 99}, std::vector<double>{0.01, 0.01, 0.98});
  EXPECT_EQ(pooled.bins, 1u);
  EXPECT_EQ(pooled.df, 0);
  EXPECT_DOUBLE_EQ(pooled.p_value, 1.0);
}

TEST(Sweep, ReportsTrendsPerStatistic) {
  SweepConfig c;
  c.rule = Rule::last;
  c.ell = 1;
  c.n_grid = {100, 10000};
  c.replicates = 4000;
  c.seed = 7;
  const auto rep = convergence_sweep(c);
  ASSERT_NE(rep.find("ks"), nullptr);
  ASSERT_NE(rep.find("moment-1"), nullptr);
  ASSERT_NE(rep.find("cf(0.5)"), nullptr);
  EXPECT_EQ(rep.find("ks")->distances.size(), 2u);
  EXPECT_EQ(rep.target.kind, asymptotics::LimitTarget::Kind::beta);

  c.rule = Rule::first;
  const auto stable = convergence_sweep(c);
  EXPECT_EQ(stable.find("ks"), nullptr);
  EXPECT_NE(stable.find("cf(1)"), nullptr);

  c.n_grid = {100, 100};
  EXPECT_THROW(convergence_sweep(c), std::invalid_argument);
}

TEST(Sweep, TrendRule) {
  EXPECT_TRUE(trend_ok(std::vector<double>{0.3, 0.2, 0.21}, 1.1));
  EXPECT_FALSE(trend_ok(std::vector<double>{0.3, 0.2, 0.23}, 1.1));
  EXPECT_TRUE(trend_ok(std::vector<double>{0.3}, 1.1));
}
