#include <gtest/gtest.h>

#include <sstream>

#include "rrtcut/exactdist.hpp"
#include "rrtcut/io.hpp"

using namespace rrtcut;

TEST(Io, ShortestDoubles) {
  for (double x : {0.1, 1.0 / 3, 2.0 / 3, 1e-300, 123456.789, 0.0}) {
    const auto s = io::format_double(x);
    EXPECT_EQ(std::stod(s), x);
  }
  EXPECT_EQ(io::format_double(0.25), "0.25");
}

TEST(Io, ExactJsonKeepsHugeIntegers) {
  const auto j = io::parse_json_exact(R"({"a":[123456789012345678901234567890,-5,0.5],"b":"x","c":true})");
  EXPECT_EQ(j["a"][0].get<std::string>(), "123456789012345678901234567890");
  EXPECT_EQ(j["a"][1].get<std::string>(), "-5");
  EXPECT_EQ(j["a"][2].get<std::string>(), "0.5");
  EXPECT_EQ(j["b"].get<std::string>(), "x");
  EXPECT_TRUE(j["c"].get<bool>());
  EXPECT_THROW(io::parse_json_exact("{\"a\":"), std::invalid_argument);
}

TEST(Io, RationalPmfRoundTrip) {
  for (Rule rule : {Rule::first, Rule::last, Rule::random}) {
    const auto p = exactdist::pmf<Rational>(rule, 40, 3);  // denominators beyond 64 bits
    std::ostringstream out;
    io::write_pmf_json(out, p);
    EXPECT_EQ(io::read_pmf_json_rational(out.str()), p);
  }
  std::ostringstream out;
  io::write_pmf_json(out, exactdist::pmf_R(3, 1));
  EXPECT_EQ(out.str(), "{\"rule\":\"first\",\"n\":3,\"ell\":1,\"support\":[1,2],\"num\":[1,3],\"den\":[4,4]}\n");
}

TEST(Io, FloatPmfRoundTrip) {
  const auto p = exactdist::pmf<double>(Rule::last, 30, 2);
  std::ostringstream out;
  io::write_pmf_json(out, p);
  EXPECT_EQ(io::read_pmf_json_float(out.str()), p);
  EXPECT_THROW(io::read_pmf_json_float("{\"rule\":\"last\",\"n\":3}"), std::invalid_argument);
}

TEST(Io, PerTreeRule) {
  Pmf<Rational> p{std::nullopt, 3, 1, {0, Rational(1, 2), Rational(1, 2)}};
  std::ostringstream out;
  io::write_pmf_json(out, p);
  EXPECT_NE(out.str().find("\"per-tree\""), std::string::npos);
  EXPECT_EQ(io::read_pmf_json_rational(out.str()), p);
}

TEST(Io, SplitCsvRoundTrip) {
  const auto cells = splitprob::joint_table(Rule::random, 30, 4);
  std::stringstream buf;
  io::write_split_csv(buf, cells);
  const auto back = io::read_split_csv(buf);
  ASSERT_EQ(back.size(), cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    EXPECT_EQ(back[i].k, cells[i].k);
    EXPECT_EQ(back[i].r, cells[i].r);
    EXPECT_EQ(back[i].p, cells[i].p);
  }
  std::stringstream bad("k,r,p\n");
  EXPECT_THROW(io::read_split_csv(bad), std::invalid_argument);
}

TEST(Io, SimulationCsvRoundTrip) {
  const std::vector<std::uint32_t> cuts{1, 5, 3, 0, 99};
  std::stringstream buf;
  io::write_simulation_csv(buf, cuts);
  EXPECT_EQ(buf.str().substr(0, 21), "replicate_index,cuts\n");
  EXPECT_EQ(io::read_simulation_csv(buf), cuts);
  std::stringstream gap("replicate_index,cuts\n0,1\n2,1\n");
  EXPECT_THROW(io::read_simulation_csv(gap), std::invalid_argument);
}

TEST(Io, TraceRoundTrip) {
  std::vector<std::vector<cutter::TraceStep>> traces{
      {{1, 2, {{1, 3}}}, {1, 3, {{1}}}},
      {{2, 4, {{1, 2, 3}, {4}}}},
  };
  std::stringstream buf;
  io::write_trace_jsonl(buf, traces);
  EXPECT_EQ(buf.str().substr(0, buf.str().find('\n')), R"({"replicate":0,"edge":[1,2],"kept":[[1,3]]})");
  const auto back = io::read_trace_jsonl(buf);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1][0].kept, (std::vector<std::vector<Label>>{{1, 2, 3}, {4}}));
  EXPECT_EQ(back[0][1].child, 3u);
}

TEST(Io, LimitReportRoundTrip) {
  montecarlo::LimitFitReport r;
  r.rule = Rule::random;
  r.ell = 2;
  r.target = asymptotics::LimitTarget::beta(2);
  r.n_grid = {1000, 10000};
  r.replicates = 77;
  r.seed = 5;
  r.series = {{"ks", {0.1, 1.0 / 3}, true}, {"cf(0.5)", {0.2, 0.3}, false}};
  std::stringstream buf;
  io::write_limit_report(buf, r);
  const auto back = io::read_limit_report(buf);
  EXPECT_EQ(back.n_grid, r.n_grid);
  EXPECT_EQ(back.series.size(), 2u);
  EXPECT_EQ(back.series[0].distances, r.series[0].distances);
  EXPECT_FALSE(back.series[1].decreasing);
  EXPECT_EQ(io::to_json(back), io::to_json(r));
}

TEST(Io, ResidualRoundTrip) {
  series::ResidualReport r{"ode-N", 2, 16, {3, 5}, 0.5};
  const auto back = io::residual_from_json(io::to_json(r));
  EXPECT_EQ(back.name, r.name);
  EXPECT_EQ(back.nonzero_degrees, r.nonzero_degrees);
  EXPECT_FALSE(back.ok());
}
