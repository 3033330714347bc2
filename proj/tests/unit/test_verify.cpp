#include <gtest/gtest.h>

#include "rrtcut/verify.hpp"

using namespace rrtcut;

TEST(Verify, SmallSuitesPass) {
  verify::VerifyOptions small;
  small.max_n = 5;
  small.max_ell = 2;
  small.max_z = 6;
  for (auto name : verify::suite_names()) {
    if (name == "moments") continue;  // fixed grid up to n = 400, covered by acceptance
    const auto rep = verify::run_suite(name, small);
    EXPECT_TRUE(rep.ok()) << name;
    EXPECT_FALSE(rep.checks.empty()) << name;
  }
  EXPECT_THROW(verify::run_suite("nope"), std::invalid_argument);
}

TEST(Verify, JsonShape) {
  verify::VerifyOptions o;
  o.max_ell = 3;
  o.max_n = 3;
  const auto j = verify::to_json(verify::run_suite("alpha", o));
  EXPECT_EQ(j["suite"], "alpha");
  EXPECT_EQ(j["checks"].size(), 3u);
  EXPECT_TRUE(j["ok"].get<bool>());
}
