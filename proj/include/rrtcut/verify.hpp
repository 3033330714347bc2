#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rrtcut::verify {

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool ok() const;
};

/// Limits for the exact suites; each suite has its own defaults.
struct VerifyOptions {
  std::optional<int> max_n;
  std::optional<int> max_ell;
  std::optional<int> max_z;
};

/// split:   closed-form splitting law vs enumeration (n <= 7), and exact
///          normalization of the three joint tables (n <= 40)
/// oracle:  recurrence laws vs per-tree exact process averaged over all trees
///          and label sets (n <= 7)
/// gf:      closed-form M_l coefficients vs exact laws (n <= 15, l <= 4)
/// ode:     zero residuals of the M, N, G equations (z^20, z^16, z^14; l <= 4)
/// alpha:   recurrence vs closed form of alpha_{l,s} (l, s <= 20)
/// moments: moment conversion identity, and the E L_{n,2} log n / n rate
///          constant over n in {50, 100, 200, 400}
const std::vector<std::string_view>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(std::string_view suite, const VerifyOptions& opts = {});

nlohmann::json to_json(const SuiteReport& r);

/// Rate constants |E L_{n,2} log n / n - 2/3| log n from the float recurrence.
std::vector<double> l2_rate_constants(const std::vector<std::uint32_t>& ns);

}  // namespace rrtcut::verify
