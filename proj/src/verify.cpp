#include "rrtcut/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rrtcut/asymptotics.hpp"
#include "rrtcut/cutter.hpp"
#include "rrtcut/exactdist.hpp"
#include "rrtcut/series.hpp"
#include "rrtcut/splitprob.hpp"
#include "rrtcut/tree.hpp"

namespace rrtcut::verify {

bool SuiteReport::ok() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names{"split", "oracle", "gf", "ode", "alpha", "moments"};
  return names;
}

namespace {

std::string cell(const char* what, long n, long ell) {
  return std::string(what) + " n=" + std::to_string(n) + " l=" + std::to_string(ell);
}

void split_suite(SuiteReport& rep, const VerifyOptions& o) {
  const int enum_n = o.max_n.value_or(7);
  for (long n = 2; n <= enum_n; ++n)
    for (long ell = 1; ell <= n; ++ell) {
      const auto e = splitprob::verify_against_enumeration(n, ell);
      std::string detail = std::to_string(e.pairs) + " pairs";
      if (!e.ok()) {
        const auto& m = e.mismatches.front();
        detail += "; k=" + std::to_string(m.k) + " r=" + std::to_string(m.r) + " formula " + to_string(m.formula) +
                  " counted " + to_string(m.counted);
      }
      rep.checks.push_back({cell("enumeration", n, ell), e.ok(), detail});
    }
  const int norm_n = std::max(o.max_n.value_or(40), 40);
  for (Rule rule : {Rule::first, Rule::last, Rule::random}) {
    long bad_n = 0, bad_ell = 0;
    Rational bad_sum;
    for (long n = 2; n <= norm_n && bad_n == 0; ++n)
      for (long ell = 1; ell <= n; ++ell) {
        Rational total;
        bool negative = false;
        for (const auto& c : splitprob::joint_table(rule, n, ell)) {
          negative |= c.p < 0;
          total += c.p;
        }
        if (total != 1 || negative) {
          bad_n = n, bad_ell = ell, bad_sum = total;
          break;
        }
      }
    rep.checks.push_back({"normalization " + std::string(to_string(rule)) + " n<=" + std::to_string(norm_n),
                          bad_n == 0,
                          bad_n == 0 ? "all sums equal 1"
                                     : cell("sum", bad_n, bad_ell) + " = " + to_string(bad_sum)});
  }
}

void oracle_suite(SuiteReport& rep, const VerifyOptions& o) {
  const int max_n = o.max_n.value_or(7);
  for (std::uint32_t n = 1; n <= static_cast<std::uint32_t>(max_n); ++n) {
    const auto trees = tree::enumerate_all(n);
    for (std::uint32_t ell = 1; ell <= n; ++ell) {
      std::map<Rule, std::vector<Rational>> acc;
      std::map<Rule, long> count;
      for (const auto& t : trees) {
        RandomStream unused(0);
        for (Rule rule : {Rule::first, Rule::last}) {
          const auto law = cutter::exact_pmf_for_tree(t, cutter::select_labels(rule, n, ell, unused));
          auto& a = acc[rule];
          a.resize(n);
          for (std::size_t m = 0; m < n; ++m) a[m] += law.probs[m];
          ++count[rule];
        }
        auto& a = acc[Rule::random];
        a.resize(n);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          if (static_cast<std::uint32_t>(std::popcount(mask)) != ell) continue;
          std::vector<Label> labels;
          for (Label v = 1; v <= n; ++v)
            if (mask >> (v - 1) & 1u) labels.push_back(v);
          const auto law = cutter::exact_pmf_for_tree(t, cutter::LabelSet(labels, n));
          for (std::size_t m = 0; m < n; ++m) a[m] += law.probs[m];
          ++count[Rule::random];
        }
      }
      for (Rule rule : {Rule::first, Rule::last, Rule::random}) {
        const auto dp = exactdist::pmf<Rational>(rule, n, ell);
        std::string detail = "equal";
        bool ok = true;
        for (std::size_t m = 0; m < n && ok; ++m) {
          const Rational avg = acc[rule][m] / count[rule];
          if (avg != dp.probs[m]) {
            ok = false;
            detail = "m=" + std::to_string(m) + " recurrence " + to_string(dp.probs[m]) + " oracle " + to_string(avg);
          }
        }
        rep.checks.push_back({cell(("oracle " + std::string(to_string(rule))).c_str(), n, ell), ok, detail});
      }
    }
  }
}

void add_residual(SuiteReport& rep, const series::ResidualReport& r) {
  std::string detail = "zero up to z^" + std::to_string(r.z_trunc);
  if (!r.ok()) {
    std::ostringstream d;
    d << "nonzero at z^" << r.nonzero_degrees.front() << " (max |coeff| " << r.max_abs << ")";
    detail = d.str();
  }
  rep.checks.push_back({r.name + " l=" + std::to_string(r.ell) + " Z=" + std::to_string(r.z_trunc), r.ok(), detail});
}

void gf_suite(SuiteReport& rep, const VerifyOptions& o) {
  const int max_ell = o.max_ell.value_or(4);
  const int max_n = o.max_n.value_or(15);
  for (int ell = 1; ell <= max_ell; ++ell) add_residual(rep, series::check_M_coefficients(ell, std::max(max_n, ell)));
}

void ode_suite(SuiteReport& rep, const VerifyOptions& o) {
  const int max_ell = o.max_ell.value_or(4);
  for (int ell = 1; ell <= max_ell; ++ell) {
    add_residual(rep, series::check_ode_M(ell, o.max_z.value_or(20)));
    add_residual(rep, series::check_b_M(ell, o.max_z.value_or(20)));
    add_residual(rep, series::check_ode_N(ell, o.max_z.value_or(16)));
    add_residual(rep, series::check_N_at_one(ell, o.max_z.value_or(16)));
    add_residual(rep, series::check_ode_G(ell, o.max_z.value_or(14)));
    add_residual(rep, series::check_G_at_one(ell, o.max_z.value_or(14)));
  }
}

void alpha_suite(SuiteReport& rep, const VerifyOptions& o) {
  const unsigned max_ell = static_cast<unsigned>(o.max_ell.value_or(20));
  const unsigned max_s = static_cast<unsigned>(o.max_n.value_or(20));
  for (unsigned ell = 1; ell <= max_ell; ++ell) {
    bool ok = true;
    std::string detail = "s=0.." + std::to_string(max_s) + " equal";
    for (unsigned s = 0; s <= max_s && ok; ++s) {
      const auto a = asymptotics::alpha_recurrence(ell, s), b = asymptotics::alpha_closed(ell, s);
      if (a != b) {
        ok = false;
        detail = "s=" + std::to_string(s) + " recurrence " + to_string(a) + " closed " + to_string(b);
      }
    }
    rep.checks.push_back({"alpha l=" + std::to_string(ell), ok, detail});
  }
}

void moments_suite(SuiteReport& rep, const VerifyOptions& o) {
  const int max_n = o.max_n.value_or(20);
  bool ok = true;
  std::string detail = "n<=" + std::to_string(max_n) + ", s<=4";
  for (std::uint32_t n = 1; n <= static_cast<std::uint32_t>(max_n) && ok; ++n)
    for (std::uint32_t ell = 1; ell <= n && ok; ++ell)
      for (Rule rule : {Rule::first, Rule::last, Rule::random}) {
        const auto p = exactdist::pmf<Rational>(rule, n, ell);
        for (unsigned s = 0; s <= 4 && ok; ++s)
          if (exactdist::raw_moment(p, s) != exactdist::raw_moment_direct(p, s)) {
            ok = false;
            detail = cell(std::string(to_string(rule)).c_str(), n, ell) + " s=" + std::to_string(s);
          }
      }
  rep.checks.push_back({"stirling conversion", ok, detail});

  const std::vector<std::uint32_t> ns{50, 100, 200, 400};
  const auto c = l2_rate_constants(ns);
  const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
  const double spread = (*hi - *lo) / *lo;
  std::ostringstream d;
  d << "C =";
  for (std::size_t i = 0; i < ns.size(); ++i) d << " " << c[i] << " (n=" << ns[i] << ")";
  d << "; spread " << spread;
  rep.checks.push_back({"E L_{n,2} rate constant stable within 25%", spread < 0.25, d.str()});
}

}  // namespace

std::vector<double> l2_rate_constants(const std::vector<std::uint32_t>& ns) {
  std::vector<double> out;
  for (std::uint32_t n : ns) {
    const auto p = exactdist::pmf_L<double>(n, 2);
    const double ln = std::log(static_cast<double>(n));
    const double e = exactdist::raw_moment_direct(p, 1) * ln / n;
    out.push_back(std::abs(e - 2.0 / 3.0) * ln);
  }
  return out;
}

SuiteReport run_suite(std::string_view suite, const VerifyOptions& opts) {
  SuiteReport rep{std::string(suite), {}, 0};
  const auto start = std::chrono::steady_clock::now();
  if (suite == "split") split_suite(rep, opts);
  else if (suite == "oracle") oracle_suite(rep, opts);
  else if (suite == "gf") gf_suite(rep, opts);
  else if (suite == "ode") ode_suite(rep, opts);
  else if (suite == "alpha") alpha_suite(rep, opts);
  else if (suite == "moments") moments_suite(rep, opts);
  else throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return {{"suite", r.suite}, {"ok", r.ok()}, {"checks", checks}};
}

}  // namespace rrtcut::verify
