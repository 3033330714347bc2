#include "rrtcut/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>

#include "rrtcut/cutter.hpp"
#include "rrtcut/errors.hpp"
#include "rrtcut/exactdist.hpp"
#include "rrtcut/io.hpp"
#include "rrtcut/montecarlo.hpp"
#include "rrtcut/splitprob.hpp"
#include "rrtcut/tree.hpp"
#include "rrtcut/verify.hpp"

namespace rrtcut::cli {

namespace {

// Raised for inconsistent flag combinations found after parsing.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(file);
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

struct SimulateArgs {
  std::string rule = "first";
  std::uint32_t n = 0, ell = 0;
  std::uint64_t reps = 1, seed = 0;
  unsigned workers = 0;
  std::string engine;
  std::string out;
  std::string trace;
  bool trace_flag = false;
  double budget = 0;
};

int do_simulate(const SimulateArgs& a, std::ostream& out) {
  montecarlo::ExperimentConfig cfg;
  cfg.rule = parse_rule(a.rule);
  cfg.n = a.n;
  cfg.ell = a.ell;
  cfg.replicates = a.reps;
  cfg.seed = a.seed;
  cfg.workers = a.workers;
  cfg.keep_cuts = true;
  cfg.want_trace = a.trace_flag;
  if (a.engine.empty())
    cfg.engine = a.trace_flag ? montecarlo::Engine::forest : montecarlo::Engine::streaming;
  else
    cfg.engine = montecarlo::parse_engine(a.engine);
  if (a.trace_flag && cfg.engine != montecarlo::Engine::forest)
    throw UsageError("--trace needs --engine forest");
  std::string trace_path = a.trace;
  if (a.trace_flag && trace_path.empty()) {
    if (a.out.empty()) throw UsageError("--trace without a file name needs --out");
    trace_path = a.out + ".trace.jsonl";
  }
  if (a.budget > 0) cfg.time_budget = std::chrono::milliseconds(static_cast<long>(a.budget * 1000));
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const auto summary = montecarlo::run_experiment(cfg);
  emit(a.out, out, [&](std::ostream& os) { io::write_simulation_csv(os, summary.cuts); });
  if (a.trace_flag) emit(trace_path, out, [&](std::ostream& os) { io::write_trace_jsonl(os, summary.traces); });
  return kExitOk;
}

struct ExactArgs {
  std::string rule = "first";
  std::uint32_t n = 0, ell = 0;
  std::string backend = "rational";
  std::string emit_path;
  std::string tree_text;
  std::vector<Label> labels;
};

int do_exact(const ExactArgs& a, std::ostream& out) {
  const auto backend = exactdist::parse_backend(a.backend);
  if (!a.tree_text.empty() || !a.labels.empty()) {
    if (a.tree_text.empty() && a.n != 1) throw UsageError("--labels needs --tree");
    if (backend != exactdist::Backend::rational) throw UsageError("per-tree laws use the rational backend");
    tree::RecursiveTree t;
    cutter::LabelSet s({1}, 1);
    try {
      t = tree::from_text(a.tree_text);
      s = cutter::LabelSet(a.labels, t.size());
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const auto law = cutter::exact_pmf_for_tree(t, s);
    emit(a.emit_path, out, [&](std::ostream& os) { io::write_pmf_json(os, law); });
    return kExitOk;
  }
  if (a.n < 1 || a.ell < 1 || a.ell > a.n) throw UsageError("need 1 <= ell <= n");
  if (backend == exactdist::Backend::rational) {
    const auto p = exactdist::pmf<Rational>(parse_rule(a.rule), a.n, a.ell);
    emit(a.emit_path, out, [&](std::ostream& os) { io::write_pmf_json(os, p); });
  } else {
    const auto p = exactdist::pmf<double>(parse_rule(a.rule), a.n, a.ell);
    emit(a.emit_path, out, [&](std::ostream& os) { io::write_pmf_json(os, p); });
  }
  return kExitOk;
}

struct SplitArgs {
  std::string rule = "first";
  long n = 0, ell = 0;
  std::string out;
};

int do_split(const SplitArgs& a, std::ostream& out) {
  if (a.n < 2 || a.ell < 1 || a.ell > a.n) throw UsageError("need n >= 2 and 1 <= ell <= n");
  const auto cells = splitprob::joint_table(parse_rule(a.rule), a.n, a.ell);
  emit(a.out, out, [&](std::ostream& os) { io::write_split_csv(os, cells); });
  return kExitOk;
}

struct VerifyArgs {
  std::string suite;
  int max_n = 0, max_z = 0, max_ell = 0;
  std::string emit_path;
};

int do_verify(const VerifyArgs& a, std::ostream& out) {
  std::vector<std::string_view> suites;
  if (a.suite == "all")
    suites = verify::suite_names();
  else
    suites.push_back(a.suite);
  verify::VerifyOptions opts;
  if (a.max_n > 0) opts.max_n = a.max_n;
  if (a.max_z > 0) opts.max_z = a.max_z;
  if (a.max_ell > 0) opts.max_ell = a.max_ell;

  bool all_ok = true;
  nlohmann::json doc = nlohmann::json::array();
  for (auto name : suites) {
    const auto rep = verify::run_suite(name, opts);
    for (const auto& c : rep.checks)
      out << (c.ok ? "PASS " : "FAIL ") << rep.suite << ": " << c.name << " (" << c.detail << ")\n";
    out << (rep.ok() ? "PASS" : "FAIL") << " suite " << rep.suite << " (" << rep.checks.size() << " checks)\n";
    all_ok &= rep.ok();
    doc.push_back(verify::to_json(rep));
  }
  if (!a.emit_path.empty())
    emit(a.emit_path, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return all_ok ? kExitOk : kExitFailed;
}

struct LimitArgs {
  std::string rule = "last";
  std::uint32_t ell = 1;
  std::vector<double> grid;
  std::vector<std::string> stats{"ks", "moments", "cf"};
  std::vector<double> cf_points{-1, -0.5, 0.5, 1};
  std::uint64_t reps = 1000, seed = 0;
  unsigned workers = 0;
  std::string engine = "streaming";
  double slack = 1.1;
  std::string out;
};

int do_limit(const LimitArgs& a, std::ostream& out) {
  montecarlo::SweepConfig cfg;
  cfg.rule = parse_rule(a.rule);
  cfg.ell = a.ell;
  for (double g : a.grid) {
    if (!(g >= 3) || g > 4e9 || g != std::floor(g)) throw UsageError("grid values must be integers >= 3");
    cfg.n_grid.push_back(static_cast<std::uint32_t>(g));
  }
  for (std::size_t i = 1; i < cfg.n_grid.size(); ++i)
    if (cfg.n_grid[i] <= cfg.n_grid[i - 1]) throw UsageError("grid must be strictly increasing");
  if (cfg.ell < 1 || cfg.ell > cfg.n_grid.front()) throw UsageError("need 1 <= ell <= smallest grid value");
  cfg.stats.clear();
  try {
    for (const auto& s : a.stats) cfg.stats.push_back(montecarlo::parse_statistic(s));
    cfg.engine = montecarlo::parse_engine(a.engine);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.cf_points = a.cf_points;
  cfg.replicates = a.reps;
  cfg.seed = a.seed;
  cfg.workers = a.workers;
  cfg.slack = a.slack;

  const auto rep = montecarlo::convergence_sweep(cfg);
  emit(a.out, out, [&](std::ostream& os) { io::write_limit_report(os, rep); });
  return rep.all_decreasing() ? kExitOk : kExitFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cut-count laws for isolating labelled nodes in random recursive trees"};
  app.name("rrt-cut");
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo cut counts, one CSV row per replicate");
  simulate->add_option("--rule", sim.rule, "Target labels: first, last or random")->required()
      ->check(CLI::IsMember({"first", "last", "random"}));
  simulate->add_option("--n", sim.n, "Tree size")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--ell", sim.ell, "Number of targets")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--reps", sim.reps, "Replicates")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "64-bit seed");
  simulate->add_option("--workers", sim.workers, "Threads (0 = all cores)");
  simulate->add_option("--engine", sim.engine, "forest or streaming (default streaming, forest with --trace)");
  simulate->add_option("--budget", sim.budget, "Time budget in seconds (0 = none)");
  simulate->add_option("--out", sim.out, "CSV file (default stdout)");
  auto* trace_opt = simulate->add_option("--trace", sim.trace, "Write per-cut JSON lines (default <out>.trace.jsonl)")
                        ->expected(0, 1);

  ExactArgs ex;
  auto* exact = app.add_subcommand("exact", "Exact law of the cut count as JSON");
  exact->add_option("--rule", ex.rule, "first, last or random")->check(CLI::IsMember({"first", "last", "random"}));
  exact->add_option("--n", ex.n, "Tree size");
  exact->add_option("--ell", ex.ell, "Number of targets");
  exact->add_option("--backend", ex.backend, "rational or float")->check(CLI::IsMember({"rational", "float"}));
  exact->add_option("--emit", ex.emit_path, "JSON file (default stdout)");
  exact->add_option("--tree", ex.tree_text, "Fixed tree as parent list p2,...,pn (n <= 9)");
  exact->add_option("--labels", ex.labels, "Targets in the fixed tree")->delimiter(',');

  SplitArgs sp;
  auto* split = app.add_subcommand("split", "Joint table of one random cut as CSV k,r,num,den");
  split->add_option("--rule", sp.rule, "first, last or random")->required()->check(CLI::IsMember({"first", "last", "random"}));
  split->add_option("--n", sp.n, "Tree size")->required();
  split->add_option("--ell", sp.ell, "Number of targets")->required();
  split->add_option("--out", sp.out, "CSV file (default stdout)");

  VerifyArgs ve;
  auto* verify_cmd = app.add_subcommand("verify", "Exact verification suites");
  std::vector<std::string> suite_choices(verify::suite_names().begin(), verify::suite_names().end());
  suite_choices.emplace_back("all");
  verify_cmd->add_option("--suite", ve.suite, "split, oracle, gf, ode, alpha, moments or all")->required()
      ->check(CLI::IsMember(suite_choices));
  verify_cmd->add_option("--max-n", ve.max_n, "Largest n (suite default when omitted)");
  verify_cmd->add_option("--max-z", ve.max_z, "Truncation order for series suites");
  verify_cmd->add_option("--max-ell", ve.max_ell, "Largest l for series suites");
  verify_cmd->add_option("--emit", ve.emit_path, "Write results as JSON");

  LimitArgs li;
  auto* limit = app.add_subcommand("limit", "Distances to the limit law along an n grid, as JSON");
  limit->add_option("--rule", li.rule, "first, last or random")->required()->check(CLI::IsMember({"first", "last", "random"}));
  limit->add_option("--ell", li.ell, "Number of targets")->required()->check(CLI::PositiveNumber);
  limit->add_option("--grid", li.grid, "Tree sizes, e.g. 1e3,1e4,1e5")->required()->delimiter(',');
  limit->add_option("--stat", li.stats, "Any of ks, moments, cf")->delimiter(',')
      ->check(CLI::IsMember({"ks", "moments", "cf"}));
  limit->add_option("--t", li.cf_points, "CF arguments")->delimiter(',');
  limit->add_option("--reps", li.reps, "Replicates per grid point")->check(CLI::PositiveNumber);
  limit->add_option("--seed", li.seed, "64-bit seed");
  limit->add_option("--workers", li.workers, "Threads (0 = all cores)");
  limit->add_option("--engine", li.engine, "forest or streaming")->check(CLI::IsMember({"forest", "streaming"}));
  limit->add_option("--slack", li.slack, "Allowed growth factor between grid points");
  limit->add_option("--out", li.out, "JSON file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*simulate) {
      sim.trace_flag = trace_opt->count() > 0;
      return do_simulate(sim, out);
    }
    if (*exact) return do_exact(ex, out);
    if (*split) return do_split(sp, out);
    if (*verify_cmd) return do_verify(ve, out);
    if (*limit) return do_limit(li, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"rrt-cut"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace rrtcut::cli
