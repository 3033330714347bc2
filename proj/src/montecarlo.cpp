#include "rrtcut/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

#include "rrtcut/streaming.hpp"
#include "rrtcut/tree.hpp"

namespace rrtcut::montecarlo {

std::string_view to_string(Engine e) { return e == Engine::forest ? "forest" : "streaming"; }

Engine parse_engine(std::string_view text) {
  if (text == "forest") return Engine::forest;
  if (text == "streaming") return Engine::streaming;
  throw std::invalid_argument("unknown engine '" + std::string(text) + "'");
}

std::string_view to_string(Normalization z) {
  switch (z) {
    case Normalization::none: return "none";
    case Normalization::scale: return "scale";
    case Normalization::stable: return "stable";
  }
  return "?";
}

Normalization default_normalization(Rule rule, std::uint32_t n) {
  if (n < 3) return Normalization::none;
  return rule == Rule::first ? Normalization::stable : Normalization::scale;
}

std::string_view to_string(Statistic s) {
  switch (s) {
    case Statistic::ks: return "ks";
    case Statistic::moments: return "moments";
    case Statistic::cf: return "cf";
  }
  return "?";
}

Statistic parse_statistic(std::string_view text) {
  if (text == "ks") return Statistic::ks;
  if (text == "moments") return Statistic::moments;
  if (text == "cf") return Statistic::cf;
  throw std::invalid_argument("unknown statistic '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
  if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (ell < 1 || ell > n)
    throw std::invalid_argument("need 1 <= l <= n, got n = " + std::to_string(n) + ", l = " + std::to_string(ell));
  if (want_trace && engine != Engine::forest) throw std::invalid_argument("traces need the forest engine");
  if (normalization && *normalization != Normalization::none && n < 3)
    throw std::invalid_argument("normalization needs n >= 3");
}

namespace {

// Neumaier summation.
struct CompensatedSum {
  double sum = 0, c = 0;
  void add(double x) {
    const double t = sum + x;
    c += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

std::vector<double> default_cdf_grid(Normalization z) {
  const double lo = z == Normalization::stable ? -8.0 : 0.0;
  const double hi = z == Normalization::stable ? 4.0 : 1.0;
  std::vector<double> g(101);
  for (int i = 0; i <= 100; ++i) g[i] = lo + (hi - lo) * i / 100.0;
  return g;
}

}  // namespace

double SampleSummary::normalized(std::uint64_t cut_count) const {
  const double x = static_cast<double>(cut_count);
  switch (normalization) {
    case Normalization::none: return x;
    case Normalization::scale: return asymptotics::scale_LY(x, n);
    case Normalization::stable: return asymptotics::normalize_R(x, n, ell);
  }
  return x;
}

std::vector<double> SampleSummary::sorted_sample() const {
  std::vector<double> out;
  out.reserve(replicates);
  for (std::size_t m = 0; m < histogram.size(); ++m) out.insert(out.end(), histogram[m], normalized(m));
  return out;
}

std::vector<double> SampleSummary::empirical_pmf() const {
  std::vector<double> out(histogram.size());
  for (std::size_t m = 0; m < histogram.size(); ++m)
    out[m] = replicates ? static_cast<double>(histogram[m]) / static_cast<double>(replicates) : 0.0;
  return out;
}

void finalize(SampleSummary& s, std::span<const double> cf_grid, std::span<const double> cdf_grid) {
  s.cf_grid.assign(cf_grid.begin(), cf_grid.end());
  s.cdf_grid.assign(cdf_grid.begin(), cdf_grid.end());
  if (s.cdf_grid.empty()) s.cdf_grid = default_cdf_grid(s.normalization);
  s.moments = {};
  s.cdf.assign(s.cdf_grid.size(), 0.0);
  s.cf.assign(s.cf_grid.size(), 0.0);
  if (s.replicates == 0) return;

  const double total = static_cast<double>(s.replicates);
  std::array<CompensatedSum, 4> mom;
  std::vector<CompensatedSum> re(s.cf_grid.size()), im(s.cf_grid.size());
  for (std::size_t m = 0; m < s.histogram.size(); ++m) {
    if (s.histogram[m] == 0) continue;
    const double w = static_cast<double>(s.histogram[m]) / total;
    const double x = s.normalized(m);
    double p = 1;
    for (auto& acc : mom) acc.add(w * (p *= x));
    for (std::size_t j = 0; j < s.cf_grid.size(); ++j) {
      re[j].add(w * std::cos(s.cf_grid[j] * x));
      im[j].add(w * std::sin(s.cf_grid[j] * x));
    }
  }
  for (std::size_t k = 0; k < 4; ++k) s.moments[k] = mom[k].value();
  for (std::size_t j = 0; j < s.cf_grid.size(); ++j) s.cf[j] = {re[j].value(), im[j].value()};

  // Normalized values increase with the cut count, so one merge pass suffices.
  std::uint64_t below = 0;
  std::size_t m = 0;
  for (std::size_t g = 0; g < s.cdf_grid.size(); ++g) {
    while (m < s.histogram.size() && s.normalized(m) <= s.cdf_grid[g]) below += s.histogram[m++];
    s.cdf[g] = static_cast<double>(below) / total;
  }
}

SampleSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const unsigned workers =
      cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.workers;
  const auto start = std::chrono::steady_clock::now();
  constexpr std::uint64_t kChunk = 256;

  SampleSummary out;
  out.rule = cfg.rule;
  out.n = cfg.n;
  out.ell = cfg.ell;
  out.seed = cfg.seed;
  out.normalization = cfg.normalization.value_or(default_normalization(cfg.rule, cfg.n));
  out.histogram.assign(cfg.n, 0);
  if (cfg.keep_cuts) out.cuts.assign(cfg.replicates, 0);
  if (cfg.want_trace) out.traces.resize(cfg.replicates);

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> out_of_time{false};
  std::mutex merge;
  std::uint64_t done = 0;
  std::exception_ptr failure;

  auto work = [&] {
    std::vector<std::uint64_t> hist(cfg.n, 0);
    std::uint64_t mine = 0;
    cutter::StreamingCutter engine;
    try {
      while (true) {
        if (cfg.time_budget && std::chrono::steady_clock::now() - start > *cfg.time_budget) {
          out_of_time = true;
          break;
        }
        const std::uint64_t lo = next.fetch_add(kChunk);
        if (lo >= cfg.replicates) break;
        const std::uint64_t hi = std::min(cfg.replicates, lo + kChunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
          RandomStream rng = RandomStream::for_replicate(cfg.seed, i);
          std::uint64_t cuts;
          if (cfg.engine == Engine::forest) {
            const auto t = tree::grow_random(cfg.n, rng);
            const auto s = cutter::select_labels(cfg.rule, cfg.n, cfg.ell, rng);
            auto rec = cutter::isolate(t, s, rng, cfg.want_trace);
            cuts = rec.cuts;
            if (cfg.want_trace) out.traces[i] = std::move(rec.trace);
          } else {
            const auto s = cutter::select_labels(cfg.rule, cfg.n, cfg.ell, rng);
            cuts = engine.run(cfg.n, s, rng);
          }
          if (cuts + 1 < cfg.ell || cuts + 1 > cfg.n)
            throw std::logic_error("replicate " + std::to_string(i) + ": cut count out of range");
          ++hist[cuts];
          if (cfg.keep_cuts) out.cuts[i] = static_cast<std::uint32_t>(cuts);
        }
        mine += hi - lo;
      }
    } catch (...) {
      std::lock_guard lock(merge);
      if (!failure) failure = std::current_exception();
      next = cfg.replicates;
    }
    std::lock_guard lock(merge);
    for (std::size_t m = 0; m < hist.size(); ++m) out.histogram[m] += hist[m];
    done += mine;
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  out.replicates = done;
  finalize(out, cfg.cf_grid, cfg.cdf_grid);
  if (out_of_time && done < cfg.replicates) {
    out.partial = true;
    throw ExperimentBudgetExceeded("time budget exhausted after " + std::to_string(done) + " of " +
                                       std::to_string(cfg.replicates) + " replicates",
                                   std::move(out));
  }
  return out;
}

double ks_statistic(std::span<const double> sorted, const asymptotics::LimitTarget& target) {
  if (sorted.empty()) throw std::invalid_argument("KS statistic of an empty sample");
  if (target.kind != asymptotics::LimitTarget::Kind::beta)
    throw std::invalid_argument("KS statistic needs a beta target");
  const double m = static_cast<double>(sorted.size());
  double d = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = asymptotics::beta_cdf(target.ell, sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m});
  }
  return d;
}

double ks_statistic(const SampleSummary& s, const asymptotics::LimitTarget& target) {
  if (s.replicates == 0) throw std::invalid_argument("KS statistic of an empty sample");
  if (target.kind != asymptotics::LimitTarget::Kind::beta)
    throw std::invalid_argument("KS statistic needs a beta target");
  const double m = static_cast<double>(s.replicates);
  std::uint64_t below = 0;
  double d = 0;
  for (std::size_t k = 0; k < s.histogram.size(); ++k) {
    if (s.histogram[k] == 0) continue;
    const double f = asymptotics::beta_cdf(target.ell, s.normalized(k));
    const std::uint64_t upto = below + s.histogram[k];
    d = std::max({d, static_cast<double>(upto) / m - f, f - static_cast<double>(below) / m});
    below = upto;
  }
  return d;
}

std::vector<std::complex<double>> empirical_cf(std::span<const double> sample, std::span<const double> ts) {
  if (sample.empty()) throw std::invalid_argument("empirical CF of an empty sample");
  std::vector<std::complex<double>> out;
  out.reserve(ts.size());
  const double m = static_cast<double>(sample.size());
  for (double t : ts) {
    CompensatedSum re, im;
    for (double x : sample) {
      re.add(std::cos(t * x));
      im.add(std::sin(t * x));
    }
    out.emplace_back(re.value() / m, im.value() / m);
  }
  return out;
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probs,
                               double min_expected) {
  if (observed.size() > probs.size() &&
      std::any_of(observed.begin() + static_cast<std::ptrdiff_t>(probs.size()), observed.end(),
                  [](std::uint64_t c) { return c > 0; }))
    return {std::numeric_limits<double>::infinity(), 0, 0.0, 0};
  std::uint64_t total = 0;
  for (auto c : observed) total += c;
  if (total == 0) throw std::invalid_argument("chi-square test needs observations");

  struct Bin {
    double expected = 0;
    double observed = 0;
  };
  std::vector<Bin> bins;
  Bin open;
  for (std::size_t m = 0; m < probs.size(); ++m) {
    const double obs = m < observed.size() ? static_cast<double>(observed[m]) : 0.0;
    if (probs[m] <= 0) {
      if (obs > 0) return {std::numeric_limits<double>::infinity(), 0, 0.0, 0};
      continue;
    }
    open.expected += probs[m] * static_cast<double>(total);
    open.observed += obs;
    if (open.expected >= min_expected) {
      bins.push_back(open);
      open = {};
    }
  }
  if (open.expected > 0 || open.observed > 0) {
    if (bins.empty()) {
      bins.push_back(open);
    } else {
      bins.back().expected += open.expected;
      bins.back().observed += open.observed;
    }
  }
  ChiSquareResult res;
  res.bins = bins.size();
  for (const auto& b : bins) res.statistic += (b.observed - b.expected) * (b.observed - b.expected) / b.expected;
  res.df = static_cast<int>(bins.size()) - 1;
  res.p_value = res.df <= 0 ? 1.0 : boost::math::gamma_q(res.df / 2.0, res.statistic / 2.0);
  return res;
}

bool trend_ok(std::span<const double> d, double slack) {
  for (std::size_t i = 1; i < d.size(); ++i)
    if (!(d[i] <= slack * d[i - 1])) return false;
  return true;
}

bool LimitFitReport::all_decreasing() const {
  return std::all_of(series.begin(), series.end(), [](const Series& s) { return s.decreasing; });
}

const LimitFitReport::Series* LimitFitReport::find(std::string_view statistic) const {
  for (const auto& s : series)
    if (s.statistic == statistic) return &s;
  return nullptr;
}

namespace {

std::string cf_label(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "cf(%g)", t);
  return buf;
}

}  // namespace

LimitFitReport convergence_sweep(const SweepConfig& cfg) {
  if (cfg.n_grid.empty()) throw std::invalid_argument("empty n grid");
  for (std::size_t i = 1; i < cfg.n_grid.size(); ++i)
    if (cfg.n_grid[i] <= cfg.n_grid[i - 1]) throw std::invalid_argument("n grid must be strictly increasing");
  if (cfg.n_grid.front() < 3) throw std::invalid_argument("n grid must start at n >= 3");

  LimitFitReport rep;
  rep.rule = cfg.rule;
  rep.ell = cfg.ell;
  rep.target = asymptotics::LimitTarget::for_rule(cfg.rule, cfg.ell);
  rep.n_grid = cfg.n_grid;
  rep.replicates = cfg.replicates;
  rep.seed = cfg.seed;
  rep.slack = cfg.slack;
  const bool beta = rep.target.kind == asymptotics::LimitTarget::Kind::beta;

  auto series_for = [&](const std::string& name) -> LimitFitReport::Series& {
    for (auto& s : rep.series)
      if (s.statistic == name) return s;
    rep.series.push_back({name, {}, false});
    return rep.series.back();
  };
  auto wants = [&](Statistic s) { return std::find(cfg.stats.begin(), cfg.stats.end(), s) != cfg.stats.end(); };

  for (std::uint32_t n : cfg.n_grid) {
    ExperimentConfig ec;
    ec.rule = cfg.rule;
    ec.n = n;
    ec.ell = cfg.ell;
    ec.replicates = cfg.replicates;
    ec.seed = cfg.seed;
    ec.workers = cfg.workers;
    ec.engine = cfg.engine;
    ec.cf_grid = cfg.cf_points;
    const SampleSummary s = run_experiment(ec);

    if (wants(Statistic::ks) && beta) series_for("ks").distances.push_back(ks_statistic(s, rep.target));
    if (wants(Statistic::moments) && beta)
      for (unsigned k : cfg.moment_orders) {
        if (k < 1 || k > 4) throw std::invalid_argument("moment orders must be in 1..4");
        const double want = to_double(asymptotics::beta_moment(cfg.ell, k));
        series_for("moment-" + std::to_string(k)).distances.push_back(std::abs(s.moments[k - 1] - want) / want);
      }
    if (wants(Statistic::cf))
      for (std::size_t j = 0; j < cfg.cf_points.size(); ++j) {
        const double t = cfg.cf_points[j];
        const auto want = beta ? asymptotics::beta_cf(cfg.ell, t) : asymptotics::stable_cf(t);
        series_for(cf_label(t)).distances.push_back(std::abs(s.cf[j] - want));
      }
  }
  for (auto& s : rep.series) s.decreasing = trend_ok(s.distances, cfg.slack);
  return rep;
}

}  // namespace rrtcut::montecarlo
