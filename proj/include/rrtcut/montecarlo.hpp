#pragma once

#include <chrono>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rrtcut/asymptotics.hpp"
#include "rrtcut/cutter.hpp"
#include "rrtcut/errors.hpp"
#include "rrtcut/pmf.hpp"

namespace rrtcut::montecarlo {

/// forest: grow the tree, then remove uniformly chosen edges one at a time.
/// streaming: the priority formulation; one pass over the labels, no forest.
enum class Engine { forest, streaming };

std::string_view to_string(Engine e);
Engine parse_engine(std::string_view text);

/// How cut counts are mapped before moments, CDF, CF and KS are taken.
///   none:   x
///   scale:  (log n / n) x                          (last / random rules)
///   stable: (x - (l-1) - n/log n - n loglog n/log^2 n) / (n/log^2 n)  (first)
enum class Normalization { none, scale, stable };

std::string_view to_string(Normalization z);

/// scale for last/random, stable for first; none when n < 3.
Normalization default_normalization(Rule rule, std::uint32_t n);

inline const std::vector<double> kDefaultCfGrid{-2, -1, -0.5, -0.25, 0.25, 0.5, 1, 2};

struct ExperimentConfig {
  Rule rule = Rule::first;
  std::uint32_t n = 1;
  std::uint32_t ell = 1;
  std::uint64_t replicates = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;  // 0 = hardware concurrency
  Engine engine = Engine::streaming;
  std::optional<Normalization> normalization;  // default_normalization when empty
  std::vector<double> cf_grid = kDefaultCfGrid;
  std::vector<double> cdf_grid;  // empty: 101 points on [0,1] (scale) or [-8,4] (stable)
  bool keep_cuts = false;        // cut count of every replicate
  bool want_trace = false;       // forest engine only
  std::optional<std::chrono::milliseconds> time_budget;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

struct SampleSummary {
  Rule rule = Rule::first;
  std::uint32_t n = 0;
  std::uint32_t ell = 0;
  std::uint64_t seed = 0;
  std::uint64_t replicates = 0;
  bool partial = false;  // stopped early by the time budget
  Normalization normalization = Normalization::none;

  std::vector<std::uint64_t> histogram;  // histogram[m]: replicates with m cuts
  std::vector<std::uint32_t> cuts;       // by replicate index, when kept
  std::vector<std::vector<cutter::TraceStep>> traces;

  std::array<double, 4> moments{};  // E Y^k of the normalized value, k = 1..4
  std::vector<double> cdf_grid;
  std::vector<double> cdf;
  std::vector<double> cf_grid;
  std::vector<std::complex<double>> cf;

  double normalized(std::uint64_t cut_count) const;
  /// Normalized values in ascending order (8 bytes per replicate).
  std::vector<double> sorted_sample() const;
  /// Empirical law of the cut count.
  std::vector<double> empirical_pmf() const;
};

/// Thrown when the time budget runs out; carries the replicates finished so far.
class ExperimentBudgetExceeded : public BudgetExceeded {
 public:
  ExperimentBudgetExceeded(const std::string& what, SampleSummary partial)
      : BudgetExceeded(what), partial_(std::move(partial)) {}
  const SampleSummary& partial() const noexcept { return partial_; }

 private:
  SampleSummary partial_;
};

/// Independent replicates; replicate i draws everything from
/// RandomStream::for_replicate(seed, i), so results do not depend on the
/// number of workers.
SampleSummary run_experiment(const ExperimentConfig& cfg);

/// Fills moments, CDF and CF of `s` from its histogram.
void finalize(SampleSummary& s, std::span<const double> cf_grid, std::span<const double> cdf_grid);

/// sup |F_emp - x^l| over a sorted sample. Throws std::invalid_argument for an
/// empty sample or a target without a closed-form CDF.
double ks_statistic(std::span<const double> sorted, const asymptotics::LimitTarget& target);
/// Same, computed from the histogram of a summary.
double ks_statistic(const SampleSummary& s, const asymptotics::LimitTarget& target);

/// (1/m) sum exp(i t x_j) for each t. Throws std::invalid_argument when empty.
std::vector<std::complex<double>> empirical_cf(std::span<const double> sample, std::span<const double> ts);

struct ChiSquareResult {
  double statistic = 0;
  int df = 0;
  double p_value = 1;
  std::size_t bins = 0;
};

/// Pearson goodness of fit of counts against probabilities; adjacent cells
/// are pooled until every expected count is at least `min_expected`.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probs,
                               double min_expected = 5.0);

enum class Statistic { ks, moments, cf };
std::string_view to_string(Statistic s);
Statistic parse_statistic(std::string_view text);

struct SweepConfig {
  Rule rule = Rule::last;
  std::uint32_t ell = 1;
  std::vector<std::uint32_t> n_grid;
  std::uint64_t replicates = 1000;
  std::uint64_t seed = 0;
  std::vector<Statistic> stats{Statistic::ks, Statistic::moments, Statistic::cf};
  std::vector<unsigned> moment_orders{1, 2};
  std::vector<double> cf_points{-1, -0.5, 0.5, 1};
  double slack = 1.1;
  unsigned workers = 1;
  Engine engine = Engine::streaming;
};

/// Distances of the normalized law from its limit along an n grid.
struct LimitFitReport {
  Rule rule = Rule::last;
  std::uint32_t ell = 1;
  asymptotics::LimitTarget target;
  std::vector<std::uint32_t> n_grid;
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
  double slack = 1.1;

  struct Series {
    std::string statistic;          // "ks", "moment-1", "cf(0.5)", ...
    std::vector<double> distances;  // one per grid point
    bool decreasing = false;        // d[i+1] <= slack * d[i] throughout
  };
  std::vector<Series> series;

  bool all_decreasing() const;
  const Series* find(std::string_view statistic) const;
};

/// Throws std::invalid_argument unless n_grid is strictly increasing.
LimitFitReport convergence_sweep(const SweepConfig& cfg);

/// d[i+1] <= slack * d[i] for all i.
bool trend_ok(std::span<const double> d, double slack);

}  // namespace rrtcut::montecarlo
