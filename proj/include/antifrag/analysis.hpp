#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "antifrag/measures.hpp"
#include "antifrag/performance.hpp"
#include "antifrag/types.hpp"

namespace antifrag {

// Pearson r, or nullopt when fewer than two pairs remain or either side has
// zero variance.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);
// Pairs with a missing member are dropped first.
std::optional<double> pearson(std::span<const std::optional<double>> xs,
                              std::span<const std::optional<double>> ys);

struct BinInput {
  std::string agent_id;
  double bin_by = 0.0;
  double stat_of = 0.0;
};

struct BinSummary {
  int bin_index = 0;  // 0 = low ... 4 = high
  std::string bin_by;
  std::string stat_of;
  std::size_t count = 0;
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

inline constexpr std::size_t kDefaultBinCount = 5;

// Equal-count bins: sort by bin_by (ties by agent_id), cut into n_bins
// contiguous groups whose sizes differ by at most one, extra members going
// to the lowest bins; summarize stat_of per bin. Throws DataError when
// fewer than n_bins inputs are given.
std::vector<BinSummary> quantile_bin_summary(std::vector<BinInput> inputs,
                                             const std::string& bin_by,
                                             const std::string& stat_of,
                                             std::size_t n_bins = kDefaultBinCount);

struct Distribution {
  std::string variable;
  std::vector<double> bin_edges;  // n + 1, strictly increasing
  std::vector<double> densities;  // n, integrate to 1
  std::size_t sample_count = 0;
};

inline constexpr std::size_t kDefaultHistogramBins = 50;

// Equal-width histogram over [min, max] normalized to unit area. A single
// point span is widened by 1e-9 on both sides.
Distribution distribution(std::span<const double> values,
                          std::size_t n_bins = kDefaultHistogramBins,
                          std::string variable = "A");

// Histogram on fixed edges, for comparing a subset against its population.
// Values outside the edges are not counted.
Distribution distribution_on_edges(std::span<const double> values,
                                   std::span<const double> edges, std::string variable = "A");

// One (window, measure, scale) triple and its per-agent results.
struct AntifragilityCase {
  AnalysisWindow window;
  MeasureId measure = MeasureId::afp;
  TimeScale scale = TimeScale::daily;
  std::span<const AntifragilityResult> results;  // ascending agent_id
};

struct ComparisonCase {
  std::string window;
  MeasureId measure = MeasureId::afp;
  TimeScale scale = TimeScale::daily;
  std::size_t n_all = 0;
  std::size_t n_top = 0;
  double mean_all = 0.0;
  double mean_top = 0.0;
};

struct ComparisonStats {
  std::size_t cases_total = 0;
  std::size_t cases_top_greater = 0;
  std::optional<double> fraction_top_greater;  // nullopt without cases
  double sum_diff_when_greater = 0.0;
  double sum_diff_otherwise = 0.0;
  std::optional<double> ratio;  // nullopt when sum_diff_otherwise == 0
  std::vector<ComparisonCase> cases;
  std::vector<std::string> skipped;  // cases with no live top performer
};

// Compares the mean A of the window-year's top performers with the mean A
// of every agent, case by case.
ComparisonStats top_comparison(std::span<const AntifragilityCase> cases,
                               std::span<const TopPerformerList> top_lists);

struct ScatterRow {
  std::string window;
  MeasureId measure = MeasureId::afp;
  TimeScale scale = TimeScale::daily;
  std::string agent_id;
  double a = 0.0;
  PerfVariable variable = PerfVariable::age;
  double value = 0.0;
};

// A against every defined performance variable, ordered by case, agent,
// variable. `performance` holds the window's records keyed by agent_id.
std::vector<ScatterRow> scatter_export(const AntifragilityCase& c,
                                       const std::map<std::string, PerformanceRecord>& performance,
                                       std::span<const PerfVariable> variables);

struct CorrelationRow {
  std::string window;
  MeasureId measure = MeasureId::afp;
  TimeScale scale = TimeScale::daily;
  PerfVariable variable = PerfVariable::age;
  std::size_t n = 0;
  std::optional<double> r;
};

std::vector<CorrelationRow> correlations(
    const AntifragilityCase& c, const std::map<std::string, PerformanceRecord>& performance,
    std::span<const PerfVariable> variables);

}  // namespace antifrag
