#include "antifrag/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "antifrag/numeric.hpp"

namespace antifrag {

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("pearson: length mismatch");
  if (xs.size() < 2) return std::nullopt;
  const double mx = compensated_mean(xs);
  const double my = compensated_mean(ys);
  CompensatedSum sxx, syy, sxy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx.add(dx * dx);
    syy.add(dy * dy);
    sxy.add(dx * dy);
  }
  if (!(sxx.value() > 0.0) || !(syy.value() > 0.0)) return std::nullopt;
  const double r = sxy.value() / (std::sqrt(sxx.value()) * std::sqrt(syy.value()));
  return std::clamp(r, -1.0, 1.0);
}

std::optional<double> pearson(std::span<const std::optional<double>> xs,
                              std::span<const std::optional<double>> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("pearson: length mismatch");
  std::vector<double> fx, fy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] && ys[i]) {
      fx.push_back(*xs[i]);
      fy.push_back(*ys[i]);
    }
  }
  return pearson(fx, fy);
}

std::vector<BinSummary> quantile_bin_summary(std::vector<BinInput> inputs,
                                             const std::string& bin_by,
                                             const std::string& stat_of, std::size_t n_bins) {
  if (n_bins == 0) throw std::invalid_argument("quantile_bin_summary: zero bins");
  if (inputs.size() < n_bins) {
    throw DataError("quantile bins of " + stat_of + " by " + bin_by + ": need at least " +
                    std::to_string(n_bins) + " agents, have " + std::to_string(inputs.size()));
  }
  std::sort(inputs.begin(), inputs.end(), [](const BinInput& a, const BinInput& b) {
    if (a.bin_by != b.bin_by) return a.bin_by < b.bin_by;
    return a.agent_id < b.agent_id;
  });

  const std::size_t base = inputs.size() / n_bins;
  const std::size_t extra = inputs.size() % n_bins;
  std::vector<BinSummary> bins;
  std::size_t begin = 0;
  for (std::size_t b = 0; b < n_bins; ++b) {
    const std::size_t size = base + (b < extra ? 1 : 0);
    BinSummary s;
    s.bin_index = static_cast<int>(b);
    s.bin_by = bin_by;
    s.stat_of = stat_of;
    s.count = size;
    std::vector<double> stat;
    for (std::size_t i = begin; i < begin + size; ++i) stat.push_back(inputs[i].stat_of);
    const auto [lo, hi] = std::minmax_element(stat.begin(), stat.end());
    s.min = *lo;
    s.max = *hi;
    s.mean = std::clamp(compensated_mean(stat), *lo, *hi);
    bins.push_back(std::move(s));
    begin += size;
  }
  return bins;
}

Distribution distribution(std::span<const double> values, std::size_t n_bins,
                          std::string variable) {
  if (values.empty()) throw std::invalid_argument("distribution: no values");
  if (n_bins == 0) throw std::invalid_argument("distribution: zero bins");
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it;
  double hi = *hi_it;
  // Degenerate spans widen by 1e-9 each side (relative beyond magnitude 1,
  // so the edges stay representable and distinct).
  const double pad = 1e-9 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
  if (hi - lo < 2.0 * pad) {
    const double mid = lo + (hi - lo) / 2.0;
    lo = mid - pad;
    hi = mid + pad;
  }
  std::vector<double> edges(n_bins + 1);
  const double width = (hi - lo) / static_cast<double>(n_bins);
  for (std::size_t j = 0; j < n_bins; ++j) edges[j] = lo + width * static_cast<double>(j);
  edges[n_bins] = hi;
  return distribution_on_edges(values, edges, std::move(variable));
}

Distribution distribution_on_edges(std::span<const double> values,
                                   std::span<const double> edges, std::string variable) {
  if (edges.size() < 2) throw std::invalid_argument("distribution: need at least two edges");
  const std::size_t n_bins = edges.size() - 1;
  std::vector<std::size_t> counts(n_bins, 0);
  std::size_t used = 0;
  for (double v : values) {
    if (v < edges.front() || v > edges.back()) continue;
    // Last bin is closed on the right.
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    std::size_t j = static_cast<std::size_t>(it - edges.begin());
    j = j == 0 ? 0 : std::min(j - 1, n_bins - 1);
    ++counts[j];
    ++used;
  }
  Distribution d;
  d.variable = std::move(variable);
  d.bin_edges.assign(edges.begin(), edges.end());
  d.densities.assign(n_bins, 0.0);
  d.sample_count = used;
  if (used > 0) {
    for (std::size_t j = 0; j < n_bins; ++j) {
      const double w = edges[j + 1] - edges[j];
      d.densities[j] = static_cast<double>(counts[j]) / (static_cast<double>(used) * w);
    }
  }
  return d;
}

ComparisonStats top_comparison(std::span<const AntifragilityCase> cases,
                               std::span<const TopPerformerList> top_lists) {
  ComparisonStats stats;
  CompensatedSum greater, otherwise;
  for (const auto& c : cases) {
    CompensatedSum all_sum, top_sum;
    std::size_t n_top = 0;
    for (const auto& r : c.results) {
      all_sum.add(r.global);
      if (is_top_performer(r.agent_id, c.window, top_lists)) {
        top_sum.add(r.global);
        ++n_top;
      }
    }
    const std::string label = c.window.label + "/" + std::string(to_string(c.measure)) +
                              std::to_string(code_of(c.scale));
    if (n_top == 0 || c.results.empty()) {
      stats.skipped.push_back(label + ": no top performer alive");
      continue;
    }
    ComparisonCase cc{c.window.label, c.measure, c.scale, c.results.size(), n_top,
                      all_sum.value() / static_cast<double>(c.results.size()),
                      top_sum.value() / static_cast<double>(n_top)};
    ++stats.cases_total;
    const double diff = std::fabs(cc.mean_top - cc.mean_all);
    if (cc.mean_top > cc.mean_all) {
      ++stats.cases_top_greater;
      greater.add(diff);
    } else {
      otherwise.add(diff);
    }
    stats.cases.push_back(std::move(cc));
  }
  stats.sum_diff_when_greater = greater.value();
  stats.sum_diff_otherwise = otherwise.value();
  if (stats.cases_total > 0) {
    stats.fraction_top_greater =
        static_cast<double>(stats.cases_top_greater) / static_cast<double>(stats.cases_total);
  }
  if (stats.sum_diff_otherwise > 0.0) {
    stats.ratio = stats.sum_diff_when_greater / stats.sum_diff_otherwise;
  }
  return stats;
}

std::vector<ScatterRow> scatter_export(const AntifragilityCase& c,
                                       const std::map<std::string, PerformanceRecord>& performance,
                                       std::span<const PerfVariable> variables) {
  std::vector<ScatterRow> rows;
  for (const auto& r : c.results) {
    const auto it = performance.find(r.agent_id);
    if (it == performance.end()) continue;
    for (PerfVariable v : variables) {
      const auto value = it->second.value(v);
      if (!value) continue;
      rows.push_back({c.window.label, c.measure, c.scale, r.agent_id, r.global, v, *value});
    }
  }
  return rows;
}

std::vector<CorrelationRow> correlations(
    const AntifragilityCase& c, const std::map<std::string, PerformanceRecord>& performance,
    std::span<const PerfVariable> variables) {
  std::vector<CorrelationRow> rows;
  for (PerfVariable v : variables) {
    std::vector<double> a, p;
    for (const auto& r : c.results) {
      const auto it = performance.find(r.agent_id);
      if (it == performance.end()) continue;
      const auto value = it->second.value(v);
      if (!value) continue;
      a.push_back(r.global);
      p.push_back(*value);
    }
    rows.push_back({c.window.label, c.measure, c.scale, v, a.size(), pearson(a, p)});
  }
  return rows;
}

}  // namespace antifrag
