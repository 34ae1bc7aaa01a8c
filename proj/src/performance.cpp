#include "antifrag/performance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "antifrag/numeric.hpp"

namespace antifrag {

std::string_view to_string(PerfVariable v) {
  switch (v) {
    case PerfVariable::age: return "age";
    case PerfVariable::pct_dlt_pr: return "pct_dlt_pr";
    case PerfVariable::pct_dlt_mk: return "pct_dlt_mk";
    case PerfVariable::pct_dlt_vl: return "pct_dlt_vl";
    case PerfVariable::pct_pr_f_i: return "pct_pr_f_i";
    case PerfVariable::pct_mk_f_i: return "pct_mk_f_i";
    case PerfVariable::pct_vl_f_i: return "pct_vl_f_i";
    case PerfVariable::pr_mea: return "pr_mea";
    case PerfVariable::pr_std: return "pr_std";
    case PerfVariable::mk_mea: return "mk_mea";
    case PerfVariable::vl_mea: return "vl_mea";
  }
  return "?";
}

std::vector<PerfVariable> perf_variables_for(MarketKind kind) {
  std::vector<PerfVariable> out;
  for (PerfVariable v : kAllPerfVariables) {
    const bool cap_only = v == PerfVariable::pct_dlt_mk || v == PerfVariable::pct_mk_f_i ||
                          v == PerfVariable::mk_mea;
    if (!cap_only || kind == MarketKind::crypto) out.push_back(v);
  }
  return out;
}

std::optional<double> PerformanceRecord::value(PerfVariable v) const {
  switch (v) {
    case PerfVariable::age: return static_cast<double>(age_days);
    case PerfVariable::pct_dlt_pr: return pct_dlt_pr;
    case PerfVariable::pct_dlt_mk: return pct_dlt_mk;
    case PerfVariable::pct_dlt_vl: return pct_dlt_vl;
    case PerfVariable::pct_pr_f_i: return pct_pr_f_i;
    case PerfVariable::pct_mk_f_i: return pct_mk_f_i;
    case PerfVariable::pct_vl_f_i: return pct_vl_f_i;
    case PerfVariable::pr_mea: return pr_mea;
    case PerfVariable::pr_std: return pr_std;
    case PerfVariable::mk_mea: return mk_mea;
    case PerfVariable::vl_mea: return vl_mea;
  }
  return std::nullopt;
}

namespace {

struct ChannelStats {
  std::optional<double> mean, range_ratio, endpoint_ratio, stddev;
};

ChannelStats channel_stats(const std::vector<double>& xs) {
  ChannelStats st;
  if (xs.empty()) return st;
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  // Constant channels take the exact value so std is exactly zero.
  const double mean = *lo == *hi ? *lo : std::clamp(compensated_mean(xs), *lo, *hi);
  st.mean = mean;
  if (*lo == *hi) {
    st.stddev = 0.0;
  } else {
    CompensatedSum sq;
    for (double x : xs) sq.add((x - mean) * (x - mean));
    st.stddev = std::sqrt(sq.value() / static_cast<double>(xs.size()));
  }
  if (mean > 0.0) {
    st.range_ratio = (*hi - *lo) / mean;
    st.endpoint_ratio = (xs.back() - xs.front()) / mean;
  }
  return st;
}

}  // namespace

bool is_top_performer(std::string_view agent_id, const AnalysisWindow& window,
                      std::span<const TopPerformerList> top_lists) {
  const int year = window_year(window);
  return std::any_of(top_lists.begin(), top_lists.end(), [&](const TopPerformerList& list) {
    return list.year == year && list.agent_ids.count(std::string(agent_id)) > 0;
  });
}

PerformanceRecord compute_performance(const AgentSeries& series, const AnalysisWindow& window,
                                      Date full_history_start,
                                      std::span<const TopPerformerList> top_lists) {
  if (series.observations.size() < 2) {
    throw std::invalid_argument("compute_performance: agent '" + series.agent_id +
                                "' has fewer than 2 observations");
  }
  std::vector<double> price, volume, cap;
  for (const auto& o : series.observations) {
    price.push_back(o.open);
    volume.push_back(o.volume);
    if (o.market_cap) cap.push_back(*o.market_cap);
  }

  PerformanceRecord rec;
  rec.agent_id = series.agent_id;
  rec.window = window.label;
  rec.age_days = std::max<long>(0, (window.end_date - full_history_start).count());

  const auto pr = channel_stats(price);
  const auto vl = channel_stats(volume);
  rec.pct_dlt_pr = pr.range_ratio;
  rec.pct_pr_f_i = pr.endpoint_ratio;
  rec.pr_mea = pr.mean;
  rec.pr_std = pr.stddev;
  rec.pct_dlt_vl = vl.range_ratio;
  rec.pct_vl_f_i = vl.endpoint_ratio;
  rec.vl_mea = vl.mean;
  if (series.market_kind == MarketKind::crypto) {
    const auto mk = channel_stats(cap);
    rec.pct_dlt_mk = mk.range_ratio;
    rec.pct_mk_f_i = mk.endpoint_ratio;
    rec.mk_mea = mk.mean;
  }
  rec.is_top_performer = is_top_performer(series.agent_id, window, top_lists);
  return rec;
}

}  // namespace antifrag
