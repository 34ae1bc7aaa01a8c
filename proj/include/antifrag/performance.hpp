#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "antifrag/types.hpp"

namespace antifrag {

// The eleven descriptive metrics, in reporting order.
enum class PerfVariable {
  age,
  pct_dlt_pr,
  pct_dlt_mk,
  pct_dlt_vl,
  pct_pr_f_i,
  pct_mk_f_i,
  pct_vl_f_i,
  pr_mea,
  pr_std,
  mk_mea,
  vl_mea,
};

inline constexpr std::array<PerfVariable, 11> kAllPerfVariables{
    PerfVariable::age,        PerfVariable::pct_dlt_pr, PerfVariable::pct_dlt_mk,
    PerfVariable::pct_dlt_vl, PerfVariable::pct_pr_f_i, PerfVariable::pct_mk_f_i,
    PerfVariable::pct_vl_f_i, PerfVariable::pr_mea,     PerfVariable::pr_std,
    PerfVariable::mk_mea,     PerfVariable::vl_mea};

std::string_view to_string(PerfVariable v);
// Variables reported for a market kind (the mk_* ones are crypto only).
std::vector<PerfVariable> perf_variables_for(MarketKind kind);

// Missing values (zero-mean channels, absent market cap) are nullopt.
struct PerformanceRecord {
  std::string agent_id;
  std::string window;
  long age_days = 0;
  std::optional<double> pct_dlt_pr, pct_dlt_mk, pct_dlt_vl;
  std::optional<double> pct_pr_f_i, pct_mk_f_i, pct_vl_f_i;
  std::optional<double> pr_mea, pr_std, mk_mea, vl_mea;
  bool is_top_performer = false;

  std::optional<double> value(PerfVariable v) const;
};

// `series` is the raw daily series already cut to `window`; ratios use raw
// values. Age runs from `full_history_start` to the window end.
PerformanceRecord compute_performance(const AgentSeries& series, const AnalysisWindow& window,
                                      Date full_history_start,
                                      std::span<const TopPerformerList> top_lists);

// Whether `agent_id` is listed for the window's year (exact match).
bool is_top_performer(std::string_view agent_id, const AnalysisWindow& window,
                      std::span<const TopPerformerList> top_lists);

}  // namespace antifrag
