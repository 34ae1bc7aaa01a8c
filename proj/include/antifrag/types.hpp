#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace antifrag {

using Date = std::chrono::sys_days;

// Bad or inconsistent input data (files, rows, fields).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed value escaped its mathematical bounds.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class MarketKind { stock, crypto };

std::string_view to_string(MarketKind kind);
std::optional<MarketKind> parse_market_kind(std::string_view text);

enum class TimeScale : int { daily = 0, weekly = 1, monthly = 2 };

inline int code_of(TimeScale scale) { return static_cast<int>(scale); }
std::optional<TimeScale> time_scale_from_code(int code);

struct RawObservation {
  Date date;
  double open = 0.0;
  double volume = 0.0;
  std::optional<double> market_cap;
};

struct AgentSeries {
  std::string agent_id;
  MarketKind market_kind = MarketKind::stock;
  std::vector<RawObservation> observations;
};

enum class IndexId { vix, nasdaq, dji, spx };

std::string_view to_string(IndexId id);
std::optional<IndexId> parse_index_id(std::string_view text);

struct IndexLevel {
  Date date;
  double level = 0.0;
};

struct IndexSeries {
  IndexId index_id = IndexId::vix;
  std::vector<IndexLevel> values;
};

struct TopPerformerList {
  int year = 0;
  std::set<std::string> agent_ids;
  std::string source_label;
};

struct AnalysisWindow {
  Date start_date;
  Date end_date;
  std::string label;

  bool contains(Date d) const { return start_date <= d && d <= end_date; }
};

// Calendar year of the window start; used to pick the top-performer list.
int window_year(const AnalysisWindow& window);

// Perturbation measure ids, one antifragility measure each.
enum class MeasureId { afp, afv, afx, af3m, afn, afm };

std::string_view to_string(MeasureId id);
std::optional<MeasureId> parse_measure_id(std::string_view text);
bool measure_valid_for(MeasureId id, MarketKind kind);
// Canonical order: afp, afv, afx, af3m (stocks); afp, afv, afn, afm (crypto).
std::vector<MeasureId> measures_for(MarketKind kind);

// ISO-8601 calendar date helpers.
std::optional<Date> parse_iso_date(std::string_view text);
std::string to_iso_string(Date d);
int year_of(Date d);

}  // namespace antifrag
