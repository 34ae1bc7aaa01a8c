#include "antifrag/types.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace antifrag {

namespace {

using namespace std::chrono;

bool parse_fixed_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

constexpr std::array<MeasureId, 4> kStockMeasures{MeasureId::afp, MeasureId::afv, MeasureId::afx,
                                                  MeasureId::af3m};
constexpr std::array<MeasureId, 4> kCryptoMeasures{MeasureId::afp, MeasureId::afv, MeasureId::afn,
                                                   MeasureId::afm};

}  // namespace

std::string_view to_string(MarketKind kind) {
  return kind == MarketKind::stock ? "stock" : "crypto";
}

std::optional<MarketKind> parse_market_kind(std::string_view text) {
  if (text == "stock" || text == "stocks") return MarketKind::stock;
  if (text == "crypto") return MarketKind::crypto;
  return std::nullopt;
}

std::optional<TimeScale> time_scale_from_code(int code) {
  if (code < 0 || code > 2) return std::nullopt;
  return static_cast<TimeScale>(code);
}

std::string_view to_string(IndexId id) {
  switch (id) {
    case IndexId::vix: return "VIX";
    case IndexId::nasdaq: return "NASDAQ";
    case IndexId::dji: return "DJI";
    case IndexId::spx: return "SPX";
  }
  return "?";
}

std::optional<IndexId> parse_index_id(std::string_view text) {
  for (IndexId id : {IndexId::vix, IndexId::nasdaq, IndexId::dji, IndexId::spx}) {
    if (text == to_string(id)) return id;
  }
  return std::nullopt;
}

int window_year(const AnalysisWindow& window) { return year_of(window.start_date); }

std::string_view to_string(MeasureId id) {
  switch (id) {
    case MeasureId::afp: return "afp";
    case MeasureId::afv: return "afv";
    case MeasureId::afx: return "afx";
    case MeasureId::af3m: return "af3m";
    case MeasureId::afn: return "afn";
    case MeasureId::afm: return "afm";
  }
  return "?";
}

std::optional<MeasureId> parse_measure_id(std::string_view text) {
  for (MeasureId id : {MeasureId::afp, MeasureId::afv, MeasureId::afx, MeasureId::af3m,
                       MeasureId::afn, MeasureId::afm}) {
    if (text == to_string(id)) return id;
  }
  return std::nullopt;
}

bool measure_valid_for(MeasureId id, MarketKind kind) {
  switch (id) {
    case MeasureId::afp:
    case MeasureId::afv: return true;
    case MeasureId::afx:
    case MeasureId::af3m: return kind == MarketKind::stock;
    case MeasureId::afn:
    case MeasureId::afm: return kind == MarketKind::crypto;
  }
  return false;
}

std::vector<MeasureId> measures_for(MarketKind kind) {
  const auto& src = kind == MarketKind::stock ? kStockMeasures : kCryptoMeasures;
  return {src.begin(), src.end()};
}

std::optional<Date> parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_fixed_int(text.substr(0, 4), y) || !parse_fixed_int(text.substr(5, 2), m) ||
      !parse_fixed_int(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd};
}

std::string to_iso_string(Date d) {
  const year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

int year_of(Date d) { return static_cast<int>(year_month_day{d}.year()); }

}  // namespace antifrag
