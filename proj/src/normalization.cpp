#include "antifrag/normalization.hpp"

#include <algorithm>
#include <ostream>

#include "antifrag/format.hpp"
#include "antifrag/numeric.hpp"
#include "antifrag/parallel.hpp"

namespace antifrag {

using namespace std::chrono;

Date period_start(Date d, TimeScale scale) {
  switch (scale) {
    case TimeScale::daily: return d;
    case TimeScale::weekly: {
      const unsigned iso_day = weekday{d}.iso_encoding();  // Monday = 1
      return d - days{iso_day - 1};
    }
    case TimeScale::monthly: {
      const year_month_day ymd{d};
      return sys_days{ymd.year() / ymd.month() / 1};
    }
  }
  return d;
}

std::optional<AgentSeries> resample(const AgentSeries& series, TimeScale scale,
                                    const AnalysisWindow& window) {
  AgentSeries out{series.agent_id, series.market_kind, {}};
  for (const auto& obs : series.observations) {
    if (!window.contains(obs.date)) continue;
    if (scale == TimeScale::daily) {
      out.observations.push_back(obs);
      continue;
    }
    const Date key = period_start(obs.date, scale);
    if (out.observations.empty() || out.observations.back().date != key) {
      RawObservation first = obs;
      first.date = key;
      out.observations.push_back(first);
    } else {
      out.observations.back().volume += obs.volume;
    }
  }
  if (out.observations.size() < 2) return std::nullopt;
  return out;
}

std::vector<IndexLevel> resample_levels(std::span<const IndexLevel> levels, TimeScale scale,
                                        const AnalysisWindow& window) {
  std::vector<IndexLevel> out;
  for (const auto& lv : levels) {
    if (!window.contains(lv.date)) continue;
    const Date key = period_start(lv.date, scale);
    if (out.empty() || out.back().date != key) out.push_back({key, lv.level});
  }
  return out;
}

std::string_view to_string(Channel channel) {
  switch (channel) {
    case Channel::price: return "price";
    case Channel::volume: return "volume";
    case Channel::market_cap: return "market_cap";
  }
  return "?";
}

std::size_t NormalizedPanel::slot_of(Date period) const {
  const auto it = std::lower_bound(period_axis.begin(), period_axis.end(), period);
  if (it == period_axis.end() || *it != period) {
    throw std::out_of_range("period " + to_iso_string(period) + " not on panel axis");
  }
  return static_cast<std::size_t>(it - period_axis.begin());
}

namespace {

NormalizedSeries normalize_channel(const AgentSeries& resampled, TimeScale scale,
                                   Channel channel) {
  NormalizedSeries s{resampled.agent_id, scale, channel, {}, {}};
  std::vector<double> raw;
  for (const auto& obs : resampled.observations) {
    std::optional<double> v;
    switch (channel) {
      case Channel::price: v = obs.open; break;
      case Channel::volume: v = obs.volume; break;
      case Channel::market_cap: v = obs.market_cap; break;
    }
    if (!v) continue;
    s.periods.push_back(obs.date);
    raw.push_back(*v);
  }
  if (!raw.empty()) s.values = minmax_normalize(raw);
  return s;
}

std::optional<PanelAgent> prepare_agent(const AgentSeries& series, const AnalysisWindow& window,
                                        TimeScale scale) {
  auto resampled = resample(series, scale, window);
  if (!resampled) return std::nullopt;
  PanelAgent agent;
  agent.agent_id = series.agent_id;
  for (const auto& obs : resampled->observations) {
    agent.periods.push_back(obs.date);
    agent.raw_open.push_back(obs.open);
  }
  agent.price = normalize_channel(*resampled, scale, Channel::price);
  agent.volume = normalize_channel(*resampled, scale, Channel::volume);
  if (series.market_kind == MarketKind::crypto) {
    auto cap = normalize_channel(*resampled, scale, Channel::market_cap);
    if (!cap.periods.empty()) agent.market_cap = std::move(cap);
  }
  return agent;
}

}  // namespace

NormalizedPanel build_panel(std::span<const AgentSeries> agents,
                            const std::map<IndexId, IndexSeries>& indexes,
                            const AnalysisWindow& window, TimeScale scale, unsigned workers) {
  NormalizedPanel panel;
  panel.scale = scale;
  panel.window = window;
  if (!agents.empty()) panel.market_kind = agents.front().market_kind;
  for (const auto& a : agents) {
    if (a.market_kind != panel.market_kind) {
      throw DataError("panel mixes stock and crypto agents ('" + a.agent_id + "')");
    }
  }

  std::vector<std::optional<PanelAgent>> prepared(agents.size());
  parallel_for(agents.size(), workers,
               [&](std::size_t i) { prepared[i] = prepare_agent(agents[i], window, scale); });
  for (auto& p : prepared) {
    if (p) panel.agents.push_back(std::move(*p));
  }
  if (panel.agents.empty()) {
    throw DataError("empty panel: no agent alive in window " + window.label + " at scale " +
                    std::to_string(code_of(scale)));
  }
  std::sort(panel.agents.begin(), panel.agents.end(),
            [](const auto& a, const auto& b) { return a.agent_id < b.agent_id; });
  for (std::size_t i = 1; i < panel.agents.size(); ++i) {
    if (panel.agents[i].agent_id == panel.agents[i - 1].agent_id) {
      throw DataError("duplicate agent id '" + panel.agents[i].agent_id + "'");
    }
  }

  for (const auto& a : panel.agents) {
    panel.period_axis.insert(panel.period_axis.end(), a.periods.begin(), a.periods.end());
  }
  std::sort(panel.period_axis.begin(), panel.period_axis.end());
  panel.period_axis.erase(std::unique(panel.period_axis.begin(), panel.period_axis.end()),
                          panel.period_axis.end());

  for (const auto& [id, series] : indexes) {
    const auto levels = resample_levels(series.values, scale, window);
    if (levels.empty()) continue;
    NormalizedIndex idx{id, {}, {}};
    std::vector<double> raw;
    for (const auto& lv : levels) {
      idx.periods.push_back(lv.date);
      raw.push_back(lv.level);
    }
    idx.values = minmax_normalize(raw);
    panel.indexes.emplace(id, std::move(idx));
  }
  return panel;
}

void write_panel_csv(std::ostream& out, const NormalizedPanel& panel, Channel channel) {
  out << "period";
  for (const auto& a : panel.agents) out << ',' << a.agent_id;
  out << '\n';
  std::vector<std::vector<std::optional<double>>> grid(
      panel.period_axis.size(), std::vector<std::optional<double>>(panel.agents.size()));
  for (std::size_t col = 0; col < panel.agents.size(); ++col) {
    const auto& a = panel.agents[col];
    const NormalizedSeries* s = channel == Channel::price    ? &a.price
                                : channel == Channel::volume ? &a.volume
                                : a.market_cap               ? &*a.market_cap
                                                             : nullptr;
    if (!s) continue;
    for (std::size_t k = 0; k < s->periods.size(); ++k) {
      grid[panel.slot_of(s->periods[k])][col] = s->values[k];
    }
  }
  for (std::size_t row = 0; row < panel.period_axis.size(); ++row) {
    out << to_iso_string(panel.period_axis[row]);
    for (const auto& cell : grid[row]) {
      out << ',';
      if (cell) out << format_real(*cell);
    }
    out << '\n';
  }
}

}  // namespace antifrag
