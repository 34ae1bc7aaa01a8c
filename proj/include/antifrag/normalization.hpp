#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "antifrag/types.hpp"

namespace antifrag {

// Key of the resampling bucket containing `d`: the day itself, the Monday of
// its ISO week, or the first day of its month.
Date period_start(Date d, TimeScale scale);

// Buckets the in-window observations by period. Each output observation is
// dated at its period start; open and market_cap come from the first
// observation of the period, volume is summed. Nullopt when fewer than two
// periods result.
std::optional<AgentSeries> resample(const AgentSeries& series, TimeScale scale,
                                    const AnalysisWindow& window);

// Index analogue of resample: first level of each period.
std::vector<IndexLevel> resample_levels(std::span<const IndexLevel> levels, TimeScale scale,
                                        const AnalysisWindow& window);

enum class Channel { price, volume, market_cap };
std::string_view to_string(Channel channel);

struct NormalizedSeries {
  std::string agent_id;
  TimeScale scale = TimeScale::daily;
  Channel channel = Channel::price;
  std::vector<Date> periods;   // strictly increasing
  std::vector<double> values;  // each in [0, 1]
};

struct PanelAgent {
  std::string agent_id;
  std::vector<Date> periods;
  std::vector<double> raw_open;  // resampled, not normalized
  NormalizedSeries price;
  NormalizedSeries volume;
  // Crypto agents with at least one cap value.
  std::optional<NormalizedSeries> market_cap;
};

struct NormalizedIndex {
  IndexId index_id = IndexId::vix;
  std::vector<Date> periods;
  std::vector<double> values;
};

struct NormalizedPanel {
  TimeScale scale = TimeScale::daily;
  AnalysisWindow window;
  MarketKind market_kind = MarketKind::stock;
  std::vector<Date> period_axis;   // sorted union of agent periods
  std::vector<PanelAgent> agents;  // alive agents, ascending agent_id
  std::map<IndexId, NormalizedIndex> indexes;

  // Position of `period` on the axis; the period must be present.
  std::size_t slot_of(Date period) const;
};

// Resamples and normalizes every agent (per agent, per channel, over the
// window) and every index. Agents with fewer than two periods at this scale
// are left out. Throws DataError("empty panel") when none survive.
NormalizedPanel build_panel(std::span<const AgentSeries> agents,
                            const std::map<IndexId, IndexSeries>& indexes,
                            const AnalysisWindow& window, TimeScale scale,
                            unsigned workers = 1);

// Debug export: `period,<agent ids...>` with empty cells where absent.
void write_panel_csv(std::ostream& out, const NormalizedPanel& panel, Channel channel);

}  // namespace antifrag
