#pragma once

#include <filesystem>
#include <map>
#include <vector>

#include "antifrag/types.hpp"

namespace antifrag::fixture {

// Three agents (AAA, BBB, CCC) with five daily observations each in early
// 2014. CCC never changes price and trades on 2014-02-13 instead of
// 2014-02-12, so the union axis has six days. Crypto agents carry a market
// cap; stock agents do not.
std::vector<AgentSeries> agents(MarketKind kind);

// VIX, NASDAQ, DJI and SPX on the five dates AAA trades.
std::map<IndexId, IndexSeries> indexes();

// {2014: [AAA]}
std::vector<TopPerformerList> top_performers();

AnalysisWindow window_2014();

// Writes `<dir>/stock/` and `<dir>/crypto/`, each with data/, a
// top_performers.json and a ready-to-run run.cfg (stock also gets indexes/).
void write(const std::filesystem::path& dir);

}  // namespace antifrag::fixture
