#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "antifrag/types.hpp"

namespace antifrag {

// Agent CSV: header `date,open,volume[,market_cap]`, ISO dates, '.' decimals.
// The agent id is the file stem (case-sensitive). Rows may come in any order;
// the result is sorted by date. Throws DataError naming file, line and field.
AgentSeries load_agent_series(const std::filesystem::path& path, MarketKind kind);

// Same parser over an in-memory document; `source` is used in messages.
AgentSeries parse_agent_csv(std::istream& in, std::string agent_id, MarketKind kind,
                            const std::string& source);

// Writes the agent CSV form back out; numbers use the shortest text that
// round-trips, so a canonical file reloads and re-serializes unchanged.
void write_agent_csv(std::ostream& out, const AgentSeries& series);

// Loads every file, in parallel, returning series ordered by agent id.
// Duplicate ids are an error. The result does not depend on `paths` order.
std::vector<AgentSeries> load_agent_files(std::span<const std::filesystem::path> paths,
                                          MarketKind kind, unsigned workers = 1);

// All `*.csv` files directly inside `dir`, sorted by name.
std::vector<std::filesystem::path> list_csv_files(const std::filesystem::path& dir);

// Index CSV: header `date,level`; dates must already be strictly increasing.
IndexSeries load_index_series(const std::filesystem::path& path, std::string_view index_id);
IndexSeries parse_index_csv(std::istream& in, IndexId id, const std::string& source);

// Loads `<dir>/<ID>.csv` for each requested index.
std::map<IndexId, IndexSeries> load_index_directory(const std::filesystem::path& dir,
                                                    std::span<const IndexId> ids);

struct TopPerformerFile {
  std::vector<TopPerformerList> lists;  // ascending by year
  std::vector<std::string> warnings;
};

// JSON object `{"<year>": ["id", ...], ...}`. A repeated year unions its ids.
// Optional metadata keys: "source" (label string) and "range" ([first, last]
// years); a year outside `range` is kept but reported as a warning.
TopPerformerFile load_top_performers(const std::filesystem::path& path);
TopPerformerFile parse_top_performers(const std::string& text, const std::string& source);

// Observations inside the window, or nullopt when fewer than two remain.
std::optional<AgentSeries> slice_window(const AgentSeries& series, const AnalysisWindow& window);

}  // namespace antifrag
