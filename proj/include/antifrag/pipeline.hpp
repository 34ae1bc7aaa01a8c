#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "antifrag/analysis.hpp"
#include "antifrag/config.hpp"
#include "antifrag/ingestion.hpp"
#include "antifrag/measures.hpp"
#include "antifrag/performance.hpp"

namespace antifrag {

struct InputFile {
  std::string role;  // "agent", "index" or "top_performers"
  std::filesystem::path path;
};

struct LoadedData {
  std::vector<AgentSeries> agents;  // ascending agent_id
  std::map<IndexId, IndexSeries> indexes;
  std::optional<TopPerformerFile> top_performers;
  std::vector<InputFile> inputs;  // sorted by role, then file name
};

// Reads the files named by the config. `agent_files` overrides the listing
// of data_dir; any order gives the same result.
LoadedData load_inputs(const RunConfig& config, std::span<const std::filesystem::path> agent_files,
                       unsigned workers);
LoadedData load_inputs(const RunConfig& config, unsigned workers);

struct PanelRun {
  AnalysisWindow window;
  TimeScale scale = TimeScale::daily;
  std::size_t alive = 0;
  MeasureRun measures;
};

struct BinRow {
  std::string window;
  MeasureId measure = MeasureId::afp;
  TimeScale scale = TimeScale::daily;
  BinSummary bin;
};

struct DistributionRow {
  std::string window;
  MeasureId measure = MeasureId::afp;
  TimeScale scale = TimeScale::daily;
  std::string population;  // "all" or "top"
  Distribution distribution;
};

struct WindowSummary {
  AnalysisWindow window;
  std::size_t agents_with_data = 0;  // at least two daily observations
  std::map<TimeScale, std::size_t> alive;
};

struct PipelineResult {
  MarketKind market_kind = MarketKind::stock;
  std::vector<PanelRun> panels;  // window order, then scale
  std::vector<WindowSummary> windows;
  std::vector<PerformanceRecord> performance;  // window order, then agent_id
  std::vector<ScatterRow> scatter;
  std::vector<CorrelationRow> correlations;
  std::vector<BinRow> bins;
  std::vector<DistributionRow> distributions;
  std::optional<ComparisonStats> comparison;  // only with top-performer lists
  std::vector<std::string> log;

  // (window, measure, scale) cases in output order.
  std::vector<AntifragilityCase> cases(const RunConfig& config) const;
};

// All computation for a run. Throws DataError on an empty panel.
PipelineResult run_pipeline(const RunConfig& config, const LoadedData& data, unsigned workers);

}  // namespace antifrag
