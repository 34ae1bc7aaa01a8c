#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "antifrag/types.hpp"

namespace antifrag {

// Everything a run needs. Scales are ascending and measures in canonical
// order after parsing, whatever order the file lists them in.
struct RunConfig {
  MarketKind market_kind = MarketKind::stock;
  std::filesystem::path data_dir;
  std::optional<std::filesystem::path> index_dir;
  std::optional<std::filesystem::path> top_performers_path;
  std::vector<AnalysisWindow> windows;
  std::vector<TimeScale> scales{TimeScale::daily, TimeScale::weekly, TimeScale::monthly};
  std::vector<MeasureId> measures;
  std::filesystem::path output_dir = "output";
  std::size_t n_hist_bins = 50;
  unsigned worker_count = 0;

  // Values as written in the file (after overrides), for the run manifest.
  std::map<std::string, std::string> raw;
};

struct Diagnostic {
  enum class Severity { error, note };
  Severity severity = Severity::error;
  std::string message;
};

struct ConfigResult {
  RunConfig config;
  std::vector<Diagnostic> diagnostics;

  std::size_t error_count() const;
  bool ok() const { return error_count() == 0; }
};

// Flat `key = value` document; '#' starts a comment. Relative paths resolve
// against `base_dir`. Entries in `overrides` replace or add keys. Every
// problem is reported; nothing on disk beyond directory existence is read.
//
// Keys: market_kind, data_dir, index_dir, top_performers, windows, scales,
// measures, output_dir, hist_bins, workers. `windows` is a comma list of
// `YYYY`, `YYYY..YYYY` or `label:YYYY-MM-DD:YYYY-MM-DD` items.
ConfigResult parse_config(std::string_view text, const std::filesystem::path& base_dir,
                          const std::map<std::string, std::string>& overrides = {});

ConfigResult load_config(const std::filesystem::path& path,
                         const std::map<std::string, std::string>& overrides = {});

// Indexes a configuration's measures require.
std::vector<IndexId> required_indexes(const RunConfig& config);

}  // namespace antifrag
