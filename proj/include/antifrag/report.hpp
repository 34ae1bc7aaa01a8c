#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "antifrag/config.hpp"
#include "antifrag/pipeline.hpp"

namespace antifrag {

// Output CSVs share one layout rule: fixed column order, '\n' endings, reals
// as %.17g and missing values as empty fields.
void write_antifragility_csv(std::ostream& out, const PipelineResult& result,
                             const RunConfig& config);
void write_performance_csv(std::ostream& out, const PipelineResult& result);
void write_scatter_csv(std::ostream& out, const PipelineResult& result);
void write_correlations_csv(std::ostream& out, const PipelineResult& result);
void write_bins_csv(std::ostream& out, const PipelineResult& result);
void write_distributions_csv(std::ostream& out, const PipelineResult& result);
void write_comparison_json(std::ostream& out, const ComparisonStats& stats);
// Config, input digests and alive counts; no timestamps, worker count or
// output location, so it is identical for equivalent runs.
void write_manifest_json(std::ostream& out, const RunConfig& config, const LoadedData& data,
                         const PipelineResult& result);

std::string sha256_hex(const std::filesystem::path& path);

// Writes every output into `out_dir` and returns the paths written. On any
// failure the files written so far are removed and the error rethrown.
std::vector<std::filesystem::path> write_outputs(const RunConfig& config, const LoadedData& data,
                                                 const PipelineResult& result,
                                                 const std::filesystem::path& out_dir);

}  // namespace antifrag
