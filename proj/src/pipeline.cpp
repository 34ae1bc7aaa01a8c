#include "antifrag/pipeline.hpp"

#include <algorithm>

#include "antifrag/normalization.hpp"
#include "antifrag/parallel.hpp"

namespace antifrag {

namespace fs = std::filesystem;

LoadedData load_inputs(const RunConfig& config, std::span<const fs::path> agent_files,
                       unsigned workers) {
  LoadedData data;
  data.agents = load_agent_files(agent_files, config.market_kind, workers);
  if (data.agents.empty()) throw DataError(config.data_dir.string() + ": no agent CSV files");
  for (const auto& p : agent_files) data.inputs.push_back({"agent", p});

  const auto ids = required_indexes(config);
  if (!ids.empty()) {
    data.indexes = load_index_directory(*config.index_dir, ids);
    for (IndexId id : ids) {
      data.inputs.push_back({"index", *config.index_dir / (std::string(to_string(id)) + ".csv")});
    }
  }
  if (config.top_performers_path) {
    data.top_performers = load_top_performers(*config.top_performers_path);
    data.inputs.push_back({"top_performers", *config.top_performers_path});
  }
  std::sort(data.inputs.begin(), data.inputs.end(), [](const InputFile& a, const InputFile& b) {
    if (a.role != b.role) return a.role < b.role;
    return a.path.filename() < b.path.filename();
  });
  return data;
}

LoadedData load_inputs(const RunConfig& config, unsigned workers) {
  const auto files = list_csv_files(config.data_dir);
  return load_inputs(config, files, workers);
}

std::vector<AntifragilityCase> PipelineResult::cases(const RunConfig& config) const {
  std::vector<AntifragilityCase> out;
  for (const auto& window : config.windows) {
    for (MeasureId m : config.measures) {
      for (TimeScale s : config.scales) {
        const auto panel = std::find_if(panels.begin(), panels.end(), [&](const PanelRun& p) {
          return p.window.label == window.label && p.scale == s;
        });
        if (panel == panels.end()) continue;
        const auto& results = panel->measures.results;
        const auto first = std::find_if(results.begin(), results.end(),
                                        [&](const auto& r) { return r.measure == m; });
        const auto last = std::find_if(first, results.end(),
                                       [&](const auto& r) { return r.measure != m; });
        out.push_back({window, m, s,
                       std::span<const AntifragilityResult>(
                           results.data() + (first - results.begin()),
                           static_cast<std::size_t>(last - first))});
      }
    }
  }
  return out;
}

namespace {

struct CaseOutputs {
  std::vector<ScatterRow> scatter;
  std::vector<CorrelationRow> correlations;
  std::vector<BinRow> bins;
  std::vector<DistributionRow> distributions;
  std::vector<std::string> log;
};

CaseOutputs analyse_case(const AntifragilityCase& c,
                         const std::map<std::string, PerformanceRecord>& performance,
                         std::span<const PerfVariable> variables, std::size_t hist_bins) {
  CaseOutputs out;
  const std::string tag = c.window.label + "/" + std::string(to_string(c.measure)) +
                          std::to_string(code_of(c.scale));
  out.scatter = scatter_export(c, performance, variables);
  out.correlations = correlations(c, performance, variables);

  std::string skipped_bins;
  for (PerfVariable v : variables) {
    std::vector<BinInput> by_a, by_perf;
    for (const auto& r : c.results) {
      const auto it = performance.find(r.agent_id);
      if (it == performance.end()) continue;
      const auto value = it->second.value(v);
      if (!value) continue;
      by_a.push_back({r.agent_id, r.global, *value});
      by_perf.push_back({r.agent_id, *value, r.global});
    }
    if (by_a.size() < kDefaultBinCount) {
      if (!skipped_bins.empty()) skipped_bins += ", ";
      skipped_bins += std::string(to_string(v)) + " (" + std::to_string(by_a.size()) + ")";
      continue;
    }
    for (auto& b : quantile_bin_summary(std::move(by_a), "A", std::string(to_string(v)))) {
      out.bins.push_back({c.window.label, c.measure, c.scale, std::move(b)});
    }
    for (auto& b : quantile_bin_summary(std::move(by_perf), std::string(to_string(v)), "A")) {
      out.bins.push_back({c.window.label, c.measure, c.scale, std::move(b)});
    }
  }

  if (!skipped_bins.empty()) {
    out.log.push_back(tag + ": too few agents to bin " + skipped_bins);
  }

  if (!c.results.empty()) {
    std::vector<double> all, top;
    for (const auto& r : c.results) {
      all.push_back(r.global);
      const auto it = performance.find(r.agent_id);
      if (it != performance.end() && it->second.is_top_performer) top.push_back(r.global);
    }
    auto population = distribution(all, hist_bins);
    if (!top.empty()) {
      out.distributions.push_back({c.window.label, c.measure, c.scale, "top",
                                   distribution_on_edges(top, population.bin_edges)});
    }
    out.distributions.insert(out.distributions.begin(),
                             {c.window.label, c.measure, c.scale, "all", std::move(population)});
  }
  return out;
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& config, const LoadedData& data, unsigned workers) {
  PipelineResult result;
  result.market_kind = config.market_kind;
  const std::vector<TopPerformerList> no_lists;
  const auto& top_lists = data.top_performers ? data.top_performers->lists : no_lists;
  if (data.top_performers) {
    for (const auto& w : data.top_performers->warnings) result.log.push_back("warning: " + w);
  }

  std::map<std::string, std::map<std::string, PerformanceRecord>> perf_by_window;
  for (const auto& window : config.windows) {
    std::vector<std::optional<AgentSeries>> sliced(data.agents.size());
    parallel_for(data.agents.size(), workers,
                 [&](std::size_t i) { sliced[i] = slice_window(data.agents[i], window); });
    std::vector<AgentSeries> alive;
    std::vector<Date> first_seen;
    for (std::size_t i = 0; i < sliced.size(); ++i) {
      if (!sliced[i]) continue;
      alive.push_back(std::move(*sliced[i]));
      first_seen.push_back(data.agents[i].observations.front().date);
    }

    WindowSummary summary{window, alive.size(), {}};

    std::vector<PerformanceRecord> records(alive.size());
    parallel_for(alive.size(), workers, [&](std::size_t i) {
      records[i] = compute_performance(alive[i], window, first_seen[i], top_lists);
    });
    auto& perf_map = perf_by_window[window.label];
    for (auto& r : records) {
      perf_map.emplace(r.agent_id, r);
      result.performance.push_back(std::move(r));
    }

    for (TimeScale scale : config.scales) {
      auto panel = build_panel(alive, data.indexes, window, scale, workers);
      PanelRun run{window, scale, panel.agents.size(),
                   compute_measures(panel, config.measures, workers)};
      for (const auto& e : run.measures.exclusions) result.log.push_back(e);
      summary.alive[scale] = run.alive;
      result.panels.push_back(std::move(run));
    }
    result.windows.push_back(std::move(summary));
  }

  const auto cases = result.cases(config);
  const auto variables = perf_variables_for(config.market_kind);
  std::vector<CaseOutputs> per_case(cases.size());
  parallel_for(cases.size(), workers, [&](std::size_t i) {
    per_case[i] = analyse_case(cases[i], perf_by_window.at(cases[i].window.label), variables,
                               config.n_hist_bins);
  });
  for (auto& c : per_case) {
    std::move(c.scatter.begin(), c.scatter.end(), std::back_inserter(result.scatter));
    std::move(c.correlations.begin(), c.correlations.end(),
              std::back_inserter(result.correlations));
    std::move(c.bins.begin(), c.bins.end(), std::back_inserter(result.bins));
    std::move(c.distributions.begin(), c.distributions.end(),
              std::back_inserter(result.distributions));
    std::move(c.log.begin(), c.log.end(), std::back_inserter(result.log));
  }

  if (data.top_performers) {
    result.comparison = top_comparison(cases, top_lists);
    for (const auto& s : result.comparison->skipped) result.log.push_back(s);
  }
  return result;
}

}  // namespace antifrag
