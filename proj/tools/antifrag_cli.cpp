// antifrag: batch antifragility analytics for stock and crypto panels.
//
//   antifrag run --config run.cfg [--workers N] [--out DIR] [--set key=value]...
//   antifrag validate --config run.cfg
//   antifrag fixture --out DIR
//   antifrag panel --config run.cfg --window 2014 --scale 1 [--channel price] [--out FILE]

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "antifrag/config.hpp"
#include "antifrag/fixture.hpp"
#include "antifrag/ingestion.hpp"
#include "antifrag/normalization.hpp"
#include "antifrag/pipeline.hpp"
#include "antifrag/report.hpp"

namespace fs = std::filesystem;
using namespace antifrag;

namespace {

std::map<std::string, std::string> parse_sets(const std::vector<std::string>& sets) {
  std::map<std::string, std::string> out;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--set", "expected key=value: " + s);
    out[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return out;
}

void print_diagnostics(const ConfigResult& r, std::ostream& os) {
  for (const auto& d : r.diagnostics) {
    os << (d.severity == Diagnostic::Severity::error ? "error: " : "note: ") << d.message << '\n';
  }
}

int cmd_validate(const fs::path& config_path) {
  const auto r = load_config(config_path);
  print_diagnostics(r, std::cout);
  const auto n = r.error_count();
  std::cout << n << (n == 1 ? " error" : " errors") << '\n';
  return n == 0 ? 0 : 1;
}

int cmd_run(const fs::path& config_path, const std::optional<unsigned>& workers,
            const std::optional<fs::path>& out, const std::vector<std::string>& sets) {
  auto r = load_config(config_path, parse_sets(sets));
  if (!r.ok()) {
    print_diagnostics(r, std::cerr);
    for (const auto& d : r.diagnostics) {
      if (d.severity == Diagnostic::Severity::error) {
        std::cerr << "antifrag: invalid config: " << d.message << '\n';
        break;
      }
    }
    return 1;
  }
  auto& cfg = r.config;
  if (workers) cfg.worker_count = *workers;
  if (out) cfg.output_dir = *out;

  try {
    const auto data = load_inputs(cfg, cfg.worker_count);
    const auto result = run_pipeline(cfg, data, cfg.worker_count);
    for (const auto& line : result.log) std::cerr << "note: " << line << '\n';
    const auto written = write_outputs(cfg, data, result, cfg.output_dir);
    for (const auto& p : written) std::cout << "wrote " << p.string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "antifrag: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int cmd_panel(const fs::path& config_path, const std::string& window_label, int scale_code,
              const std::string& channel_name, const std::optional<fs::path>& out) {
  const auto r = load_config(config_path);
  if (!r.ok()) {
    print_diagnostics(r, std::cerr);
    return 1;
  }
  const auto& cfg = r.config;
  const auto window = std::find_if(cfg.windows.begin(), cfg.windows.end(),
                                   [&](const auto& w) { return w.label == window_label; });
  const auto scale = time_scale_from_code(scale_code);
  if (window == cfg.windows.end() || !scale) {
    std::cerr << "antifrag: unknown window '" << window_label << "' or scale " << scale_code
              << '\n';
    return 1;
  }
  Channel channel = Channel::price;
  if (channel_name == "volume") channel = Channel::volume;
  else if (channel_name == "market_cap") channel = Channel::market_cap;
  else if (channel_name != "price") {
    std::cerr << "antifrag: unknown channel '" << channel_name << "'\n";
    return 1;
  }
  try {
    const auto data = load_inputs(cfg, cfg.worker_count);
    std::vector<AgentSeries> alive;
    for (const auto& a : data.agents) {
      if (auto s = slice_window(a, *window)) alive.push_back(std::move(*s));
    }
    const auto panel = build_panel(alive, data.indexes, *window, *scale, cfg.worker_count);
    if (out) {
      std::ofstream os(*out, std::ios::binary);
      if (!os) throw DataError(out->string() + ": cannot open for writing");
      write_panel_csv(os, panel, channel);
    } else {
      write_panel_csv(std::cout, panel, channel);
    }
  } catch (const std::exception& e) {
    std::cerr << "antifrag: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Antifragility measures for stock and cryptocurrency panels"};
  app.require_subcommand(1);

  fs::path config_path;
  std::optional<unsigned> workers;
  std::optional<fs::path> out;
  std::vector<std::string> sets;

  auto* run = app.add_subcommand("run", "Run the full pipeline and write all outputs");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--workers", workers, "Worker threads (0 = one per core)");
  run->add_option("--out", out, "Output directory (overrides output_dir)");
  run->add_option("--set", sets, "Override a config key, key=value");

  auto* validate = app.add_subcommand("validate", "Check a config file without reading data");
  validate->add_option("--config", config_path, "Config file")->required();

  fs::path fixture_dir;
  auto* fixture_cmd = app.add_subcommand("fixture", "Write the built-in synthetic fixture");
  fixture_cmd->add_option("--out", fixture_dir, "Destination directory")->required();

  std::string window_label;
  int scale_code = 0;
  std::string channel = "price";
  auto* panel = app.add_subcommand("panel", "Export one normalized panel as CSV");
  panel->add_option("--config", config_path, "Config file")->required();
  panel->add_option("--window", window_label, "Window label")->required();
  panel->add_option("--scale", scale_code, "0 daily, 1 weekly, 2 monthly")->required();
  panel->add_option("--channel", channel, "price, volume or market_cap");
  panel->add_option("--out", out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, workers, out, sets);
    if (*validate) return cmd_validate(config_path);
    if (*panel) return cmd_panel(config_path, window_label, scale_code, channel, out);
    if (*fixture_cmd) {
      fixture::write(fixture_dir);
      std::cout << "fixture written to " << fixture_dir.string() << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "antifrag: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
