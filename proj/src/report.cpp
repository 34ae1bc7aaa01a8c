#include "antifrag/report.hpp"

#include <fstream>
#include <functional>
#include <ostream>

#include <json.hpp>
#include <openssl/evp.h>

#include "antifrag/format.hpp"

namespace antifrag {

namespace fs = std::filesystem;

namespace {

std::string json_real(const std::optional<double>& v) { return v ? format_real(*v) : "null"; }

std::string scale_code(TimeScale s) { return std::to_string(code_of(s)); }

}  // namespace

void write_antifragility_csv(std::ostream& out, const PipelineResult& result,
                             const RunConfig& config) {
  out << "agent_id,measure,scale,window,global_A,n_used\n";
  for (const auto& c : result.cases(config)) {
    for (const auto& r : c.results) {
      out << r.agent_id << ',' << to_string(r.measure) << ',' << scale_code(r.scale) << ','
          << c.window.label << ',' << format_real(r.global) << ',' << r.n_used << '\n';
    }
  }
}

void write_performance_csv(std::ostream& out, const PipelineResult& result) {
  out << "agent_id,window,age_days,pct_dlt_pr,pct_dlt_mk,pct_dlt_vl,pct_pr_f_i,pct_mk_f_i,"
         "pct_vl_f_i,pr_mea,pr_std,mk_mea,vl_mea,is_top_performer\n";
  for (const auto& p : result.performance) {
    out << p.agent_id << ',' << p.window << ',' << p.age_days << ',' << format_real(p.pct_dlt_pr)
        << ',' << format_real(p.pct_dlt_mk) << ',' << format_real(p.pct_dlt_vl) << ','
        << format_real(p.pct_pr_f_i) << ',' << format_real(p.pct_mk_f_i) << ','
        << format_real(p.pct_vl_f_i) << ',' << format_real(p.pr_mea) << ','
        << format_real(p.pr_std) << ',' << format_real(p.mk_mea) << ','
        << format_real(p.vl_mea) << ',' << (p.is_top_performer ? 1 : 0) << '\n';
  }
}

void write_scatter_csv(std::ostream& out, const PipelineResult& result) {
  out << "window,measure,scale,agent_id,A,perf_variable,perf_value\n";
  for (const auto& r : result.scatter) {
    out << r.window << ',' << to_string(r.measure) << ',' << scale_code(r.scale) << ','
        << r.agent_id << ',' << format_real(r.a) << ',' << to_string(r.variable) << ','
        << format_real(r.value) << '\n';
  }
}

void write_correlations_csv(std::ostream& out, const PipelineResult& result) {
  out << "window,measure,scale,perf_variable,n,pearson_r\n";
  for (const auto& r : result.correlations) {
    out << r.window << ',' << to_string(r.measure) << ',' << scale_code(r.scale) << ','
        << to_string(r.variable) << ',' << r.n << ',' << format_real(r.r) << '\n';
  }
}

void write_bins_csv(std::ostream& out, const PipelineResult& result) {
  out << "window,measure,scale,bin_by,stat_of,bin_index,count,min,mean,max\n";
  for (const auto& row : result.bins) {
    const auto& b = row.bin;
    out << row.window << ',' << to_string(row.measure) << ',' << scale_code(row.scale) << ','
        << b.bin_by << ',' << b.stat_of << ',' << b.bin_index << ',' << b.count << ','
        << format_real(b.min) << ',' << format_real(b.mean) << ',' << format_real(b.max) << '\n';
  }
}

void write_distributions_csv(std::ostream& out, const PipelineResult& result) {
  out << "window,measure,scale,population,bin_index,lower,upper,density,sample_count\n";
  for (const auto& row : result.distributions) {
    const auto& d = row.distribution;
    for (std::size_t j = 0; j < d.densities.size(); ++j) {
      out << row.window << ',' << to_string(row.measure) << ',' << scale_code(row.scale) << ','
          << row.population << ',' << j << ',' << format_real(d.bin_edges[j]) << ','
          << format_real(d.bin_edges[j + 1]) << ',' << format_real(d.densities[j]) << ','
          << d.sample_count << '\n';
    }
  }
}

void write_comparison_json(std::ostream& out, const ComparisonStats& stats) {
  // Hand-written so reals keep 17 significant digits.
  out << "{\n"
      << "  \"cases_total\": " << stats.cases_total << ",\n"
      << "  \"cases_top_greater\": " << stats.cases_top_greater << ",\n"
      << "  \"fraction_top_greater\": " << json_real(stats.fraction_top_greater) << ",\n"
      << "  \"sum_diff_when_greater\": " << format_real(stats.sum_diff_when_greater) << ",\n"
      << "  \"sum_diff_otherwise\": " << format_real(stats.sum_diff_otherwise) << ",\n"
      << "  \"ratio\": " << json_real(stats.ratio) << ",\n"
      << "  \"cases\": [";
  for (std::size_t i = 0; i < stats.cases.size(); ++i) {
    const auto& c = stats.cases[i];
    out << (i ? ",\n" : "\n") << "    {\"window\": " << nlohmann::json(c.window).dump()
        << ", \"measure\": \"" << to_string(c.measure) << "\", \"scale\": " << code_of(c.scale)
        << ", \"n_all\": " << c.n_all << ", \"n_top\": " << c.n_top
        << ", \"mean_all\": " << format_real(c.mean_all)
        << ", \"mean_top\": " << format_real(c.mean_top) << "}";
  }
  out << (stats.cases.empty() ? "],\n" : "\n  ],\n") << "  \"skipped\": [";
  for (std::size_t i = 0; i < stats.skipped.size(); ++i) {
    out << (i ? ", " : "") << nlohmann::json(stats.skipped[i]).dump();
  }
  out << "]\n}\n";
}

std::string sha256_hex(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open file for digest");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest init failed");
  }
  char buf[1 << 15];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 0xf];
  }
  return hex;
}

void write_manifest_json(std::ostream& out, const RunConfig& config, const LoadedData& data,
                         const PipelineResult& result) {
  using ordered = nlohmann::ordered_json;
  ordered manifest;
  manifest["tool"] = "antifrag";
  manifest["format_version"] = 1;

  ordered cfg;
  for (const auto& [key, value] : config.raw) {
    if (key == "workers" || key == "output_dir") continue;  // do not affect results
    cfg[key] = value;
  }
  ordered resolved;
  resolved["market_kind"] = std::string(to_string(config.market_kind));
  resolved["windows"] = ordered::array();
  for (const auto& w : config.windows) {
    resolved["windows"].push_back(
        {{"label", w.label}, {"start", to_iso_string(w.start_date)}, {"end", to_iso_string(w.end_date)}});
  }
  resolved["scales"] = ordered::array();
  for (auto s : config.scales) resolved["scales"].push_back(code_of(s));
  resolved["measures"] = ordered::array();
  for (auto m : config.measures) resolved["measures"].push_back(std::string(to_string(m)));
  resolved["hist_bins"] = config.n_hist_bins;
  manifest["config"] = cfg;
  manifest["resolved"] = resolved;

  manifest["inputs"] = ordered::array();
  for (const auto& in : data.inputs) {
    manifest["inputs"].push_back({{"role", in.role},
                                  {"file", in.path.filename().string()},
                                  {"sha256", sha256_hex(in.path)}});
  }

  manifest["windows"] = ordered::array();
  for (const auto& w : result.windows) {
    ordered alive;
    for (const auto& [scale, n] : w.alive) alive[scale_code(scale)] = n;
    manifest["windows"].push_back({{"label", w.window.label},
                                   {"agents_with_data", w.agents_with_data},
                                   {"alive_per_scale", alive}});
  }
  out << manifest.dump(2) << '\n';
}

std::vector<fs::path> write_outputs(const RunConfig& config, const LoadedData& data,
                                    const PipelineResult& result, const fs::path& out_dir) {
  std::vector<fs::path> written;
  const auto emit = [&](const char* name, const std::function<void(std::ostream&)>& body) {
    const auto path = out_dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(path.string() + ": cannot open for writing");
    written.push_back(path);
    body(out);
    out.flush();
    if (!out) throw DataError(path.string() + ": write failed");
  };
  try {
    fs::create_directories(out_dir);
    emit("antifragility.csv", [&](auto& o) { write_antifragility_csv(o, result, config); });
    emit("performance.csv", [&](auto& o) { write_performance_csv(o, result); });
    emit("scatter.csv", [&](auto& o) { write_scatter_csv(o, result); });
    emit("correlations.csv", [&](auto& o) { write_correlations_csv(o, result); });
    emit("bins.csv", [&](auto& o) { write_bins_csv(o, result); });
    emit("distributions.csv", [&](auto& o) { write_distributions_csv(o, result); });
    if (result.comparison) {
      emit("comparison.json", [&](auto& o) { write_comparison_json(o, *result.comparison); });
    }
    emit("run_manifest.json", [&](auto& o) { write_manifest_json(o, config, data, result); });
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    throw;
  }
  return written;
}

}  // namespace antifrag
