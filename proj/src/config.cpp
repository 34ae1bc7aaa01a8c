#include "antifrag/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace antifrag {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> kKnownKeys{"market_kind", "data_dir",   "index_dir",
                                       "top_performers", "windows", "scales",
                                       "measures",    "output_dir", "hist_bins",
                                       "workers"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    auto item = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
    if (!item.empty()) items.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

AnalysisWindow year_window(int year) {
  using namespace std::chrono;
  return AnalysisWindow{sys_days{std::chrono::year{year} / January / 1},
                        sys_days{std::chrono::year{year} / December / 31}, std::to_string(year)};
}

class Parser {
 public:
  std::vector<Diagnostic> diags;

  void error(std::string msg) { diags.push_back({Diagnostic::Severity::error, std::move(msg)}); }
  void note(std::string msg) { diags.push_back({Diagnostic::Severity::note, std::move(msg)}); }

  std::vector<AnalysisWindow> windows(const std::string& value) {
    std::vector<AnalysisWindow> out;
    for (const auto& item : split_list(value)) {
      if (const auto dots = item.find(".."); dots != std::string::npos) {
        const auto a = parse_int<int>(item.substr(0, dots));
        const auto b = parse_int<int>(item.substr(dots + 2));
        if (!a || !b || *a > *b) {
          error("windows: bad year range '" + item + "'");
          continue;
        }
        for (int y = *a; y <= *b; ++y) out.push_back(year_window(y));
      } else if (item.find(':') != std::string::npos) {
        const auto c1 = item.find(':');
        const auto c2 = item.find(':', c1 + 1);
        const auto label = trim(item.substr(0, c1));
        const auto start =
            c2 == std::string::npos ? std::nullopt : parse_iso_date(trim(item.substr(c1 + 1, c2 - c1 - 1)));
        const auto end =
            c2 == std::string::npos ? std::nullopt : parse_iso_date(trim(item.substr(c2 + 1)));
        if (label.empty() || !start || !end) {
          error("windows: expected label:YYYY-MM-DD:YYYY-MM-DD, got '" + item + "'");
          continue;
        }
        if (*start > *end) {
          error("windows: window '" + label + "' starts after it ends");
          continue;
        }
        out.push_back({*start, *end, label});
      } else if (const auto y = parse_int<int>(item); y && item.size() == 4) {
        out.push_back(year_window(*y));
      } else {
        error("windows: cannot parse '" + item + "'");
      }
    }
    return out;
  }
};

}  // namespace

std::size_t ConfigResult::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(diagnostics.begin(), diagnostics.end(),
                    [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::error; }));
}

std::vector<IndexId> required_indexes(const RunConfig& config) {
  std::vector<IndexId> ids;
  if (config.market_kind != MarketKind::stock) return ids;
  const auto has = [&](MeasureId m) {
    return std::find(config.measures.begin(), config.measures.end(), m) != config.measures.end();
  };
  if (has(MeasureId::afx)) ids.push_back(IndexId::vix);
  if (has(MeasureId::af3m)) {
    ids.insert(ids.end(), {IndexId::nasdaq, IndexId::dji, IndexId::spx});
  }
  return ids;
}

ConfigResult parse_config(std::string_view text, const fs::path& base_dir,
                          const std::map<std::string, std::string>& overrides) {
  Parser p;
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      p.error("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    auto key = trim(content.substr(0, eq));
    auto value = trim(content.substr(eq + 1));
    if (!kKnownKeys.count(key)) {
      p.error("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      continue;
    }
    if (kv.count(key)) {
      p.error("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
      continue;
    }
    kv.emplace(std::move(key), std::move(value));
  }
  for (const auto& [key, value] : overrides) {
    if (!kKnownKeys.count(key)) {
      p.error("override: unknown key '" + key + "'");
      continue;
    }
    kv[key] = value;
  }

  ConfigResult result;
  RunConfig& cfg = result.config;
  cfg.raw = kv;
  const auto get = [&](const char* key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end() || it->second.empty()) return std::nullopt;
    return it->second;
  };
  const auto resolve = [&](const std::string& value) {
    fs::path path(value);
    return path.is_absolute() ? path : base_dir / path;
  };

  bool kind_ok = false;
  if (const auto v = get("market_kind")) {
    if (const auto kind = parse_market_kind(*v)) {
      cfg.market_kind = *kind;
      kind_ok = true;
    } else {
      p.error("market_kind: expected 'stock' or 'crypto', got '" + *v + "'");
    }
  } else {
    p.error("market_kind: required");
  }

  if (const auto v = get("data_dir")) {
    cfg.data_dir = resolve(*v);
    if (!fs::is_directory(cfg.data_dir)) {
      p.error("data_dir: '" + cfg.data_dir.string() + "' is not a directory");
    }
  } else {
    p.error("data_dir: required");
  }

  if (const auto v = get("windows")) {
    cfg.windows = p.windows(*v);
    if (cfg.windows.empty()) p.error("windows: no window given");
    std::set<std::string> labels;
    for (const auto& w : cfg.windows) {
      if (!labels.insert(w.label).second) p.error("windows: duplicate label '" + w.label + "'");
    }
    for (std::size_t i = 0; i < cfg.windows.size(); ++i) {
      for (std::size_t j = i + 1; j < cfg.windows.size(); ++j) {
        const auto& a = cfg.windows[i];
        const auto& b = cfg.windows[j];
        if (a.start_date <= b.end_date && b.start_date <= a.end_date) {
          p.note("windows '" + a.label + "' and '" + b.label + "' overlap");
        }
      }
    }
  } else {
    p.error("windows: required");
  }

  if (const auto v = get("scales")) {
    std::set<int> codes;
    for (const auto& item : split_list(*v)) {
      const auto code = parse_int<int>(item);
      if (!code || !time_scale_from_code(*code)) {
        p.error("scales: '" + item + "' is not one of 0, 1, 2");
      } else {
        codes.insert(*code);
      }
    }
    cfg.scales.clear();
    for (int c : codes) cfg.scales.push_back(*time_scale_from_code(c));
    if (cfg.scales.empty()) p.error("scales: no scale given");
  }

  if (kind_ok) {
    const auto canonical = measures_for(cfg.market_kind);
    if (const auto v = get("measures")) {
      std::set<MeasureId> chosen;
      for (const auto& item : split_list(*v)) {
        const auto m = parse_measure_id(item);
        if (!m) {
          p.error("measures: unknown measure '" + item + "'");
        } else if (!measure_valid_for(*m, cfg.market_kind)) {
          p.error("measure " + item + " invalid for " + std::string(to_string(cfg.market_kind)));
        } else {
          chosen.insert(*m);
        }
      }
      for (MeasureId m : canonical) {
        if (chosen.count(m)) cfg.measures.push_back(m);
      }
      if (cfg.measures.empty()) p.error("measures: no valid measure given");
    } else {
      cfg.measures = canonical;
    }
  }

  if (const auto v = get("index_dir")) {
    cfg.index_dir = resolve(*v);
    if (!fs::is_directory(*cfg.index_dir)) {
      p.error("index_dir: '" + cfg.index_dir->string() + "' is not a directory");
    }
  } else if (kind_ok && !required_indexes(cfg).empty()) {
    p.error("index_dir: required for measures afx and af3m");
  }

  if (const auto v = get("top_performers")) {
    cfg.top_performers_path = resolve(*v);
    if (!fs::is_regular_file(*cfg.top_performers_path)) {
      p.error("top_performers: '" + cfg.top_performers_path->string() + "' is not a file");
    }
  }

  if (const auto v = get("output_dir")) cfg.output_dir = resolve(*v);
  else cfg.output_dir = base_dir / "output";

  if (const auto v = get("hist_bins")) {
    const auto n = parse_int<std::size_t>(*v);
    if (!n || *n == 0) p.error("hist_bins: expected a positive integer, got '" + *v + "'");
    else cfg.n_hist_bins = *n;
  }
  if (const auto v = get("workers")) {
    const auto n = parse_int<unsigned>(*v);
    if (!n) p.error("workers: expected a non-negative integer, got '" + *v + "'");
    else cfg.worker_count = *n;
  }

  result.diagnostics = std::move(p.diags);
  return result;
}

ConfigResult load_config(const fs::path& path, const std::map<std::string, std::string>& overrides) {
  std::ifstream in(path);
  if (!in) {
    ConfigResult r;
    r.diagnostics.push_back({Diagnostic::Severity::error, path.string() + ": cannot open config"});
    return r;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path(), overrides);
}

}  // namespace antifrag
