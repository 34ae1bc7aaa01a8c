#include "antifrag/ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "antifrag/format.hpp"
#include "antifrag/parallel.hpp"

namespace antifrag {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string location(const std::string& source, std::size_t line_no) {
  return source + ":" + std::to_string(line_no);
}

double parse_non_negative(std::string_view text, const std::string& where, const char* field) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw DataError(where + ": field '" + field + "': cannot parse '" + std::string(text) +
                    "' as a number");
  }
  if (value < 0.0) {
    throw DataError(where + ": field '" + field + "': negative value " + std::string(text));
  }
  return value;
}

Date parse_date_field(std::string_view text, const std::string& where) {
  auto d = parse_iso_date(text);
  if (!d) {
    throw DataError(where + ": field 'date': '" + std::string(text) +
                    "' is not an ISO-8601 YYYY-MM-DD date");
  }
  return *d;
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open file");
  return in;
}

// Reads the next non-blank line; returns false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) return true;
  }
  return false;
}

}  // namespace

AgentSeries parse_agent_csv(std::istream& in, std::string agent_id, MarketKind kind,
                            const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw DataError(source + ": empty file, no observations");

  const auto header = split_fields(line);
  const bool base_ok = header.size() >= 3 && header[0] == "date" && header[1] == "open" &&
                       header[2] == "volume";
  const bool has_cap = header.size() == 4 && header[3] == "market_cap";
  if (!base_ok || (header.size() != 3 && !has_cap)) {
    throw DataError(location(source, line_no) +
                    ": header must be 'date,open,volume' or 'date,open,volume,market_cap'");
  }
  if (has_cap && kind == MarketKind::stock) {
    throw DataError(location(source, line_no) + ": market_cap not allowed for stocks");
  }

  AgentSeries series{std::move(agent_id), kind, {}};
  while (next_line(in, line, line_no)) {
    const auto where = location(source, line_no);
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw DataError(where + ": expected " + std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    RawObservation obs;
    obs.date = parse_date_field(fields[0], where);
    obs.open = parse_non_negative(fields[1], where, "open");
    obs.volume = parse_non_negative(fields[2], where, "volume");
    if (has_cap && !fields[3].empty()) {
      obs.market_cap = parse_non_negative(fields[3], where, "market_cap");
    }
    series.observations.push_back(obs);
  }
  if (series.observations.empty()) throw DataError(source + ": no observations");

  std::stable_sort(series.observations.begin(), series.observations.end(),
                   [](const auto& a, const auto& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < series.observations.size(); ++i) {
    if (series.observations[i].date == series.observations[i - 1].date) {
      throw DataError(source + ": duplicate date " + to_iso_string(series.observations[i].date));
    }
  }
  return series;
}

AgentSeries load_agent_series(const fs::path& path, MarketKind kind) {
  auto in = open_input(path);
  return parse_agent_csv(in, path.stem().string(), kind, path.string());
}

void write_agent_csv(std::ostream& out, const AgentSeries& series) {
  const bool with_cap = series.market_kind == MarketKind::crypto &&
                        std::any_of(series.observations.begin(), series.observations.end(),
                                    [](const auto& o) { return o.market_cap.has_value(); });
  out << (with_cap ? "date,open,volume,market_cap\n" : "date,open,volume\n");
  for (const auto& o : series.observations) {
    out << to_iso_string(o.date) << ',' << format_shortest(o.open) << ','
        << format_shortest(o.volume);
    if (with_cap) {
      out << ',';
      if (o.market_cap) out << format_shortest(*o.market_cap);
    }
    out << '\n';
  }
}

std::vector<fs::path> list_csv_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError(dir.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<AgentSeries> load_agent_files(std::span<const fs::path> paths, MarketKind kind,
                                          unsigned workers) {
  std::vector<AgentSeries> loaded(paths.size());
  parallel_for(paths.size(), workers,
               [&](std::size_t i) { loaded[i] = load_agent_series(paths[i], kind); });
  std::sort(loaded.begin(), loaded.end(),
            [](const auto& a, const auto& b) { return a.agent_id < b.agent_id; });
  for (std::size_t i = 1; i < loaded.size(); ++i) {
    if (loaded[i].agent_id == loaded[i - 1].agent_id) {
      throw DataError("duplicate agent id '" + loaded[i].agent_id + "'");
    }
  }
  return loaded;
}

IndexSeries parse_index_csv(std::istream& in, IndexId id, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw DataError(source + ": no observations");
  const auto header = split_fields(line);
  if (header.size() != 2 || header[0] != "date" || header[1] != "level") {
    throw DataError(location(source, line_no) + ": header must be 'date,level'");
  }
  IndexSeries series{id, {}};
  while (next_line(in, line, line_no)) {
    const auto where = location(source, line_no);
    const auto fields = split_fields(line);
    if (fields.size() != 2) {
      throw DataError(where + ": expected 2 fields, found " + std::to_string(fields.size()));
    }
    IndexLevel level{parse_date_field(fields[0], where),
                     parse_non_negative(fields[1], where, "level")};
    if (!series.values.empty() && level.date <= series.values.back().date) {
      throw DataError(where + ": date " + to_iso_string(level.date) +
                      " is not after the previous row");
    }
    series.values.push_back(level);
  }
  if (series.values.empty()) throw DataError(source + ": no observations");
  return series;
}

IndexSeries load_index_series(const fs::path& path, std::string_view index_id) {
  const auto id = parse_index_id(index_id);
  if (!id) throw DataError("unknown index id '" + std::string(index_id) + "'");
  auto in = open_input(path);
  return parse_index_csv(in, *id, path.string());
}

std::map<IndexId, IndexSeries> load_index_directory(const fs::path& dir,
                                                    std::span<const IndexId> ids) {
  std::map<IndexId, IndexSeries> out;
  for (IndexId id : ids) {
    const auto name = std::string(to_string(id));
    out.emplace(id, load_index_series(dir / (name + ".csv"), name));
  }
  return out;
}

namespace {

// SAX consumer so that a year repeated as a key is unioned instead of the
// last occurrence silently winning.
class TopPerformerSax : public nlohmann::json_sax<nlohmann::json> {
 public:
  explicit TopPerformerSax(std::string source) : source_(std::move(source)) {}

  std::map<int, std::set<std::string>> years;
  std::string label;
  std::optional<std::pair<long long, long long>> range;

  bool null() override { return fail("null"); }
  bool boolean(bool) override { return fail("boolean"); }
  bool number_integer(number_integer_t v) override { return number(v); }
  bool number_unsigned(number_unsigned_t v) override {
    return number(static_cast<long long>(v));
  }
  bool number_float(number_float_t, const string_t&) override { return fail("real number"); }
  bool binary(binary_t&) override { return fail("binary"); }

  bool string(string_t& val) override {
    if (depth_ == 1 && key_ == "source") {
      label = val;
      return true;
    }
    if (depth_ == 2 && year_) {
      years[*year_].insert(val);
      return true;
    }
    return fail("string");
  }

  bool start_object(std::size_t) override {
    if (depth_ != 0) return fail("nested object");
    ++depth_;
    return true;
  }
  bool end_object() override {
    --depth_;
    return true;
  }

  bool key(string_t& val) override {
    key_ = val;
    year_.reset();
    if (val == "source" || val == "range") return true;
    int year = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), year);
    if (val.size() != 4 || ec != std::errc{} || ptr != val.data() + val.size()) {
      throw DataError(source_ + ": key '" + val + "' is not a year");
    }
    year_ = year;
    return true;
  }

  bool start_array(std::size_t) override {
    if (depth_ != 1 || (!year_ && key_ != "range")) return fail("array");
    ++depth_;
    if (year_) {
      years[*year_];  // ensure present even if empty
    } else {
      range_values_.clear();
    }
    return true;
  }
  bool end_array() override {
    --depth_;
    if (!year_) {
      if (range_values_.size() != 2 || range_values_[0] > range_values_[1]) {
        throw DataError(source_ + ": 'range' must be [first_year, last_year]");
      }
      range = std::make_pair(range_values_[0], range_values_[1]);
    }
    return true;
  }

  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    throw DataError(source_ + ": invalid JSON at byte " + std::to_string(position) + ": " +
                    ex.what());
  }

 private:
  bool number(long long v) {
    if (depth_ == 2 && key_ == "range") {
      range_values_.push_back(v);
      return true;
    }
    return fail("number");
  }

  bool fail(const char* what) {
    throw DataError(source_ + ": unexpected " + std::string(what) +
                    (key_.empty() ? std::string() : " under key '" + key_ + "'"));
  }

  std::string source_;
  int depth_ = 0;
  std::string key_;
  std::optional<int> year_;
  std::vector<long long> range_values_;
};

}  // namespace

TopPerformerFile parse_top_performers(const std::string& text, const std::string& source) {
  TopPerformerSax sax(source);
  nlohmann::json::sax_parse(text, &sax);
  for (const auto& [year, ids] : sax.years) {
    if (ids.empty()) {
      throw DataError(source + ": empty top-performer list for year " + std::to_string(year));
    }
  }
  TopPerformerFile file;
  for (auto& [year, ids] : sax.years) {
    if (sax.range && (year < sax.range->first || year > sax.range->second)) {
      file.warnings.push_back(source + ": year " + std::to_string(year) +
                              " outside declared range " + std::to_string(sax.range->first) +
                              "-" + std::to_string(sax.range->second));
    }
    file.lists.push_back(TopPerformerList{year, std::move(ids), sax.label});
  }
  return file;
}

TopPerformerFile load_top_performers(const fs::path& path) {
  auto in = open_input(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_top_performers(buffer.str(), path.string());
}

std::optional<AgentSeries> slice_window(const AgentSeries& series, const AnalysisWindow& window) {
  AgentSeries out{series.agent_id, series.market_kind, {}};
  for (const auto& obs : series.observations) {
    if (window.contains(obs.date)) out.observations.push_back(obs);
  }
  if (out.observations.size() < 2) return std::nullopt;
  return out;
}

}  // namespace antifrag
