#include "antifrag/fixture.hpp"

#include <fstream>

#include "antifrag/format.hpp"
#include "antifrag/ingestion.hpp"

namespace antifrag::fixture {

namespace fs = std::filesystem;

namespace {

struct Row {
  const char* date;
  double open, volume, cap;
};

const std::map<std::string, std::vector<Row>>& raw_agents() {
  static const std::map<std::string, std::vector<Row>> rows{
      {"AAA",
       {{"2014-01-06", 10, 100, 1000},
        {"2014-01-14", 12, 150, 1250},
        {"2014-01-22", 11, 120, 1100},
        {"2014-02-03", 15, 200, 1500},
        {"2014-02-12", 14, 90, 1400}}},
      {"BBB",
       {{"2014-01-06", 50, 300, 5000},
        {"2014-01-14", 49, 280, 4900},
        {"2014-01-22", 53, 400, 5300},
        {"2014-02-03", 52, 350, 5150},
        {"2014-02-12", 60, 500, 6000}}},
      {"CCC",
       {{"2014-01-06", 7, 40, 700},
        {"2014-01-14", 7, 45, 700},
        {"2014-01-22", 7, 40, 700},
        {"2014-02-03", 7, 50, 700},
        {"2014-02-13", 7, 60, 700}}},
  };
  return rows;
}

constexpr const char* kIndexDates[] = {"2014-01-06", "2014-01-14", "2014-01-22", "2014-02-03",
                                       "2014-02-12"};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(path.string() + ": cannot open for writing");
  out << text;
}

}  // namespace

std::vector<AgentSeries> agents(MarketKind kind) {
  std::vector<AgentSeries> out;
  for (const auto& [id, rows] : raw_agents()) {
    AgentSeries s{id, kind, {}};
    for (const auto& r : rows) {
      RawObservation o{*parse_iso_date(r.date), r.open, r.volume, std::nullopt};
      if (kind == MarketKind::crypto) o.market_cap = r.cap;
      s.observations.push_back(o);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::map<IndexId, IndexSeries> indexes() {
  const std::map<IndexId, std::vector<double>> levels{
      {IndexId::vix, {13.5, 12.9, 14.8, 18.4, 15.2}},
      {IndexId::nasdaq, {4113.3, 4183.0, 4243.0, 3996.96, 4201.29}},
      {IndexId::dji, {16425.1, 16373.9, 16373.3, 15372.8, 15994.8}},
      {IndexId::spx, {1826.77, 1838.88, 1844.86, 1741.89, 1819.26}},
  };
  std::map<IndexId, IndexSeries> out;
  for (const auto& [id, values] : levels) {
    IndexSeries s{id, {}};
    for (std::size_t i = 0; i < values.size(); ++i) {
      s.values.push_back({*parse_iso_date(kIndexDates[i]), values[i]});
    }
    out.emplace(id, std::move(s));
  }
  return out;
}

std::vector<TopPerformerList> top_performers() { return {{2014, {"AAA"}, "fixture"}}; }

AnalysisWindow window_2014() {
  return {*parse_iso_date("2014-01-01"), *parse_iso_date("2014-12-31"), "2014"};
}

void write(const fs::path& dir) {
  for (MarketKind kind : {MarketKind::stock, MarketKind::crypto}) {
    const fs::path root = dir / std::string(to_string(kind));
    fs::create_directories(root / "data");
    for (const auto& series : agents(kind)) {
      std::ofstream out(root / "data" / (series.agent_id + ".csv"), std::ios::binary);
      write_agent_csv(out, series);
    }
    std::string cfg = "# Built-in fixture: three agents, five observations each.\n";
    cfg += "market_kind = " + std::string(to_string(kind)) + "\n";
    cfg += "data_dir = data\n";
    if (kind == MarketKind::stock) {
      fs::create_directories(root / "indexes");
      for (const auto& [id, series] : indexes()) {
        std::string text = "date,level\n";
        for (const auto& lv : series.values) {
          text += to_iso_string(lv.date) + "," + format_shortest(lv.level) + "\n";
        }
        write_text(root / "indexes" / (std::string(to_string(id)) + ".csv"), text);
      }
      cfg += "index_dir = indexes\n";
    }
    write_text(root / "top_performers.json",
               "{\n  \"source\": \"fixture\",\n  \"2014\": [\"AAA\"]\n}\n");
    cfg += "top_performers = top_performers.json\n";
    cfg += "windows = 2014\n";
    cfg += "scales = 0, 1, 2\n";
    cfg += "output_dir = output\n";
    cfg += "hist_bins = 50\n";
    write_text(root / "run.cfg", cfg);
  }
}

}  // namespace antifrag::fixture
