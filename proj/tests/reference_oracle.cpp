#include "reference_oracle.hpp"

#include <chrono>
#include <cmath>

namespace reference {

using namespace std::chrono;
using antifrag::AgentSeries;
using antifrag::IndexId;
using antifrag::MarketKind;

namespace {

Date bucket_of(Date d, int scale) {
  if (scale == 0) return d;
  if (scale == 1) {
    // Days since Monday: 1970-01-01 was a Thursday.
    const long n = d.time_since_epoch().count();
    const long since_monday = ((n + 3) % 7 + 7) % 7;
    return Date{days{n - since_monday}};
  }
  const year_month_day ymd{d};
  return sys_days{year_month_day{ymd.year(), ymd.month(), day{1}}};
}

std::map<Date, double> scaled(const std::map<Date, double>& raw) {
  double lo = 0, hi = 0;
  bool first = true;
  for (const auto& [d, v] : raw) {
    if (first || v < lo) lo = v;
    if (first || v > hi) hi = v;
    first = false;
  }
  std::map<Date, double> out;
  for (const auto& [d, v] : raw) out[d] = hi == lo ? 0.5 : (v - lo) / (hi - lo);
  return out;
}

// value at each key minus value at the previous key
std::map<Date, double> step_differences(const std::map<Date, double>& m) {
  std::map<Date, double> out;
  const Date* prev_key = nullptr;
  double prev = 0;
  for (const auto& [d, v] : m) {
    if (prev_key) out[d] = v - prev;
    prev_key = &d;
    prev = v;
  }
  return out;
}

std::map<Date, double> absolute(std::map<Date, double> m) {
  for (auto& [d, v] : m) v = std::fabs(v);
  return m;
}

std::map<Date, double> mean_over_agents(
    const std::map<std::string, std::map<Date, double>>& per_agent) {
  std::map<Date, std::vector<double>> gathered;
  for (const auto& [agent, series] : per_agent) {
    for (const auto& [d, v] : series) gathered[d].push_back(v);
  }
  std::map<Date, double> out;
  for (const auto& [d, vs] : gathered) {
    double s = 0;
    for (double v : vs) s += v;
    out[d] = s / static_cast<double>(vs.size());
  }
  return out;
}

}  // namespace

Evaluation evaluate(const std::vector<AgentSeries>& agents,
                    const std::map<IndexId, antifrag::IndexSeries>& indexes,
                    const antifrag::AnalysisWindow& window, int scale, MarketKind kind) {
  Evaluation ev;
  std::map<std::string, std::map<Date, double>> raw_open;

  for (const auto& agent : agents) {
    std::map<Date, double> open, volume, cap;
    std::map<Date, bool> has_cap;
    for (const auto& o : agent.observations) {
      if (o.date < window.start_date || o.date > window.end_date) continue;
      const Date b = bucket_of(o.date, scale);
      if (!open.count(b)) {
        open[b] = o.open;
        has_cap[b] = o.market_cap.has_value();
        if (o.market_cap) cap[b] = *o.market_cap;
      }
      volume[b] += o.volume;
    }
    if (open.size() < 2) continue;
    raw_open[agent.agent_id] = open;
    auto& norm = ev.normalized[agent.agent_id];
    norm["price"] = scaled(open);
    norm["volume"] = scaled(volume);
    if (kind == MarketKind::crypto && !cap.empty()) norm["market_cap"] = scaled(cap);
    ev.satisfaction[agent.agent_id] = step_differences(norm["price"]);
  }

  std::map<std::string, std::map<std::string, std::map<Date, double>>> contributions;
  for (const auto& [id, norm] : ev.normalized) {
    const auto& s = ev.satisfaction.at(id);
    if (kind == MarketKind::stock) {
      contributions["afp"][id] = absolute(step_differences(norm.at("price")));
      std::map<Date, double> v;
      for (const auto& [d, dv] : step_differences(norm.at("volume"))) {
        if (s.count(d)) v[d] = std::fabs(s.at(d) + dv) / 2.0;
      }
      contributions["afv"][id] = v;
    } else {
      contributions["afp_raw"][id] = absolute(step_differences(raw_open.at(id)));
      contributions["afv"][id] = absolute(step_differences(norm.at("volume")));
      if (norm.count("market_cap")) {
        contributions["afm"][id] = absolute(step_differences(norm.at("market_cap")));
      }
      std::map<Date, double> lag;
      const double* previous = nullptr;
      for (const auto& [d, v] : s) {
        if (previous) lag[d] = std::fabs(*previous);
        previous = &v;
      }
      contributions["afn"][id] = lag;
    }
  }

  if (kind == MarketKind::stock) {
    ev.perturbation["afp"] = mean_over_agents(contributions["afp"]);
    ev.perturbation["afv"] = mean_over_agents(contributions["afv"]);
    std::map<IndexId, std::map<Date, double>> idx;
    for (const auto& [id, series] : indexes) {
      std::map<Date, double> levels;
      for (const auto& lv : series.values) {
        if (lv.date < window.start_date || lv.date > window.end_date) continue;
        const Date b = bucket_of(lv.date, scale);
        if (!levels.count(b)) levels[b] = lv.level;
      }
      if (!levels.empty()) idx[id] = scaled(levels);
    }
    if (idx.count(IndexId::vix)) ev.perturbation["afx"] = idx[IndexId::vix];
    if (idx.count(IndexId::nasdaq) && idx.count(IndexId::dji) && idx.count(IndexId::spx)) {
      const auto a = absolute(step_differences(idx[IndexId::nasdaq]));
      const auto b = absolute(step_differences(idx[IndexId::dji]));
      const auto c = absolute(step_differences(idx[IndexId::spx]));
      std::map<Date, double> p;
      for (const auto& [d, v] : a) {
        if (b.count(d) && c.count(d)) p[d] = (v + b.at(d) + c.at(d)) / 3.0;
      }
      ev.perturbation["af3m"] = p;
    }
  } else {
    const auto raw = mean_over_agents(contributions["afp_raw"]);
    ev.perturbation["afp"] = scaled(raw);
    ev.perturbation["afv"] = mean_over_agents(contributions["afv"]);
    ev.perturbation["afm"] = mean_over_agents(contributions["afm"]);
    ev.perturbation["afn"] = mean_over_agents(contributions["afn"]);
  }

  for (const auto& [measure, p] : ev.perturbation) {
    for (const auto& [id, s] : ev.satisfaction) {
      AgentResult r;
      double total = 0;
      for (const auto& [d, sv] : s) {
        if (!p.count(d)) continue;
        r.instants[d] = sv * p.at(d);
        total += sv * p.at(d);
      }
      if (r.instants.empty()) continue;
      r.n_used = r.instants.size();
      r.global = total / static_cast<double>(r.n_used);
      ev.antifragility[measure][id] = r;
    }
  }
  return ev;
}

}  // namespace reference
