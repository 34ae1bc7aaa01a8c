#include "antifrag/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "antifrag/numeric.hpp"
#include "antifrag/parallel.hpp"

namespace antifrag {

namespace {

AgentContribution abs_differences(const std::string& agent_id, std::span<const Date> periods,
                                  std::span<const double> values) {
  AgentContribution c{agent_id, {}, {}};
  for (std::size_t k = 1; k < values.size(); ++k) {
    c.periods.push_back(periods[k]);
    c.values.push_back(std::clamp(std::fabs(values[k] - values[k - 1]), 0.0, 1.0));
  }
  return c;
}

// |S_i + (v_i - v_{i-1})| / 2 where both terms exist.
AgentContribution volume_with_satisfaction(const PanelAgent& agent,
                                           const SatisfactionSeries& sat) {
  AgentContribution c{agent.agent_id, {}, {}};
  const auto& vol = agent.volume;
  std::size_t s = 0;
  for (std::size_t k = 1; k < vol.periods.size(); ++k) {
    while (s < sat.periods.size() && sat.periods[s] < vol.periods[k]) ++s;
    if (s == sat.periods.size()) break;
    if (sat.periods[s] != vol.periods[k]) continue;
    const double dv = vol.values[k] - vol.values[k - 1];
    c.periods.push_back(vol.periods[k]);
    c.values.push_back(std::clamp(std::fabs(sat.values[s] + dv) / 2.0, 0.0, 1.0));
  }
  return c;
}

// |S_{i-1}| dated at the following satisfaction period.
AgentContribution lagged_satisfaction(const SatisfactionSeries& sat) {
  AgentContribution c{sat.agent_id, {}, {}};
  for (std::size_t k = 1; k < sat.values.size(); ++k) {
    c.periods.push_back(sat.periods[k]);
    c.values.push_back(std::clamp(std::fabs(sat.values[k - 1]), 0.0, 1.0));
  }
  return c;
}

void require_satisfactions(const NormalizedPanel& panel,
                           std::span<const SatisfactionSeries> satisfactions) {
  if (satisfactions.size() != panel.agents.size()) {
    throw std::invalid_argument("satisfaction list does not match panel agents");
  }
}

PerturbationSeries require_nonempty(PerturbationSeries p) {
  if (p.periods.empty()) {
    throw DataError(std::string("perturbation ") + std::string(to_string(p.measure)) +
                    ": no agent defined at any period");
  }
  return p;
}

std::string bound_message(const char* what, const std::string& who, Date period, double value) {
  return std::string(what) + " out of bounds for " + who + " at " + to_iso_string(period) + ": " +
         std::to_string(value);
}

}  // namespace

SatisfactionSeries satisfaction(const NormalizedSeries& prices) {
  if (prices.values.size() < 2) {
    throw std::invalid_argument("satisfaction: agent '" + prices.agent_id +
                                "' has fewer than 2 prices");
  }
  SatisfactionSeries s{prices.agent_id, prices.scale, {}, {}};
  for (std::size_t k = 1; k < prices.values.size(); ++k) {
    s.periods.push_back(prices.periods[k]);
    s.values.push_back(prices.values[k] - prices.values[k - 1]);
  }
  return s;
}

PerturbationSeries system_mean(MeasureId measure, TimeScale scale,
                               std::span<const AgentContribution> contributions) {
  struct Cell {
    CompensatedSum sum;
    std::size_t count = 0;
  };
  std::map<Date, Cell> cells;
  for (const auto& c : contributions) {
    for (std::size_t k = 0; k < c.periods.size(); ++k) {
      auto& cell = cells[c.periods[k]];
      cell.sum.add(c.values[k]);
      ++cell.count;
    }
  }
  PerturbationSeries p{measure, scale, {}, {}};
  p.periods.reserve(cells.size());
  p.values.reserve(cells.size());
  for (const auto& [period, cell] : cells) {
    p.periods.push_back(period);
    p.values.push_back(
        std::clamp(cell.sum.value() / static_cast<double>(cell.count), 0.0, 1.0));
  }
  return p;
}

std::vector<AgentContribution> agent_contributions(
    MeasureId measure, const NormalizedPanel& panel,
    std::span<const SatisfactionSeries> satisfactions, unsigned workers) {
  const bool needs_sat = measure == MeasureId::afn ||
                         (measure == MeasureId::afv && panel.market_kind == MarketKind::stock);
  if (needs_sat) require_satisfactions(panel, satisfactions);
  if (!measure_valid_for(measure, panel.market_kind)) {
    throw std::invalid_argument("measure " + std::string(to_string(measure)) + " invalid for " +
                                std::string(to_string(panel.market_kind)));
  }
  if (measure == MeasureId::afx || measure == MeasureId::af3m) {
    throw std::invalid_argument("index measures have no per-agent contributions");
  }

  std::vector<AgentContribution> out(panel.agents.size());
  parallel_for(panel.agents.size(), workers, [&](std::size_t i) {
    const auto& agent = panel.agents[i];
    switch (measure) {
      case MeasureId::afp:
        out[i] = abs_differences(agent.agent_id, agent.price.periods, agent.price.values);
        break;
      case MeasureId::afv:
        out[i] = panel.market_kind == MarketKind::stock
                     ? volume_with_satisfaction(agent, satisfactions[i])
                     : abs_differences(agent.agent_id, agent.volume.periods, agent.volume.values);
        break;
      case MeasureId::afm:
        out[i] = agent.market_cap ? abs_differences(agent.agent_id, agent.market_cap->periods,
                                                    agent.market_cap->values)
                                  : AgentContribution{agent.agent_id, {}, {}};
        break;
      case MeasureId::afn: out[i] = lagged_satisfaction(satisfactions[i]); break;
      default: break;
    }
  });
  return out;
}

std::vector<AgentContribution> price_contributions_raw(const NormalizedPanel& panel) {
  std::vector<AgentContribution> out;
  out.reserve(panel.agents.size());
  for (const auto& agent : panel.agents) {
    AgentContribution c{agent.agent_id, {}, {}};
    for (std::size_t k = 1; k < agent.raw_open.size(); ++k) {
      c.periods.push_back(agent.periods[k]);
      c.values.push_back(std::fabs(agent.raw_open[k] - agent.raw_open[k - 1]));
    }
    out.push_back(std::move(c));
  }
  return out;
}

PerturbationSeries perturb_price(const NormalizedPanel& panel) {
  if (panel.market_kind == MarketKind::stock) {
    const auto contributions = agent_contributions(MeasureId::afp, panel, {});
    return require_nonempty(system_mean(MeasureId::afp, panel.scale, contributions));
  }
  // Raw differences average without clamping, so reduce them directly.
  const auto contributions = price_contributions_raw(panel);
  std::map<Date, std::pair<CompensatedSum, std::size_t>> cells;
  for (const auto& c : contributions) {
    for (std::size_t k = 0; k < c.periods.size(); ++k) {
      auto& cell = cells[c.periods[k]];
      cell.first.add(c.values[k]);
      ++cell.second;
    }
  }
  PerturbationSeries p{MeasureId::afp, panel.scale, {}, {}};
  std::vector<double> means;
  for (const auto& [period, cell] : cells) {
    p.periods.push_back(period);
    means.push_back(cell.first.value() / static_cast<double>(cell.second));
  }
  if (!means.empty()) p.values = minmax_normalize(means);
  return require_nonempty(std::move(p));
}

PerturbationSeries perturb_volume_stock(std::span<const SatisfactionSeries> satisfactions,
                                        const NormalizedPanel& panel) {
  const auto contributions = agent_contributions(MeasureId::afv, panel, satisfactions);
  return require_nonempty(system_mean(MeasureId::afv, panel.scale, contributions));
}

PerturbationSeries perturb_volume_crypto(const NormalizedPanel& panel) {
  const auto contributions = agent_contributions(MeasureId::afv, panel, {});
  return require_nonempty(system_mean(MeasureId::afv, panel.scale, contributions));
}

PerturbationSeries perturb_marketcap(const NormalizedPanel& panel) {
  const auto contributions = agent_contributions(MeasureId::afm, panel, {});
  return require_nonempty(system_mean(MeasureId::afm, panel.scale, contributions));
}

PerturbationSeries perturb_normalized_price(std::span<const SatisfactionSeries> satisfactions,
                                            const NormalizedPanel& panel) {
  const auto contributions = agent_contributions(MeasureId::afn, panel, satisfactions);
  return require_nonempty(system_mean(MeasureId::afn, panel.scale, contributions));
}

PerturbationSeries perturb_vix(const NormalizedIndex& vix, TimeScale scale) {
  return PerturbationSeries{MeasureId::afx, scale, vix.periods, vix.values};
}

PerturbationSeries perturb_three_indexes(const NormalizedIndex& nasdaq, const NormalizedIndex& dji,
                                         const NormalizedIndex& spx, TimeScale scale) {
  // Each index's |difference| keyed by the later period; a period counts only
  // when all three indexes have a difference there.
  auto diffs = [](const NormalizedIndex& idx) {
    std::map<Date, double> d;
    for (std::size_t k = 1; k < idx.values.size(); ++k) {
      d.emplace(idx.periods[k], std::fabs(idx.values[k] - idx.values[k - 1]));
    }
    return d;
  };
  const auto a = diffs(nasdaq);
  const auto b = diffs(dji);
  const auto c = diffs(spx);
  PerturbationSeries p{MeasureId::af3m, scale, {}, {}};
  for (const auto& [period, da] : a) {
    const auto ib = b.find(period);
    const auto ic = c.find(period);
    if (ib == b.end() || ic == c.end()) continue;
    CompensatedSum sum;
    sum.add(da);
    sum.add(ib->second);
    sum.add(ic->second);
    p.periods.push_back(period);
    p.values.push_back(std::clamp(sum.value() / 3.0, 0.0, 1.0));
  }
  return p;
}

std::optional<AntifragilityResult> antifragility(const SatisfactionSeries& sat,
                                                 const PerturbationSeries& perturbation,
                                                 MeasureId measure) {
  if (sat.scale != perturbation.scale) {
    throw std::invalid_argument("antifragility: satisfaction and perturbation scales differ");
  }
  AntifragilityResult r;
  r.agent_id = sat.agent_id;
  r.measure = measure;
  r.scale = sat.scale;
  std::size_t j = 0;
  for (std::size_t k = 0; k < sat.periods.size(); ++k) {
    while (j < perturbation.periods.size() && perturbation.periods[j] < sat.periods[k]) ++j;
    if (j == perturbation.periods.size()) break;
    if (perturbation.periods[j] != sat.periods[k]) continue;
    r.periods.push_back(sat.periods[k]);
    r.instant_values.push_back(sat.values[k] * perturbation.values[j]);
  }
  if (r.instant_values.empty()) return std::nullopt;
  r.n_used = r.instant_values.size();
  const auto [lo, hi] = std::minmax_element(r.instant_values.begin(), r.instant_values.end());
  // The mean lies in [min, max]; the clamp only absorbs rounding.
  r.global = std::clamp(compensated_mean(r.instant_values), *lo, *hi);
  return r;
}

namespace {

const NormalizedIndex& require_index(const NormalizedPanel& panel, IndexId id,
                                     MeasureId measure) {
  const auto it = panel.indexes.find(id);
  if (it == panel.indexes.end()) {
    throw DataError("measure " + std::string(to_string(measure)) + " needs index " +
                    std::string(to_string(id)) + " data in window " + panel.window.label);
  }
  return it->second;
}

PerturbationSeries perturbation_for(MeasureId m, const NormalizedPanel& panel,
                                    std::span<const SatisfactionSeries> satisfactions) {
  switch (m) {
    case MeasureId::afp: return perturb_price(panel);
    case MeasureId::afv:
      return panel.market_kind == MarketKind::stock ? perturb_volume_stock(satisfactions, panel)
                                                    : perturb_volume_crypto(panel);
    case MeasureId::afm: return perturb_marketcap(panel);
    case MeasureId::afn: return perturb_normalized_price(satisfactions, panel);
    case MeasureId::afx: return perturb_vix(require_index(panel, IndexId::vix, m), panel.scale);
    case MeasureId::af3m:
      return perturb_three_indexes(require_index(panel, IndexId::nasdaq, m),
                                   require_index(panel, IndexId::dji, m),
                                   require_index(panel, IndexId::spx, m), panel.scale);
  }
  throw std::invalid_argument("unknown measure");
}

}  // namespace

MeasureRun compute_measures(const NormalizedPanel& panel, std::span<const MeasureId> measures,
                            unsigned workers) {
  MeasureRun run;
  run.scale = panel.scale;
  run.satisfactions.resize(panel.agents.size());
  parallel_for(panel.agents.size(), workers, [&](std::size_t i) {
    run.satisfactions[i] = satisfaction(panel.agents[i].price);
  });

  for (MeasureId m : measures) {
    if (!measure_valid_for(m, panel.market_kind)) {
      throw std::invalid_argument("measure " + std::string(to_string(m)) + " invalid for " +
                                  std::string(to_string(panel.market_kind)));
    }
    PerturbationSeries p;
    try {
      p = perturbation_for(m, panel, run.satisfactions);
    } catch (const DataError& e) {
      // A perturbation with no defined period cannot rate anyone; a missing
      // index still aborts the run.
      if (m == MeasureId::afx || m == MeasureId::af3m) throw;
      run.exclusions.push_back("window " + panel.window.label + ", scale " +
                               std::to_string(code_of(panel.scale)) + ", measure " +
                               std::string(to_string(m)) + " skipped: " + e.what());
      continue;
    }

    std::vector<std::optional<AntifragilityResult>> per_agent(panel.agents.size());
    parallel_for(panel.agents.size(), workers, [&](std::size_t i) {
      per_agent[i] = antifragility(run.satisfactions[i], p, m);
    });
    for (std::size_t i = 0; i < per_agent.size(); ++i) {
      if (per_agent[i]) {
        run.results.push_back(std::move(*per_agent[i]));
      } else {
        run.exclusions.push_back("window " + panel.window.label + ", scale " +
                                 std::to_string(code_of(panel.scale)) + ", measure " +
                                 std::string(to_string(m)) + ": agent " +
                                 panel.agents[i].agent_id +
                                 " excluded, no period with both S and P defined");
      }
    }
    run.perturbations.emplace(m, std::move(p));
  }
  check_bounds(run);
  return run;
}

void check_bounds(const MeasureRun& run) {
  for (const auto& s : run.satisfactions) {
    for (std::size_t k = 0; k < s.values.size(); ++k) {
      if (!(s.values[k] >= -1.0 && s.values[k] <= 1.0)) {
        throw InvariantViolation(bound_message("S", s.agent_id, s.periods[k], s.values[k]));
      }
    }
  }
  for (const auto& [m, p] : run.perturbations) {
    for (std::size_t k = 0; k < p.values.size(); ++k) {
      if (!(p.values[k] >= 0.0 && p.values[k] <= 1.0)) {
        throw InvariantViolation(
            bound_message("P", std::string(to_string(m)), p.periods[k], p.values[k]));
      }
    }
  }
  for (const auto& r : run.results) {
    double max_abs = 0.0;
    for (std::size_t k = 0; k < r.instant_values.size(); ++k) {
      const double a = r.instant_values[k];
      if (!(a >= -1.0 && a <= 1.0)) {
        throw InvariantViolation(bound_message("A(x,i)", r.agent_id, r.periods[k], a));
      }
      max_abs = std::max(max_abs, std::fabs(a));
    }
    if (r.n_used == 0 || !(std::fabs(r.global) <= max_abs)) {
      throw InvariantViolation("A(x) for " + r.agent_id + " exceeds max |A(x,i)|");
    }
  }
}

}  // namespace antifrag
