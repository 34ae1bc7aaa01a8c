#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "antifrag/normalization.hpp"
#include "antifrag/types.hpp"

namespace antifrag {

// S(x, i) = p_i - p_{i-1} on consecutive observations of the agent's own
// normalized price sequence, dated at the later observation.
struct SatisfactionSeries {
  std::string agent_id;
  TimeScale scale = TimeScale::daily;
  std::vector<Date> periods;
  std::vector<double> values;  // each in [-1, 1]
};

// One agent's P(x, i) before the system average.
struct AgentContribution {
  std::string agent_id;
  std::vector<Date> periods;
  std::vector<double> values;
};

// System-level P(i).
struct PerturbationSeries {
  MeasureId measure = MeasureId::afp;
  TimeScale scale = TimeScale::daily;
  std::vector<Date> periods;
  std::vector<double> values;  // each in [0, 1]
};

struct AntifragilityResult {
  std::string agent_id;
  MeasureId measure = MeasureId::afp;
  TimeScale scale = TimeScale::daily;
  std::vector<Date> periods;
  std::vector<double> instant_values;  // A(x, i) = S(x, i) * P(i)
  double global = 0.0;                 // A(x), mean of instant_values
  std::size_t n_used = 0;
};

SatisfactionSeries satisfaction(const NormalizedSeries& prices);

// Mean over the agents defined at each period, k counting only those agents.
// Summation runs in the order of `contributions`, compensated.
PerturbationSeries system_mean(MeasureId measure, TimeScale scale,
                               std::span<const AgentContribution> contributions);

// Per-agent contributions for the agent-level measures. `satisfactions` must
// be parallel to panel.agents; it is only read for afv (stocks) and afn.
// afp here is |normalized open difference| for both market kinds; the crypto
// raw-difference route is price_contributions_raw.
std::vector<AgentContribution> agent_contributions(
    MeasureId measure, const NormalizedPanel& panel,
    std::span<const SatisfactionSeries> satisfactions, unsigned workers = 1);

// |raw open_i - raw open_{i-1}| per agent, used by crypto afp.
std::vector<AgentContribution> price_contributions_raw(const NormalizedPanel& panel);

// afp. Stocks: mean of normalized-open differences. Crypto: mean of raw
// differences, then the system series is min-max normalized.
PerturbationSeries perturb_price(const NormalizedPanel& panel);
PerturbationSeries perturb_volume_stock(std::span<const SatisfactionSeries> satisfactions,
                                        const NormalizedPanel& panel);
PerturbationSeries perturb_volume_crypto(const NormalizedPanel& panel);
PerturbationSeries perturb_marketcap(const NormalizedPanel& panel);
PerturbationSeries perturb_normalized_price(std::span<const SatisfactionSeries> satisfactions,
                                            const NormalizedPanel& panel);
PerturbationSeries perturb_vix(const NormalizedIndex& vix, TimeScale scale);
PerturbationSeries perturb_three_indexes(const NormalizedIndex& nasdaq, const NormalizedIndex& dji,
                                         const NormalizedIndex& spx, TimeScale scale);

// A(x, i) on the periods where both series are defined, and their mean.
// Nullopt when the two share no period.
std::optional<AntifragilityResult> antifragility(const SatisfactionSeries& satisfaction,
                                                 const PerturbationSeries& perturbation,
                                                 MeasureId measure);

struct MeasureRun {
  TimeScale scale = TimeScale::daily;
  std::vector<SatisfactionSeries> satisfactions;  // parallel to panel.agents
  std::map<MeasureId, PerturbationSeries> perturbations;
  // Ordered by measure (as requested), then agent_id.
  std::vector<AntifragilityResult> results;
  // Agents dropped from a measure, one human-readable line each.
  std::vector<std::string> exclusions;
};

// Everything for one panel. A measure whose perturbation is defined nowhere
// is skipped and noted in `exclusions`; a missing index is an error. Bounds
// are checked before returning.
MeasureRun compute_measures(const NormalizedPanel& panel, std::span<const MeasureId> measures,
                            unsigned workers = 1);

// Throws InvariantViolation on the first out-of-range S, P or A value.
void check_bounds(const MeasureRun& run);

}  // namespace antifrag
