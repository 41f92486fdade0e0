#pragma once

#include <string>
#include <vector>

#include "arceval/scenario.hpp"
#include "arceval/vocab.hpp"

namespace arceval {

struct ViolationSummary;  // monitor.hpp

/// One stakeholder's 1–5 scoring of one scenario.
struct PriorityInput {
    std::string scenario_id;
    int impact = 0;
    int risk = 0;
    int relevance = 0;
    std::string stakeholder;
    SourceSpan span;
};

bool operator==(const PriorityInput& a, const PriorityInput& b);

struct Weights {
    double impact = 1;
    double risk = 1;
    double relevance = 1;

    bool operator==(const Weights&) const = default;
};

/// Band cut-offs, overridable per workspace: score >= high -> high,
/// >= medium -> medium, else low.
struct BandCutoffs {
    double high = 4.0;
    double medium = 2.5;

    bool operator==(const BandCutoffs&) const = default;
};

Band band_for_score(double score, const BandCutoffs& cutoffs = {});

struct PriorityResult {
    std::string scenario_id;
    double score = 0;  // weighted mean of per-stakeholder means, in [1,5]
    Band band = Band::low;
    std::size_t rank = 0;  // 1-based, dense permutation
    bool manual_band = false;  // band shadowed by a direct override

    // Component means kept so reprioritisation can recompute the score.
    double impact_mean = 0;
    double risk_mean = 0;
    double relevance_mean = 0;
    Weights weights;
    BandCutoffs cutoffs;
};

/// Ranks the scenarios appearing in the inputs. Per stakeholder the three
/// scores are combined by weighted mean; stakeholder means are then
/// averaged. Ranks order by descending score with ties broken by ascending
/// scenario id. Throws std::invalid_argument on all-zero or negative
/// weights, out-of-range scores, or duplicate (scenario, stakeholder)
/// pairs.
std::vector<PriorityResult> prioritise(const std::vector<PriorityInput>& inputs,
                                       const Weights& weights = {},
                                       const BandCutoffs& cutoffs = {});

/// As above, but additionally requires every id in `scenario_ids` to have
/// at least one input.
std::vector<PriorityResult> prioritise(const std::vector<std::string>& scenario_ids,
                                       const std::vector<PriorityInput>& inputs,
                                       const Weights& weights = {},
                                       const BandCutoffs& cutoffs = {});

/// Applies direct band overrides (scenario priority fields) on top of
/// computed results; overridden entries are flagged manual. Ranks are
/// unchanged — overrides shadow the band, not the score.
std::vector<PriorityResult> apply_band_overrides(
    std::vector<PriorityResult> results, const std::vector<ContextScenario>& scenarios);

/// Raises the risk component to 5 for every scenario with a persistent
/// violation, recomputes scores and re-ranks. Scenarios without violations
/// keep their prior scores. Throws std::invalid_argument on a summary for
/// an unknown scenario.
std::vector<PriorityResult> reprioritise(std::vector<PriorityResult> results,
                                         const std::vector<ViolationSummary>& violations);

/// Re-sorts and rewrites ranks (descending score, id tiebreak).
void assign_ranks(std::vector<PriorityResult>& results);

}  // namespace arceval
