#include "arceval/prioritiser.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "arceval/monitor.hpp"

namespace arceval {

bool operator==(const PriorityInput& a, const PriorityInput& b) {
    return a.scenario_id == b.scenario_id && a.impact == b.impact &&
           a.risk == b.risk && a.relevance == b.relevance &&
           a.stakeholder == b.stakeholder;
}

Band band_for_score(double score, const BandCutoffs& cutoffs) {
    if (score >= cutoffs.high) return Band::high;
    if (score >= cutoffs.medium) return Band::medium;
    return Band::low;
}

namespace {

double recompute_score(const PriorityResult& r) {
    const Weights& w = r.weights;
    return (w.impact * r.impact_mean + w.risk * r.risk_mean +
            w.relevance * r.relevance_mean) /
           (w.impact + w.risk + w.relevance);
}

void check_score(int v, const char* what, const PriorityInput& in) {
    if (v < 1 || v > 5)
        throw std::invalid_argument(std::string(what) + " score " +
                                    std::to_string(v) + " for scenario \"" +
                                    in.scenario_id + "\" is outside 1-5");
}

}  // namespace

void assign_ranks(std::vector<PriorityResult>& results) {
    std::sort(results.begin(), results.end(),
              [](const PriorityResult& a, const PriorityResult& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return a.scenario_id < b.scenario_id;
              });
    for (std::size_t i = 0; i < results.size(); ++i) results[i].rank = i + 1;
}

std::vector<PriorityResult> prioritise(const std::vector<PriorityInput>& inputs,
                                       const Weights& weights,
                                       const BandCutoffs& cutoffs) {
    if (weights.impact < 0 || weights.risk < 0 || weights.relevance < 0)
        throw std::invalid_argument("weights must be non-negative");
    if (weights.impact + weights.risk + weights.relevance <= 0)
        throw std::invalid_argument("weights must not all be zero");

    // scenario -> per-stakeholder component triples
    std::map<std::string, std::vector<const PriorityInput*>> by_scenario;
    std::set<std::pair<std::string, std::string>> seen;
    for (const PriorityInput& in : inputs) {
        check_score(in.impact, "impact", in);
        check_score(in.risk, "risk", in);
        check_score(in.relevance, "relevance", in);
        if (!seen.insert({in.scenario_id, in.stakeholder}).second)
            throw std::invalid_argument("duplicate priority input for scenario \"" +
                                        in.scenario_id + "\" from stakeholder \"" +
                                        in.stakeholder + "\"");
        by_scenario[in.scenario_id].push_back(&in);
    }

    std::vector<PriorityResult> results;
    for (const auto& [id, rows] : by_scenario) {
        PriorityResult r;
        r.scenario_id = id;
        r.weights = weights;
        r.cutoffs = cutoffs;
        for (const PriorityInput* in : rows) {
            r.impact_mean += in->impact;
            r.risk_mean += in->risk;
            r.relevance_mean += in->relevance;
        }
        const auto n = static_cast<double>(rows.size());
        r.impact_mean /= n;
        r.risk_mean /= n;
        r.relevance_mean /= n;
        r.score = recompute_score(r);
        r.band = band_for_score(r.score, cutoffs);
        results.push_back(std::move(r));
    }
    assign_ranks(results);
    return results;
}

std::vector<PriorityResult> prioritise(const std::vector<std::string>& scenario_ids,
                                       const std::vector<PriorityInput>& inputs,
                                       const Weights& weights,
                                       const BandCutoffs& cutoffs) {
    for (const std::string& id : scenario_ids) {
        const bool has_input =
            std::any_of(inputs.begin(), inputs.end(),
                        [&](const PriorityInput& in) { return in.scenario_id == id; });
        if (!has_input)
            throw std::invalid_argument("scenario \"" + id + "\" has no priority input");
    }
    return prioritise(inputs, weights, cutoffs);
}

std::vector<PriorityResult> apply_band_overrides(
    std::vector<PriorityResult> results,
    const std::vector<ContextScenario>& scenarios) {
    for (PriorityResult& r : results) {
        for (const ContextScenario& s : scenarios) {
            if (s.id == r.scenario_id && s.priority != Band::unset) {
                r.band = s.priority;
                r.manual_band = true;
            }
        }
    }
    return results;
}

std::vector<PriorityResult> reprioritise(std::vector<PriorityResult> results,
                                         const std::vector<ViolationSummary>& violations) {
    for (const ViolationSummary& v : violations) {
        auto it = std::find_if(results.begin(), results.end(),
                               [&](const PriorityResult& r) {
                                   return r.scenario_id == v.scenario_id;
                               });
        if (it == results.end())
            throw std::invalid_argument("violation summary references unknown scenario \"" +
                                        v.scenario_id + "\"");
        if (!v.persistent) continue;
        it->risk_mean = 5.0;
        it->score = recompute_score(*it);
        it->band = band_for_score(it->score, it->cutoffs);
        it->manual_band = false;  // violation evidence supersedes a manual call
    }
    assign_ranks(results);
    return results;
}

}  // namespace arceval
