#include "arceval/analysis.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace arceval {

std::string_view to_string(RiskStatus s) {
    return s == RiskStatus::open ? "open" : "mitigated";
}

std::optional<RiskStatus> parse_risk_status(std::string_view label) {
    if (label == "open") return RiskStatus::open;
    if (label == "mitigated") return RiskStatus::mitigated;
    return std::nullopt;
}

std::string_view to_string(CoverageLevel c) {
    switch (c) {
        case CoverageLevel::full: return "full";
        case CoverageLevel::partial: return "partial";
        case CoverageLevel::none: return "none";
    }
    return "?";
}

// ── AnalysisLedger ────────────────────────────────────────────────────────

Risk* AnalysisLedger::find_risk(const std::string& id) {
    for (Risk& r : risks)
        if (r.id == id) return &r;
    return nullptr;
}

const Risk* AnalysisLedger::find_risk(const std::string& id) const {
    for (const Risk& r : risks)
        if (r.id == id) return &r;
    return nullptr;
}

namespace {

template <typename T>
void merge_by_id(std::vector<T>& into, const std::vector<T>& from) {
    for (const T& entry : from) {
        auto it = std::find_if(into.begin(), into.end(),
                               [&](const T& e) { return e.id == entry.id; });
        if (it == into.end()) into.push_back(entry);
        else *it = entry;
    }
}

}  // namespace

void AnalysisLedger::merge(const AnalysisLedger& other) {
    merge_by_id(risks, other.risks);
    merge_by_id(tradeoffs, other.tradeoffs);
    merge_by_id(sensitivities, other.sensitivities);
    merge_by_id(recommendations, other.recommendations);
    audit.insert(audit.end(), other.audit.begin(), other.audit.end());
}

bool operator==(const AnalysisLedger& a, const AnalysisLedger& b) {
    return a.risks == b.risks && a.tradeoffs == b.tradeoffs &&
           a.sensitivities == b.sensitivities &&
           a.recommendations == b.recommendations && a.audit == b.audit;
}

// ── gap_analysis ──────────────────────────────────────────────────────────

std::vector<ScenarioCoverage> gap_analysis(const std::vector<ContextScenario>& scenarios,
                                           const ArchitectureModel& arch) {
    std::set<std::string> known_ids;
    for (const ContextScenario& s : scenarios) known_ids.insert(s.id);
    for (const ArchApproach& a : arch.approaches) {
        for (const SupportRef& ref : a.supports) {
            if (!ref.is_quality() && !known_ids.count(ref.scenario_id()))
                throw std::invalid_argument("approach \"" + a.id +
                                            "\" supports unknown scenario \"" +
                                            ref.scenario_id() + "\"");
        }
    }

    std::vector<ScenarioCoverage> out;
    for (const ContextScenario& s : scenarios) {
        ScenarioCoverage cov;
        cov.scenario_id = s.id;
        cov.quality = s.quality;

        std::vector<const ArchApproach*> supporting;
        for (const ArchApproach& a : arch.approaches) {
            if (a.supports_scenario(s.id, s.quality)) {
                supporting.push_back(&a);
                cov.supporting_approaches.push_back(a.id);
            }
        }

        if (supporting.empty()) {
            cov.level = CoverageLevel::none;
            cov.justifications.push_back("no approach supports the scenario or its quality");
            out.push_back(std::move(cov));
            continue;
        }

        // Artefacts touched by a full-coverage supporting approach.
        std::set<ArtefactRef> fully_touched;
        bool any_partial_mark = false;
        for (const ArchApproach* a : supporting) {
            if (a->coverage == ApproachCoverage::partial) {
                any_partial_mark = true;
                continue;
            }
            for (const std::string& cid : a->components) {
                if (const Component* c = arch.find_component(cid))
                    fully_touched.insert(c->artefact);
            }
        }

        bool complete = true;
        for (ArtefactRef artefact : s.artefacts) {
            if (!arch.has_artefact(artefact)) {
                cov.justifications.push_back(
                    "artefact " + std::string(to_string(artefact)) +
                    " is not instantiated by this revision");
                continue;
            }
            if (fully_touched.count(artefact)) {
                cov.justifications.push_back("artefact " + std::string(to_string(artefact)) +
                                             " covered");
            } else {
                cov.justifications.push_back("artefact " + std::string(to_string(artefact)) +
                                             " not covered by a supporting approach");
                complete = false;
            }
        }
        if (!complete && any_partial_mark) {
            cov.justifications.push_back("supporting approach declares partial coverage");
        }
        cov.level = complete ? CoverageLevel::full : CoverageLevel::partial;
        out.push_back(std::move(cov));
    }
    return out;
}

// ── Risk bookkeeping ──────────────────────────────────────────────────────

std::string gap_risk_id(const std::string& scenario_id) {
    return "gap-" + scenario_id;
}

namespace {

Band effective_band(const ContextScenario& s,
                    const std::vector<PriorityResult>& priorities) {
    for (const PriorityResult& p : priorities)
        if (p.scenario_id == s.id) return p.band;
    return s.priority;
}

}  // namespace

void record_gap_risks(AnalysisLedger& ledger,
                      const std::vector<ScenarioCoverage>& coverage,
                      const std::vector<ContextScenario>& scenarios,
                      const std::vector<PriorityResult>& priorities) {
    for (const ScenarioCoverage& cov : coverage) {
        if (cov.level == CoverageLevel::full) continue;
        const ContextScenario* scenario = nullptr;
        for (const ContextScenario& s : scenarios)
            if (s.id == cov.scenario_id) scenario = &s;
        if (!scenario || effective_band(*scenario, priorities) != Band::high) continue;

        const std::string id = gap_risk_id(cov.scenario_id);
        if (ledger.find_risk(id)) continue;
        Risk risk;
        risk.id = id;
        risk.text = "architecture coverage for scenario " + cov.scenario_id + " (" +
                    std::string(to_string(cov.quality)) + ") is " +
                    std::string(to_string(cov.level));
        risk.scenarios.push_back(cov.scenario_id);
        risk.approaches = cov.supporting_approaches;
        risk.status = RiskStatus::open;
        ledger.risks.push_back(std::move(risk));
    }
}

void update_mitigations(AnalysisLedger& ledger,
                        const std::vector<ContextScenario>& scenarios,
                        const std::vector<ArchitectureModel>& revisions) {
    for (Risk& risk : ledger.risks) {
        if (risk.status == RiskStatus::mitigated) continue;

        const Recommendation* fix = nullptr;
        for (const Recommendation& rec : ledger.recommendations) {
            if (std::find(rec.addresses.begin(), rec.addresses.end(), risk.id) !=
                rec.addresses.end())
                fix = &rec;
        }
        if (!fix) continue;

        const ArchitectureModel* target = nullptr;
        for (const ArchitectureModel& m : revisions)
            if (m.name == fix->target) target = &m;
        if (!target) continue;

        const auto coverage = gap_analysis(scenarios, *target);
        bool all_full = true;
        for (const std::string& sid : risk.scenarios) {
            for (const ScenarioCoverage& cov : coverage) {
                if (cov.scenario_id == sid && cov.level != CoverageLevel::full)
                    all_full = false;
            }
        }
        if (all_full) risk.status = RiskStatus::mitigated;
    }
}

}  // namespace arceval
