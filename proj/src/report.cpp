#include "arceval/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "arceval/catalogue.hpp"

namespace arceval {

using nlohmann::json;

namespace {

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string shortest(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

std::string quality_list(const std::vector<QualityAttribute>& qs) {
    std::string out;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (i) out += ", ";
        out += to_string(qs[i]);
    }
    return out;
}

std::vector<ScenarioCoverage> current_coverage(const Workspace& ws) {
    const ArchitectureModel* arch = ws.current();
    if (!arch) return {};
    return gap_analysis(ws.scenarios, *arch);
}

// Scenarios in report order: by rank when prioritised, else definition order.
std::vector<const ContextScenario*> ordered_scenarios(const Workspace& ws) {
    std::vector<const ContextScenario*> out;
    if (!ws.priorities.empty()) {
        for (const PriorityResult& r : ws.priorities) {
            if (const ContextScenario* s = ws.find_scenario(r.scenario_id))
                out.push_back(s);
        }
        for (const ContextScenario& s : ws.scenarios) {
            const bool listed = std::any_of(out.begin(), out.end(),
                                            [&](const ContextScenario* e) {
                                                return e->id == s.id;
                                            });
            if (!listed) out.push_back(&s);
        }
    } else {
        for (const ContextScenario& s : ws.scenarios) out.push_back(&s);
    }
    return out;
}

}  // namespace

const std::vector<std::string>& report_headings() {
    static const std::vector<std::string> headings = {
        "Goals",          "Governance Mapping", "Requirements",
        "Prioritised Scenarios", "Coverage",    "Tradeoffs",
        "Risks",          "Recommendations",    "Runtime Verdicts",
        "Audit",
    };
    return headings;
}

std::string render_report(const Workspace& ws,
                          const std::vector<ScenarioVerdicts>& verdicts,
                          const std::vector<ViolationSummary>& summaries) {
    std::string out;
    out += "# AgentArcEval Report: " + ws.name + "\n\n";
    const ArchitectureModel* arch = ws.current();
    out += "architecture: " + (arch ? arch->name : std::string("(none)"));
    if (arch && !arch->version_label.empty())
        out += " (" + arch->version_label + ")";
    out += "\nscenarios: " + std::to_string(ws.scenarios.size()) + "\n";

    // ── Goals ──
    out += "\n## Goals\n";
    if (ws.goals.empty()) out += "(none)\n";
    for (const GoalStatement& g : ws.goals) {
        out += "- [" + g.id + "] " + g.text +
               (g.clarified ? " (clarified)" : " (needs clarification)") + "\n";
    }

    // ── Governance Mapping ──
    out += "\n## Governance Mapping\n";
    const std::vector<GovernanceTag> tags = ws.all_tags();
    if (tags.empty()) out += "(none)\n";
    if (!tags.empty()) {
        const GovernanceMapping mapping = map_governance(tags);
        for (const auto& [id, qualities] : mapping.entries) {
            std::string text;
            for (const GovernanceTag& t : tags)
                if (t.id == id) text = t.text;
            out += "- [" + id + "] " + text + " -> " +
                   (qualities.empty() ? std::string("(unmapped)")
                                      : quality_list(qualities)) +
                   "\n";
        }
    }

    // ── Requirements ──
    out += "\n## Requirements\n";
    if (ws.requirements.empty()) out += "(none)\n";
    for (const QualityRequirement& r : ws.requirements) {
        out += "- " + std::string(to_string(r.quality));
        if (r.guardrail) out += " (guardrail)";
        out += ": " + r.rationale;
        if (!r.governance_refs.empty())
            out += " [governance: " + join_labels(r.governance_refs) + "]";
        out += "\n";
    }

    // ── Prioritised Scenarios ──
    out += "\n## Prioritised Scenarios\n";
    const auto scenarios = ordered_scenarios(ws);
    if (scenarios.empty()) out += "(none)\n";
    for (const ContextScenario* s : scenarios) {
        const PriorityResult* result = nullptr;
        for (const PriorityResult& r : ws.priorities)
            if (r.scenario_id == s->id) result = &r;
        if (result) {
            out += std::to_string(result->rank) + ". " + s->id + " (" +
                   std::string(to_string(s->quality)) + "): score " +
                   fixed2(result->score) + ", band " +
                   std::string(to_string(result->band));
            if (result->manual_band) out += " (manual)";
            out += "\n";
        } else {
            out += "- " + s->id + " (" + std::string(to_string(s->quality)) +
                   "): unprioritised";
            if (s->priority != Band::unset)
                out += ", declared " + std::string(to_string(s->priority));
            out += "\n";
        }
    }

    // ── Coverage ──
    out += "\n## Coverage\n";
    const auto coverage = current_coverage(ws);
    if (coverage.empty()) out += "(no architecture or no scenarios)\n";
    for (const ScenarioCoverage& cov : coverage) {
        out += "- " + cov.scenario_id + " (" + std::string(to_string(cov.quality)) +
               "): " + std::string(to_string(cov.level));
        if (!cov.supporting_approaches.empty())
            out += " [approaches: " + join_labels(cov.supporting_approaches) + "]";
        out += "\n";
        for (const std::string& why : cov.justifications) out += "  - " + why + "\n";
    }

    // ── Tradeoffs ──
    out += "\n## Tradeoffs\n";
    if (ws.analysis.tradeoffs.empty()) out += "(none)\n";
    for (const Tradeoff& t : ws.analysis.tradeoffs) {
        out += "- [" + t.id + "] " + t.text + " (" + quality_list(t.qualities) +
               ") [approach: " + t.approach + "]\n";
    }
    if (!ws.analysis.sensitivities.empty()) {
        out += "sensitivity points:\n";
        for (const SensitivityPoint& s : ws.analysis.sensitivities) {
            out += "- [" + s.id + "] " + s.text + " (" +
                   std::string(to_string(s.quality)) + ") [approach: " + s.approach +
                   "]\n";
        }
    }

    // ── Risks ──
    out += "\n## Risks\n";
    if (ws.analysis.risks.empty()) out += "(none)\n";
    for (const Risk& r : ws.analysis.risks) {
        out += "- [" + r.id + "] " + r.text + " (" +
               std::string(to_string(r.status)) + ")";
        if (!r.scenarios.empty()) out += " [scenarios: " + join_labels(r.scenarios) + "]";
        out += "\n";
    }

    // ── Recommendations ──
    out += "\n## Recommendations\n";
    if (ws.analysis.recommendations.empty()) out += "(none)\n";
    for (const Recommendation& r : ws.analysis.recommendations) {
        out += "- [" + r.id + "] " + r.text;
        if (!r.addresses.empty()) out += " [addresses: " + join_labels(r.addresses) + "]";
        if (!r.target.empty()) out += " [target: " + r.target + "]";
        out += "\n";
    }

    // ── Runtime Verdicts ──
    out += "\n## Runtime Verdicts\n";
    if (verdicts.empty() && summaries.empty()) out += "(no runtime data)\n";
    for (const ScenarioVerdicts& sv : verdicts) {
        out += "- " + sv.scenario_id + ": " + std::string(to_string(sv.outcome)) + "\n";
        for (const MeasureVerdict& v : sv.verdicts) {
            out += "  - " + v.text() + ": " + std::string(to_string(v.outcome));
            if (v.observed) out += " (observed " + shortest(*v.observed) + ")";
            out += " [population " + std::to_string(v.population) + "]\n";
        }
    }
    for (const ViolationSummary& s : summaries) {
        out += "- streak " + s.scenario_id + " / " + s.spec.text() + ": " +
               std::to_string(s.windows_failed) + "/" +
               std::to_string(s.windows_evaluated) + " windows failed, longest streak " +
               std::to_string(s.consecutive_failures) +
               (s.persistent ? " (persistent)" : "") + "\n";
    }

    // ── Audit ──
    out += "\n## Audit\n";
    if (ws.analysis.audit.empty()) out += "(none)\n";
    for (const ReprioritisationAudit& a : ws.analysis.audit) {
        out += "- " + a.scenario_id + ": " + std::string(to_string(a.old_band)) +
               " -> " + std::string(to_string(a.new_band)) + " [" + a.measure_text +
               "]\n";
    }
    return out;
}

std::string render_coverage_json(const Workspace& ws) {
    json arr = json::array();
    for (const ScenarioCoverage& cov : current_coverage(ws)) {
        json j;
        j["scenario"] = cov.scenario_id;
        j["quality"] = std::string(to_string(cov.quality));
        j["coverage"] = std::string(to_string(cov.level));
        j["approaches"] = cov.supporting_approaches;
        j["justifications"] = cov.justifications;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

}  // namespace arceval
