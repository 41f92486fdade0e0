#include <algorithm>
#include <set>

#include "arceval/document.hpp"

namespace arceval {

// ── Quoting ───────────────────────────────────────────────────────────────

std::string quote_string(std::string_view raw) {
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') out += "\\\"";
        else if (c == '\\') out += "\\\\";
        else if (c == '\n') out += "\\n";
        else out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string label_list_text(const std::vector<ArtefactRef>& refs) {
    std::string out = "[";
    for (std::size_t i = 0; i < refs.size(); ++i) {
        if (i) out += ", ";
        out += to_string(refs[i]);
    }
    out += ']';
    return out;
}

// Scenario ids serialize as labels when lexically possible and not
// shadowed by a quality-attribute name; otherwise they are quoted.
std::string scenario_id_text(const std::string& id) {
    if (is_label_token(id) && !parse_quality(id)) return id;
    return quote_string(id);
}

}  // namespace

// ── Per-block serializers ─────────────────────────────────────────────────

std::string serialize_scenario(const ContextScenario& s) {
    std::string out = "scenario " + quote_string(s.id) + " {\n";
    if (s.seq) out += "  seq: " + std::to_string(*s.seq) + "\n";
    out += "  quality: " + std::string(to_string(s.quality)) + "\n";
    if (s.priority != Band::unset)
        out += "  priority: " + std::string(to_string(s.priority)) + "\n";
    out += "  source: " + quote_string(s.source) + "\n";
    out += "  stimulus: " + quote_string(s.stimulus) + "\n";
    out += "  environment: " + quote_string(s.environment) + "\n";
    out += "  artefacts: " + label_list_text(s.artefacts) + "\n";
    out += "  response: " + quote_string(s.response) + "\n";
    if (!s.measures.empty()) {
        out += "  measures: [";
        for (std::size_t i = 0; i < s.measures.size(); ++i) {
            if (i) out += ", ";
            out += s.measures[i].text();
        }
        out += "]\n";
    }
    if (!s.external_assessments.empty()) {
        out += "  external: [";
        for (std::size_t i = 0; i < s.external_assessments.size(); ++i) {
            const ExternalAssessment& e = s.external_assessments[i];
            if (i) out += ", ";
            out += "[" + quote_string(e.name) + ", ";
            out += !e.recorded ? "pending" : (*e.recorded ? "pass" : "fail");
            out += ", " + quote_string(e.note) + "]";
        }
        out += "]\n";
    }
    out += "}\n";
    return out;
}

std::string serialize_architecture(const ArchitectureModel& m) {
    std::string out = "architecture " + quote_string(m.name) + " {\n";
    out += "  version: " + quote_string(m.version_label) + "\n";
    for (const Component& c : m.components) {
        out += "  component: [" + c.id + ", " + std::string(to_string(c.artefact)) +
               ", " + quote_string(c.description) + "]\n";
    }
    for (const ArchApproach& a : m.approaches) {
        out += "  approach: [" + a.id + ", " + std::string(to_string(a.kind)) + ", [";
        for (std::size_t i = 0; i < a.components.size(); ++i) {
            if (i) out += ", ";
            out += a.components[i];
        }
        out += "], [";
        for (std::size_t i = 0; i < a.supports.size(); ++i) {
            if (i) out += ", ";
            const SupportRef& ref = a.supports[i];
            if (ref.is_quality()) out += to_string(ref.quality());
            else out += scenario_id_text(ref.scenario_id());
        }
        out += "], " + std::string(to_string(a.coverage)) + "]\n";
    }
    out += "}\n";
    return out;
}

std::string serialize_governance(const GovernanceSet& g) {
    std::string out = "governance " + quote_string(g.name) + " {\n";
    for (const GovernanceTag& tag : g.tags) {
        out += "  tag: [" + tag.id + ", " + quote_string(tag.text) + ", [";
        for (std::size_t i = 0; i < tag.default_qualities.size(); ++i) {
            if (i) out += ", ";
            out += to_string(tag.default_qualities[i]);
        }
        out += "]]\n";
    }
    out += "}\n";
    return out;
}

std::string serialize_priorities(const std::string& stakeholder,
                                 const std::vector<PriorityInput>& inputs) {
    std::string out = "priorities " + quote_string(stakeholder) + " {\n";
    for (const PriorityInput& in : inputs) {
        if (in.stakeholder != stakeholder) continue;
        out += "  rate: [" + scenario_id_text(in.scenario_id) + ", " +
               std::to_string(in.impact) + ", " + std::to_string(in.risk) + ", " +
               std::to_string(in.relevance) + "]\n";
    }
    out += "}\n";
    return out;
}

std::string serialize_general(const GeneralScenario& g) {
    std::string out = "general " + quote_string(std::string(to_string(g.quality))) + " {\n";
    out += "  source: " + quote_string(g.source_template) + "\n";
    out += "  stimulus: " + quote_string(g.stimulus_template) + "\n";
    out += "  environment: " + quote_string(g.environment_template) + "\n";
    out += "  artefacts: " + label_list_text(g.artefacts) + "\n";
    out += "  response: " + quote_string(g.response_template) + "\n";
    for (const std::string& m : g.measure_templates)
        out += "  measure: " + quote_string(m) + "\n";
    if (!g.suggested_metrics.empty()) {
        out += "  metrics: [";
        for (std::size_t i = 0; i < g.suggested_metrics.size(); ++i) {
            if (i) out += ", ";
            out += to_string(g.suggested_metrics[i]);
        }
        out += "]\n";
    }
    out += "}\n";
    return out;
}

// ── Document ──────────────────────────────────────────────────────────────

std::string serialize(const Document& doc) {
    std::string out;
    bool first = true;
    for (auto [kind, idx] : doc.order) {
        if (!first) out += '\n';
        first = false;
        switch (kind) {
            case BlockKind::scenario:
                out += serialize_scenario(doc.scenarios[idx]);
                break;
            case BlockKind::architecture:
                out += serialize_architecture(doc.architectures[idx]);
                break;
            case BlockKind::governance:
                out += serialize_governance(doc.governance[idx]);
                break;
            case BlockKind::priorities:
                out += serialize_priorities(doc.priorities[idx].stakeholder,
                                            doc.priorities);
                break;
            case BlockKind::general:
                out += serialize_general(doc.generals[idx]);
                break;
        }
    }
    return out;
}

// ── validate ──────────────────────────────────────────────────────────────

std::string_view to_string(FindingLevel l) {
    return l == FindingLevel::info ? "info" : "warning";
}

std::string Finding::to_string() const {
    return std::string(arceval::to_string(level)) + ": " + subject + ": " + message;
}

std::vector<Finding> validate(const ContextScenario& scenario,
                              const std::vector<GeneralScenario>& catalogue) {
    std::vector<Finding> findings;

    if (scenario.measures.empty() && scenario.external_assessments.empty()) {
        findings.push_back({FindingLevel::warning, scenario.id,
                            "scenario has no response measures"});
    }

    const GeneralScenario* general = nullptr;
    for (const GeneralScenario& g : catalogue) {
        if (g.quality == scenario.quality) general = &g;
    }
    if (general) {
        for (ArtefactRef a : scenario.artefacts) {
            const bool known = std::find(general->artefacts.begin(),
                                         general->artefacts.end(),
                                         a) != general->artefacts.end();
            if (!known) {
                findings.push_back(
                    {FindingLevel::info, scenario.id,
                     "artefact " + std::string(to_string(a)) + " is not part of the " +
                         std::string(to_string(scenario.quality)) +
                         " general scenario"});
            }
        }
    }

    for (const ExternalAssessment& slot : scenario.external_assessments) {
        findings.push_back(
            {FindingLevel::warning, scenario.id,
             "measure \"" + slot.name +
                 "\" is human-judged and requires an external assessment record"});
    }
    return findings;
}

}  // namespace arceval
