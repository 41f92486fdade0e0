#include "arceval/workspace.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace arceval {

namespace fs = std::filesystem;

// ── ProcessState ──────────────────────────────────────────────────────────

namespace {

const std::vector<ProcessStep>& prerequisites(ProcessStep s) {
    static const std::map<ProcessStep, std::vector<ProcessStep>> table = {
        {ProcessStep::understand_goals, {}},
        {ProcessStep::review_governance, {}},
        {ProcessStep::identify_requirements,
         {ProcessStep::understand_goals, ProcessStep::review_governance}},
        {ProcessStep::review_architecture, {}},
        {ProcessStep::define_scenarios, {ProcessStep::identify_requirements}},
        {ProcessStep::prioritise_scenarios, {ProcessStep::define_scenarios}},
        {ProcessStep::analyse_architecture,
         {ProcessStep::prioritise_scenarios, ProcessStep::review_architecture}},
        {ProcessStep::improve_architecture, {ProcessStep::analyse_architecture}},
        {ProcessStep::monitor_risks, {ProcessStep::improve_architecture}},
        {ProcessStep::reprioritise, {ProcessStep::monitor_risks}},
    };
    return table.at(s);
}

}  // namespace

std::vector<ProcessStep> ProcessState::missing_for(ProcessStep s) const {
    std::vector<ProcessStep> missing;
    for (ProcessStep pre : prerequisites(s)) {
        if (!done(pre)) missing.push_back(pre);
    }
    return missing;
}

bool operator==(const ProcessState& a, const ProcessState& b) {
    return a.completed == b.completed;
}

ProcessOrderError::ProcessOrderError(std::vector<ProcessStep> steps)
    : std::runtime_error([&steps] {
          std::string msg = "missing prerequisite step";
          if (steps.size() > 1) msg += 's';
          msg += ':';
          for (ProcessStep s : steps) {
              msg += ' ';
              msg += to_string(s);
          }
          return msg;
      }()),
      missing(std::move(steps)) {}

// ── Workspace accessors ───────────────────────────────────────────────────

std::vector<GovernanceTag> Workspace::all_tags() const {
    std::vector<GovernanceTag> out;
    for (const GovernanceSet& set : governance)
        out.insert(out.end(), set.tags.begin(), set.tags.end());
    return out;
}

const ArchitectureModel* Workspace::current() const {
    if (architectures.empty()) return nullptr;
    if (current_architecture) {
        for (const ArchitectureModel& m : architectures)
            if (m.name == *current_architecture) return &m;
        return nullptr;
    }
    return &architectures.back();
}

const ContextScenario* Workspace::find_scenario(const std::string& id) const {
    for (const ContextScenario& s : scenarios)
        if (s.id == id) return &s;
    return nullptr;
}

// ── advance ───────────────────────────────────────────────────────────────

namespace {

void validate_ledger_refs(const Workspace& ws);

void merge_payload(Workspace& ws, const AdvancePayload& payload) {
    for (const GoalStatement& g : payload.goals) {
        const bool dup = std::any_of(ws.goals.begin(), ws.goals.end(),
                                     [&](const GoalStatement& e) { return e.id == g.id; });
        if (dup) throw std::invalid_argument("duplicate goal id \"" + g.id + "\"");
        ws.goals.push_back(g);
    }

    for (const GovernanceSet& set : payload.governance) {
        const bool dup = std::any_of(
            ws.governance.begin(), ws.governance.end(),
            [&](const GovernanceSet& e) { return e.name == set.name; });
        if (dup)
            throw std::invalid_argument("duplicate governance set \"" + set.name + "\"");
        ws.governance.push_back(set);
    }

    if (!payload.requirements.empty()) {
        const std::vector<GovernanceTag> tags = ws.all_tags();
        for (const QualityRequirement& req : payload.requirements) {
            const bool dup = std::any_of(
                ws.requirements.begin(), ws.requirements.end(),
                [&](const QualityRequirement& e) { return e.quality == req.quality; });
            if (dup)
                throw std::invalid_argument("duplicate requirement for quality " +
                                            std::string(to_string(req.quality)));
            for (const std::string& ref : req.governance_refs) {
                const bool known =
                    std::any_of(tags.begin(), tags.end(),
                                [&](const GovernanceTag& t) { return t.id == ref; });
                if (!known)
                    throw std::invalid_argument("requirement references unknown governance tag \"" +
                                                ref + "\"");
            }
            ws.requirements.push_back(req);
        }
    }

    for (const ArchitectureModel& m : payload.architectures) {
        const bool dup = std::any_of(
            ws.architectures.begin(), ws.architectures.end(),
            [&](const ArchitectureModel& e) { return e.name == m.name; });
        if (dup) throw std::invalid_argument("duplicate architecture \"" + m.name + "\"");
        ws.architectures.push_back(m);
    }
    if (payload.current_architecture) {
        const std::string& name = *payload.current_architecture;
        const bool known = std::any_of(
            ws.architectures.begin(), ws.architectures.end(),
            [&](const ArchitectureModel& e) { return e.name == name; });
        if (!known) throw std::invalid_argument("unknown architecture \"" + name + "\"");
        ws.current_architecture = name;
    }

    for (const ContextScenario& s : payload.scenarios) {
        if (ws.find_scenario(s.id))
            throw std::invalid_argument("duplicate scenario id \"" + s.id + "\"");
        const bool covered = std::any_of(
            ws.requirements.begin(), ws.requirements.end(),
            [&](const QualityRequirement& r) { return r.quality == s.quality; });
        if (!covered)
            throw std::invalid_argument("scenario \"" + s.id + "\" references quality " +
                                        std::string(to_string(s.quality)) +
                                        " outside the identified requirements");
        ws.scenarios.push_back(s);
    }

    ws.priority_inputs.insert(ws.priority_inputs.end(), payload.priority_inputs.begin(),
                              payload.priority_inputs.end());
    if (!payload.priorities.empty()) ws.priorities = payload.priorities;
    if (payload.weights) ws.weights = *payload.weights;
    if (payload.band_cutoffs) ws.band_cutoffs = *payload.band_cutoffs;
    ws.analysis.merge(payload.ledger);
    validate_ledger_refs(ws);
}

void validate_ledger_refs(const Workspace& ws) {
    auto approach_known = [&](const std::string& id) {
        for (const ArchitectureModel& m : ws.architectures)
            for (const ArchApproach& a : m.approaches)
                if (a.id == id) return true;
        return false;
    };

    for (const Risk& r : ws.analysis.risks) {
        if (r.scenarios.empty() && r.approaches.empty())
            throw std::invalid_argument("risk \"" + r.id +
                                        "\" cites no scenario or approach");
        for (const std::string& sid : r.scenarios)
            if (!ws.find_scenario(sid))
                throw std::invalid_argument("risk \"" + r.id +
                                            "\" cites unknown scenario \"" + sid + "\"");
        for (const std::string& aid : r.approaches)
            if (!approach_known(aid))
                throw std::invalid_argument("risk \"" + r.id +
                                            "\" cites unknown approach \"" + aid + "\"");
    }
    for (const Tradeoff& t : ws.analysis.tradeoffs) {
        std::set<QualityAttribute> distinct(t.qualities.begin(), t.qualities.end());
        if (distinct.size() < 2)
            throw std::invalid_argument("tradeoff \"" + t.id +
                                        "\" needs at least two distinct qualities");
        if (!approach_known(t.approach))
            throw std::invalid_argument("tradeoff \"" + t.id +
                                        "\" cites unknown approach \"" + t.approach + "\"");
    }
    for (const SensitivityPoint& s : ws.analysis.sensitivities) {
        if (!approach_known(s.approach))
            throw std::invalid_argument("sensitivity \"" + s.id +
                                        "\" cites unknown approach \"" + s.approach + "\"");
    }
    for (const Recommendation& r : ws.analysis.recommendations) {
        for (const std::string& rid : r.addresses)
            if (!ws.analysis.find_risk(rid))
                throw std::invalid_argument("recommendation \"" + r.id +
                                            "\" addresses unknown risk \"" + rid + "\"");
        if (!r.target.empty()) {
            const bool known = std::any_of(
                ws.architectures.begin(), ws.architectures.end(),
                [&](const ArchitectureModel& m) { return m.name == r.target; });
            if (!known)
                throw std::invalid_argument("recommendation \"" + r.id +
                                            "\" targets unknown architecture \"" +
                                            r.target + "\"");
        }
    }
}

}  // namespace

Workspace advance(Workspace ws, ProcessStep step, const AdvancePayload& payload) {
    std::vector<ProcessStep> missing = ws.state.missing_for(step);
    if (!missing.empty()) throw ProcessOrderError(std::move(missing));

    merge_payload(ws, payload);
    ws.state.completed.insert(step);
    if (step == ProcessStep::reprioritise) {
        ws.state.completed.erase(ProcessStep::analyse_architecture);
        ws.state.completed.erase(ProcessStep::improve_architecture);
    }
    return ws;
}

// ── coverage_check ────────────────────────────────────────────────────────

std::vector<Finding> coverage_check(const Workspace& ws) {
    if (!ws.state.done(ProcessStep::identify_requirements))
        throw ProcessOrderError({ProcessStep::identify_requirements});

    std::vector<Finding> findings;

    for (const GovernanceTag& tag : ws.all_tags()) {
        const bool referenced = std::any_of(
            ws.requirements.begin(), ws.requirements.end(),
            [&](const QualityRequirement& r) {
                return std::find(r.governance_refs.begin(), r.governance_refs.end(),
                                 tag.id) != r.governance_refs.end();
            });
        if (!referenced)
            findings.push_back({FindingLevel::warning, tag.id,
                                "governance tag is not mapped to any requirement"});
    }

    for (const QualityRequirement& req : ws.requirements) {
        const bool has_scenario = std::any_of(
            ws.scenarios.begin(), ws.scenarios.end(),
            [&](const ContextScenario& s) { return s.quality == req.quality; });
        if (!has_scenario)
            findings.push_back({FindingLevel::warning,
                                std::string(to_string(req.quality)),
                                "requirement has no context scenario"});
    }

    for (const ContextScenario& s : ws.scenarios) {
        const bool covered = std::any_of(
            ws.requirements.begin(), ws.requirements.end(),
            [&](const QualityRequirement& r) { return r.quality == s.quality; });
        if (!covered)
            findings.push_back({FindingLevel::warning, s.id,
                                "scenario references a quality outside the requirements"});
    }
    return findings;
}

// ── diff_architectures ────────────────────────────────────────────────────

bool ArchitectureDiff::empty() const {
    return added_components.empty() && removed_components.empty() &&
           modified_components.empty() && added_approaches.empty() &&
           removed_approaches.empty() && modified_approaches.empty();
}

ArchitectureDiff diff_architectures(const ArchitectureModel& before,
                                    const ArchitectureModel& after) {
    ArchitectureDiff diff;

    for (const Component& c : after.components) {
        const Component* old = before.find_component(c.id);
        if (!old) diff.added_components.push_back(c.id);
        else if (!(*old == c)) diff.modified_components.push_back(c.id);
    }
    for (const Component& c : before.components) {
        if (!after.find_component(c.id)) diff.removed_components.push_back(c.id);
    }

    auto find_approach = [](const ArchitectureModel& m, const std::string& id) {
        for (const ArchApproach& a : m.approaches)
            if (a.id == id) return &a;
        return static_cast<const ArchApproach*>(nullptr);
    };
    for (const ArchApproach& a : after.approaches) {
        const ArchApproach* old = find_approach(before, a.id);
        if (!old) diff.added_approaches.push_back(a.id);
        else if (!(*old == a)) diff.modified_approaches.push_back(a.id);
    }
    for (const ArchApproach& a : before.approaches) {
        if (!find_approach(after, a.id)) diff.removed_approaches.push_back(a.id);
    }

    for (auto* list : {&diff.added_components, &diff.removed_components,
                       &diff.modified_components, &diff.added_approaches,
                       &diff.removed_approaches, &diff.modified_approaches})
        std::sort(list->begin(), list->end());
    return diff;
}

}  // namespace arceval
