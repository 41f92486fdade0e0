#pragma once

#include <string>
#include <variant>
#include <vector>

#include "arceval/scenario.hpp"
#include "arceval/vocab.hpp"

namespace arceval {

/// One architecture component: an instantiation of an agent artefact.
struct Component {
    std::string id;
    ArtefactRef artefact = ArtefactRef::agent;
    std::string description;

    bool operator==(const Component&) const = default;
};

/// A `supports` entry: either a scenario id or a quality attribute.
struct SupportRef {
    std::variant<std::string, QualityAttribute> target;

    bool is_quality() const { return target.index() == 1; }
    const std::string& scenario_id() const { return std::get<0>(target); }
    QualityAttribute quality() const { return std::get<1>(target); }

    static SupportRef scenario(std::string id) { return {std::move(id)}; }
    static SupportRef of(QualityAttribute q) { return {q}; }
    bool operator==(const SupportRef&) const = default;
};

/// An architecture approach: a pattern, tactic, design decision or
/// guardrail, with the components it involves and the scenarios/qualities
/// it claims to support.
struct ArchApproach {
    std::string id;
    ApproachKind kind = ApproachKind::tactic;
    std::vector<std::string> components;  // component ids
    std::vector<SupportRef> supports;
    ApproachCoverage coverage = ApproachCoverage::full;

    bool supports_scenario(const std::string& scenario_id,
                           QualityAttribute quality) const;
    bool operator==(const ArchApproach&) const = default;
};

/// One revision of an agent architecture.
struct ArchitectureModel {
    std::string name;
    std::string version_label;
    std::vector<Component> components;
    std::vector<ArchApproach> approaches;
    SourceSpan span;

    const Component* find_component(const std::string& id) const;
    bool has_artefact(ArtefactRef a) const;
};

bool operator==(const ArchitectureModel& a, const ArchitectureModel& b);

}  // namespace arceval
