#pragma once

#include <string>
#include <utility>
#include <vector>

#include "arceval/scenario.hpp"
#include "arceval/vocab.hpp"

namespace arceval {

// ── Catalogue types ───────────────────────────────────────────────────────

/// A quality-attribute scenario template not yet bound to a concrete
/// system. The built-in catalogue ships exactly one per quality attribute.
struct GeneralScenario {
    QualityAttribute quality = QualityAttribute::accuracy;
    std::string source_template;
    std::string stimulus_template;
    std::string environment_template;
    std::vector<ArtefactRef> artefacts;
    std::string response_template;
    std::vector<std::string> measure_templates;  // human-readable descriptions
    std::vector<MetricId> suggested_metrics;     // editorial, non-normative
    SourceSpan span;
};

bool operator==(const GeneralScenario& a, const GeneralScenario& b);

/// A governance guardrail statement with its default quality mapping.
struct GovernanceTag {
    std::string id;
    std::string text;
    std::vector<QualityAttribute> default_qualities;
    SourceSpan span;
};

bool operator==(const GovernanceTag& a, const GovernanceTag& b);

// ── Operations ────────────────────────────────────────────────────────────

/// The built-in agent-specific general-scenario catalogue: 11 entries,
/// one per quality attribute.
const std::vector<GeneralScenario>& builtin_catalogue();

/// Finds the catalogue entry for a quality attribute.
const GeneralScenario& catalogue_entry(const std::vector<GeneralScenario>& catalogue,
                                       QualityAttribute q);

/// Replaces built-in entries with user overrides (from `general` blocks).
/// The result still holds exactly one entry per quality attribute.
std::vector<GeneralScenario> apply_catalogue_overrides(
    std::vector<GeneralScenario> catalogue,
    const std::vector<GeneralScenario>& overrides);

/// A field override for instantiate: raw value text parsed per field type.
struct FieldOverride {
    std::string name;  // seq|priority|source|stimulus|environment|artefacts|response
    std::string value;
};

/// Instantiates a context scenario from a general scenario. Unset fields
/// carry the templates verbatim; the quality attribute is inherited; the
/// measures list starts empty (draft state). Throws std::invalid_argument
/// on an unknown override field or invalid label.
ContextScenario instantiate(const GeneralScenario& general, const std::string& id,
                            const std::vector<FieldOverride>& overrides = {});

/// Governance mapping result: tag id -> default qualities, plus the ids of
/// tags that map to nothing.
struct GovernanceMapping {
    std::vector<std::pair<std::string, std::vector<QualityAttribute>>> entries;
    std::vector<std::string> unmapped;
};

/// Maps tags to their default qualities. Throws std::invalid_argument on
/// duplicate tag ids.
GovernanceMapping map_governance(const std::vector<GovernanceTag>& tags);

}  // namespace arceval
