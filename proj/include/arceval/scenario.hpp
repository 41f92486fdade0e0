#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arceval/measures.hpp"
#include "arceval/vocab.hpp"

namespace arceval {

/// Location of a parsed object in its source document. Line/column are
/// 1-based. Excluded from equality.
struct SourceSpan {
    std::string file;
    std::size_t line = 0;
    std::size_t column = 0;

    std::string to_string() const;
};

/// A declared human-judged measure, optionally with a recorded result.
/// `pending` slots are evaluated as insufficient-data until a record
/// arrives (in the document or at evaluation time).
struct ExternalAssessment {
    std::string name;
    std::optional<bool> recorded;  // nullopt = pending
    std::string note;

    bool operator==(const ExternalAssessment&) const = default;
};

/// A concrete six-part quality-attribute scenario bound to one system.
struct ContextScenario {
    std::string id;
    std::optional<std::uint32_t> seq;  // paper-style numeric Scenario ID
    QualityAttribute quality = QualityAttribute::accuracy;
    Band priority = Band::unset;
    std::string source;
    std::string stimulus;
    std::string environment;
    std::vector<ArtefactRef> artefacts;
    std::string response;
    std::vector<MeasureSpec> measures;
    std::vector<ExternalAssessment> external_assessments;
    SourceSpan span;

    ScenarioScope scope() const { return {id, artefacts}; }
};

/// Equality over scenario content; source spans are ignored.
bool operator==(const ContextScenario& a, const ContextScenario& b);

}  // namespace arceval
