#pragma once

#include <string>
#include <vector>

#include "arceval/architecture.hpp"
#include "arceval/catalogue.hpp"
#include "arceval/prioritiser.hpp"
#include "arceval/scenario.hpp"

namespace arceval {

// ── Document model ────────────────────────────────────────────────────────
//
// The declarative text format. Informal grammar:
//
//   document := block*
//   block    := kind STRING "{" field* "}"
//               kind ∈ {scenario, architecture, governance, priorities, general}
//   field    := NAME ":" value NEWLINE
//   value    := STRING | NUMBER | LABEL | "[" value ("," value)* "]"
//             | measure-expr
//
// UTF-8; `#` comments to end of line; fields are newline-terminated; lists
// may wrap across lines; trailing commas are forbidden.

/// A named set of governance guardrail tags, as one `governance` block.
struct GovernanceSet {
    std::string name;
    std::vector<GovernanceTag> tags;
    SourceSpan span;
};

bool operator==(const GovernanceSet& a, const GovernanceSet& b);

enum class BlockKind { scenario, architecture, governance, priorities, general };

std::string_view to_string(BlockKind k);

struct Document {
    std::vector<ContextScenario> scenarios;
    std::vector<ArchitectureModel> architectures;
    std::vector<GovernanceSet> governance;
    std::vector<PriorityInput> priorities;  // grouped per stakeholder block
    std::vector<GeneralScenario> generals;

    /// Top-level blocks in document order: (kind, index into its vector).
    std::vector<std::pair<BlockKind, std::size_t>> order;

    std::vector<GovernanceTag> all_tags() const;
    void append(const Document& other);
};

/// Semantic equality over all blocks (spans excluded, order included).
bool operator==(const Document& a, const Document& b);

struct ParseError {
    std::string message;
    SourceSpan span;

    std::string to_string() const;
};

struct ParseResult {
    Document document;
    std::vector<ParseError> errors;

    bool ok() const { return errors.empty(); }
};

/// Parses a document. All well-formed top-level blocks are returned in
/// document order; every error carries a line/column span within the input.
ParseResult parse_document(std::string_view text, std::string file = "<input>");

// ── Serialization ─────────────────────────────────────────────────────────

/// Canonical text form: fields in fixed order, one per line, stable
/// quoting. serialize is pure — equal documents give byte-identical text —
/// and parse_document(serialize(d)) reproduces d exactly (spans excluded).
std::string serialize(const Document& doc);

std::string serialize_scenario(const ContextScenario& s);
std::string serialize_architecture(const ArchitectureModel& m);
std::string serialize_governance(const GovernanceSet& g);
std::string serialize_priorities(const std::string& stakeholder,
                                 const std::vector<PriorityInput>& inputs);
std::string serialize_general(const GeneralScenario& g);

/// Canonical string literal with backslash escapes for quote, backslash
/// and newline.
std::string quote_string(std::string_view raw);

// ── Validation ────────────────────────────────────────────────────────────

enum class FindingLevel { info, warning };

std::string_view to_string(FindingLevel l);

struct Finding {
    FindingLevel level = FindingLevel::info;
    std::string subject;  // scenario id, tag id, quality label, ...
    std::string message;

    std::string to_string() const;
};

/// Advisory checks for one scenario against a catalogue: measure-free
/// scenarios (warning), artefacts absent from the quality's general
/// scenario (info), human-judged measures that can only be evaluated from
/// recorded assessments (warning).
std::vector<Finding> validate(const ContextScenario& scenario,
                              const std::vector<GeneralScenario>& catalogue);

}  // namespace arceval
