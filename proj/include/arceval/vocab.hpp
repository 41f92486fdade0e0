#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arceval {

// ── Quality attributes ────────────────────────────────────────────────────

/// The closed vocabulary of agent quality attributes. Exactly 11 members;
/// the built-in general-scenario catalogue carries one entry per attribute.
enum class QualityAttribute {
    accuracy,
    adaptability,
    efficiency,
    privacy,
    security,
    fairness,
    availability,
    observability,
    transparency,
    safety,
    contestability,
};

inline constexpr std::size_t quality_count = 11;

const std::array<QualityAttribute, quality_count>& all_qualities();
std::string_view to_string(QualityAttribute q);
std::optional<QualityAttribute> parse_quality(std::string_view label);

// ── Agent artefacts ───────────────────────────────────────────────────────

/// Agent components a scenario stimulus can target. Merges the reference
/// architecture's components with the Luna-specific ones the context
/// scenarios reference (reranker, data-chunker, vector-database).
enum class ArtefactRef {
    agent,
    context_engine,
    prompt_optimiser,
    reasoning_planning,
    workflow_execution,
    agent_memory,
    short_term_memory,
    long_term_memory,
    retriever,
    reranker,
    generator,
    knowledge_base,
    vector_database,
    relational_database,
    data_crawler,
    data_chunker,
    external_tool,
    other_agent,
    guardrails,
    log_repository,
    agentops,
    foundation_model,
    evaluator,
    monitoring,
};

inline constexpr std::size_t artefact_count = 24;

const std::array<ArtefactRef, artefact_count>& all_artefacts();
std::string_view to_string(ArtefactRef a);
std::optional<ArtefactRef> parse_artefact(std::string_view label);

// ── Telemetry span kinds ──────────────────────────────────────────────────

/// Traceable units of agent operation. The core seven come from the
/// observability general scenario; feedback/contest/guardrail kinds are
/// needed by the adaptability, contestability and privacy scenarios.
enum class SpanKind {
    goal,
    reasoning,
    planning,
    workflow,
    task,
    tool,
    evaluation,
    fm,
    feedback,
    contest_opened,
    contest_resolved,
    guardrail,
    log,
};

inline constexpr std::size_t span_kind_count = 13;

const std::array<SpanKind, span_kind_count>& all_span_kinds();
std::string_view to_string(SpanKind k);
std::optional<SpanKind> parse_span_kind(std::string_view label);

// ── Priority bands ────────────────────────────────────────────────────────

enum class Band { high, medium, low, unset };

std::string_view to_string(Band b);
std::optional<Band> parse_band(std::string_view label);

// ── Architecture approaches ───────────────────────────────────────────────

enum class ApproachKind { pattern, tactic, decision, guardrail };

std::string_view to_string(ApproachKind k);
std::optional<ApproachKind> parse_approach_kind(std::string_view label);

/// Declared breadth of an approach's support for the scenarios it lists.
enum class ApproachCoverage { full, partial };

std::string_view to_string(ApproachCoverage c);
std::optional<ApproachCoverage> parse_approach_coverage(std::string_view label);

// ── Process steps ─────────────────────────────────────────────────────────

/// The ten evaluation-process steps, design time first, runtime last.
enum class ProcessStep {
    understand_goals,
    review_governance,
    identify_requirements,
    review_architecture,
    define_scenarios,
    prioritise_scenarios,
    analyse_architecture,
    improve_architecture,
    monitor_risks,
    reprioritise,
};

inline constexpr std::size_t process_step_count = 10;

const std::array<ProcessStep, process_step_count>& all_process_steps();
std::string_view to_string(ProcessStep s);
std::optional<ProcessStep> parse_process_step(std::string_view label);

// ── Shared label helpers ──────────────────────────────────────────────────

/// Lexical test for label tokens: [a-z][a-z0-9_-]*.
bool is_label_token(std::string_view s);

/// Joins labels with ", " for error messages and findings.
std::string join_labels(const std::vector<std::string>& labels);

}  // namespace arceval
