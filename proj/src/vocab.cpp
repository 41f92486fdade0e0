#include "arceval/vocab.hpp"

namespace arceval {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<E, N>& values, std::string_view label,
                        std::string_view (*name)(E)) {
    for (E v : values) {
        if (name(v) == label) return v;
    }
    return std::nullopt;
}

}  // namespace

// ── QualityAttribute ──────────────────────────────────────────────────────

const std::array<QualityAttribute, quality_count>& all_qualities() {
    static const std::array<QualityAttribute, quality_count> values = {
        QualityAttribute::accuracy,      QualityAttribute::adaptability,
        QualityAttribute::efficiency,    QualityAttribute::privacy,
        QualityAttribute::security,      QualityAttribute::fairness,
        QualityAttribute::availability,  QualityAttribute::observability,
        QualityAttribute::transparency,  QualityAttribute::safety,
        QualityAttribute::contestability,
    };
    return values;
}

std::string_view to_string(QualityAttribute q) {
    switch (q) {
        case QualityAttribute::accuracy: return "accuracy";
        case QualityAttribute::adaptability: return "adaptability";
        case QualityAttribute::efficiency: return "efficiency";
        case QualityAttribute::privacy: return "privacy";
        case QualityAttribute::security: return "security";
        case QualityAttribute::fairness: return "fairness";
        case QualityAttribute::availability: return "availability";
        case QualityAttribute::observability: return "observability";
        case QualityAttribute::transparency: return "transparency";
        case QualityAttribute::safety: return "safety";
        case QualityAttribute::contestability: return "contestability";
    }
    return "?";
}

std::optional<QualityAttribute> parse_quality(std::string_view label) {
    return lookup(all_qualities(), label, to_string);
}

// ── ArtefactRef ───────────────────────────────────────────────────────────

const std::array<ArtefactRef, artefact_count>& all_artefacts() {
    static const std::array<ArtefactRef, artefact_count> values = {
        ArtefactRef::agent,
        ArtefactRef::context_engine,
        ArtefactRef::prompt_optimiser,
        ArtefactRef::reasoning_planning,
        ArtefactRef::workflow_execution,
        ArtefactRef::agent_memory,
        ArtefactRef::short_term_memory,
        ArtefactRef::long_term_memory,
        ArtefactRef::retriever,
        ArtefactRef::reranker,
        ArtefactRef::generator,
        ArtefactRef::knowledge_base,
        ArtefactRef::vector_database,
        ArtefactRef::relational_database,
        ArtefactRef::data_crawler,
        ArtefactRef::data_chunker,
        ArtefactRef::external_tool,
        ArtefactRef::other_agent,
        ArtefactRef::guardrails,
        ArtefactRef::log_repository,
        ArtefactRef::agentops,
        ArtefactRef::foundation_model,
        ArtefactRef::evaluator,
        ArtefactRef::monitoring,
    };
    return values;
}

std::string_view to_string(ArtefactRef a) {
    switch (a) {
        case ArtefactRef::agent: return "agent";
        case ArtefactRef::context_engine: return "context-engine";
        case ArtefactRef::prompt_optimiser: return "prompt-optimiser";
        case ArtefactRef::reasoning_planning: return "reasoning-planning";
        case ArtefactRef::workflow_execution: return "workflow-execution";
        case ArtefactRef::agent_memory: return "agent-memory";
        case ArtefactRef::short_term_memory: return "short-term-memory";
        case ArtefactRef::long_term_memory: return "long-term-memory";
        case ArtefactRef::retriever: return "retriever";
        case ArtefactRef::reranker: return "reranker";
        case ArtefactRef::generator: return "generator";
        case ArtefactRef::knowledge_base: return "knowledge-base";
        case ArtefactRef::vector_database: return "vector-database";
        case ArtefactRef::relational_database: return "relational-database";
        case ArtefactRef::data_crawler: return "data-crawler";
        case ArtefactRef::data_chunker: return "data-chunker";
        case ArtefactRef::external_tool: return "external-tool";
        case ArtefactRef::other_agent: return "other-agent";
        case ArtefactRef::guardrails: return "guardrails";
        case ArtefactRef::log_repository: return "log-repository";
        case ArtefactRef::agentops: return "agentops";
        case ArtefactRef::foundation_model: return "foundation-model";
        case ArtefactRef::evaluator: return "evaluator";
        case ArtefactRef::monitoring: return "monitoring";
    }
    return "?";
}

std::optional<ArtefactRef> parse_artefact(std::string_view label) {
    return lookup(all_artefacts(), label, to_string);
}

// ── SpanKind ──────────────────────────────────────────────────────────────

const std::array<SpanKind, span_kind_count>& all_span_kinds() {
    static const std::array<SpanKind, span_kind_count> values = {
        SpanKind::goal,       SpanKind::reasoning,      SpanKind::planning,
        SpanKind::workflow,   SpanKind::task,           SpanKind::tool,
        SpanKind::evaluation, SpanKind::fm,             SpanKind::feedback,
        SpanKind::contest_opened, SpanKind::contest_resolved,
        SpanKind::guardrail,  SpanKind::log,
    };
    return values;
}

std::string_view to_string(SpanKind k) {
    switch (k) {
        case SpanKind::goal: return "goal";
        case SpanKind::reasoning: return "reasoning";
        case SpanKind::planning: return "planning";
        case SpanKind::workflow: return "workflow";
        case SpanKind::task: return "task";
        case SpanKind::tool: return "tool";
        case SpanKind::evaluation: return "evaluation";
        case SpanKind::fm: return "fm";
        case SpanKind::feedback: return "feedback";
        case SpanKind::contest_opened: return "contest-opened";
        case SpanKind::contest_resolved: return "contest-resolved";
        case SpanKind::guardrail: return "guardrail";
        case SpanKind::log: return "log";
    }
    return "?";
}

std::optional<SpanKind> parse_span_kind(std::string_view label) {
    return lookup(all_span_kinds(), label, to_string);
}

// ── Band ──────────────────────────────────────────────────────────────────

std::string_view to_string(Band b) {
    switch (b) {
        case Band::high: return "high";
        case Band::medium: return "medium";
        case Band::low: return "low";
        case Band::unset: return "unset";
    }
    return "?";
}

std::optional<Band> parse_band(std::string_view label) {
    if (label == "high") return Band::high;
    if (label == "medium") return Band::medium;
    if (label == "low") return Band::low;
    if (label == "unset") return Band::unset;
    return std::nullopt;
}

// ── ApproachKind / ApproachCoverage ───────────────────────────────────────

std::string_view to_string(ApproachKind k) {
    switch (k) {
        case ApproachKind::pattern: return "pattern";
        case ApproachKind::tactic: return "tactic";
        case ApproachKind::decision: return "decision";
        case ApproachKind::guardrail: return "guardrail";
    }
    return "?";
}

std::optional<ApproachKind> parse_approach_kind(std::string_view label) {
    if (label == "pattern") return ApproachKind::pattern;
    if (label == "tactic") return ApproachKind::tactic;
    if (label == "decision") return ApproachKind::decision;
    if (label == "guardrail") return ApproachKind::guardrail;
    return std::nullopt;
}

std::string_view to_string(ApproachCoverage c) {
    return c == ApproachCoverage::full ? "full" : "partial";
}

std::optional<ApproachCoverage> parse_approach_coverage(std::string_view label) {
    if (label == "full") return ApproachCoverage::full;
    if (label == "partial") return ApproachCoverage::partial;
    return std::nullopt;
}

// ── ProcessStep ───────────────────────────────────────────────────────────

const std::array<ProcessStep, process_step_count>& all_process_steps() {
    static const std::array<ProcessStep, process_step_count> values = {
        ProcessStep::understand_goals,      ProcessStep::review_governance,
        ProcessStep::identify_requirements, ProcessStep::review_architecture,
        ProcessStep::define_scenarios,      ProcessStep::prioritise_scenarios,
        ProcessStep::analyse_architecture,  ProcessStep::improve_architecture,
        ProcessStep::monitor_risks,         ProcessStep::reprioritise,
    };
    return values;
}

std::string_view to_string(ProcessStep s) {
    switch (s) {
        case ProcessStep::understand_goals: return "understand-goals";
        case ProcessStep::review_governance: return "review-governance";
        case ProcessStep::identify_requirements: return "identify-requirements";
        case ProcessStep::review_architecture: return "review-architecture";
        case ProcessStep::define_scenarios: return "define-scenarios";
        case ProcessStep::prioritise_scenarios: return "prioritise-scenarios";
        case ProcessStep::analyse_architecture: return "analyse-architecture";
        case ProcessStep::improve_architecture: return "improve-architecture";
        case ProcessStep::monitor_risks: return "monitor-risks";
        case ProcessStep::reprioritise: return "reprioritise";
    }
    return "?";
}

std::optional<ProcessStep> parse_process_step(std::string_view label) {
    return lookup(all_process_steps(), label, to_string);
}

// ── Label helpers ─────────────────────────────────────────────────────────

bool is_label_token(std::string_view s) {
    if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
    for (char c : s) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                        c == '-' || c == '_';
        if (!ok) return false;
    }
    return true;
}

std::string join_labels(const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ", ";
        out += labels[i];
    }
    return out;
}

}  // namespace arceval
