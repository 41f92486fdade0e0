#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "arceval/telemetry.hpp"
#include "arceval/vocab.hpp"

namespace arceval {

// ── Measure grammar ───────────────────────────────────────────────────────
//
//   measure := metric "(" args ")" comparator NUMBER UNIT?
//              ("over" "window(" NUMBER ("events" | "s" | "h") ")")?
//
// Metric kinds:
//   ratio(tag)                      fraction of in-scope events carrying tag
//   latency_pct(p)                  p-th percentile latency, p in (0, 100]
//   max_latency()                   shorthand for latency_pct(100)
//   completeness(kind, ...)         fraction of required span kinds present
//                                   per traced request (grouped by trace_id)
//   resolve_within(open, close)     fraction of open events matched by a
//                                   close event within the threshold

enum class MetricId { ratio, latency_pct, max_latency, completeness, resolve_within };

std::string_view to_string(MetricId m);

enum class Comparator { lt, le, gt, ge, eq };

std::string_view to_string(Comparator c);
bool compare(double observed, Comparator c, double threshold);

enum class Unit { ratio, ms, s, h, count };

std::string_view to_string(Unit u);
std::optional<Unit> parse_unit(std::string_view label);

struct Threshold {
    double value = 0;
    Unit unit = Unit::ratio;

    double as_ms() const;  // valid for ms/s/h
    bool operator==(const Threshold&) const = default;
};

struct MeasureSpec {
    MetricId metric = MetricId::ratio;
    std::string tag;                       // ratio
    double percentile = 100.0;             // latency_pct (quantised to 1e-3)
    std::vector<SpanKind> required_kinds;  // completeness
    std::string open_tag;                  // resolve_within
    std::string close_tag;                 // resolve_within
    Comparator comparator = Comparator::ge;
    Threshold threshold;
    std::optional<WindowSpec> window;  // absent = whole evaluation window

    /// Canonical text form; parse_measure(text()) reproduces the spec.
    std::string text() const;
    bool operator==(const MeasureSpec&) const = default;
};

struct MeasureError : std::runtime_error {
    std::size_t column;  // 1-based offset into the measure text
    MeasureError(std::string msg, std::size_t col)
        : std::runtime_error(std::move(msg)), column(col) {}
};

/// Parses one measure expression. Throws MeasureError on syntax errors,
/// unit/metric mismatches, and out-of-range arguments.
MeasureSpec parse_measure(std::string_view text);

// ── Evaluation ────────────────────────────────────────────────────────────

enum class Outcome { pass, fail, insufficient_data };

std::string_view to_string(Outcome o);

struct EvalOptions {
    std::size_t min_population = 1;  // events (or open pairs) required
};

/// Verdict for one measure over one window, or for one recorded external
/// assessment (spec absent, assessment set).
struct MeasureVerdict {
    std::optional<MeasureSpec> spec;
    std::string assessment;  // external assessment name, when applicable
    std::optional<double> observed;
    std::size_t population = 0;
    Outcome outcome = Outcome::insufficient_data;

    std::string text() const;  // measure text or assessment name
};

/// Evaluates one measure over a time-ordered event window. Degenerate
/// inputs yield insufficient-data rather than errors.
MeasureVerdict evaluate(const MeasureSpec& spec, std::span<const SpanRecord> events,
                        const ScenarioScope& scope, const EvalOptions& opts = {});

/// Nearest-rank percentile: the ceil(p/100 * n)-th smallest value.
/// Exposed so callers can share the exact rank rule.
std::size_t percentile_rank(double p, std::size_t n);

// ── Scenario-level evaluation ─────────────────────────────────────────────

struct ContextScenario;  // scenario.hpp

/// A runtime-supplied external assessment record.
struct AssessmentRecord {
    std::string name;
    bool passed = false;
    std::string note;
};

struct ScenarioVerdicts {
    std::string scenario_id;
    std::vector<MeasureVerdict> verdicts;
    Outcome outcome = Outcome::insufficient_data;
};

/// One verdict per machine measure plus one per declared external
/// assessment. Runtime records override the scenario's recorded results;
/// a declared slot with neither yields insufficient-data. The scenario
/// passes iff every verdict passes; an empty verdict list is
/// insufficient-data.
ScenarioVerdicts evaluate_scenario(const ContextScenario& scenario,
                                   std::span<const SpanRecord> events,
                                   std::span<const AssessmentRecord> assessments = {},
                                   const EvalOptions& opts = {});

}  // namespace arceval
