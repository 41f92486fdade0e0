#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arceval/measures.hpp"
#include "arceval/prioritiser.hpp"
#include "arceval/scenario.hpp"
#include "arceval/telemetry.hpp"

namespace arceval {

// ── Violation tracking ────────────────────────────────────────────────────

/// Streak bookkeeping for one (scenario, measure) across a monitor run.
/// consecutive_failures is the longest run of failing windows observed;
/// insufficient-data windows neither break nor extend a streak.
struct ViolationSummary {
    std::string scenario_id;
    MeasureSpec spec;
    std::size_t windows_evaluated = 0;
    std::size_t windows_failed = 0;
    std::size_t consecutive_failures = 0;
    std::optional<std::int64_t> first_fail_ts;
    std::optional<std::int64_t> last_fail_ts;
    bool persistent = false;
};

enum class Severity { notice, violation, persistent_violation };

std::string_view to_string(Severity s);

struct Alert {
    std::int64_t ts = 0;  // ts of the failing window's last event
    std::string scenario_id;
    MeasureVerdict verdict;
    Severity severity = Severity::violation;
};

/// Line-delimited JSON alert stream (ts, scenario, measure, observed,
/// severity). Byte-stable for identical inputs.
std::string serialize_alerts(std::span<const Alert> alerts);

/// A persistent violation asking for the scenario to be reprioritised.
struct ReprioritisationTrigger {
    std::string scenario_id;
    MeasureSpec spec;
};

struct MonitorResult {
    std::vector<Alert> alerts;  // non-decreasing ts
    std::vector<ViolationSummary> summaries;
    std::vector<ReprioritisationTrigger> triggers;  // one per persistent measure

    bool any_violation() const;
    bool any_persistent() const;
    /// CI-gate exit code: 0 clean, 3 violations, 4 persistent violations.
    int exit_code() const;
};

/// Evaluates every (scenario, machine measure, window) over the record
/// stream. A measure's own `over window(...)` clause overrides the default
/// window. Fail verdicts become alerts; a streak reaching persistence_n
/// consecutive failing windows marks the summary persistent and emits one
/// reprioritisation trigger for that measure.
MonitorResult run_monitor(const std::vector<ContextScenario>& scenarios,
                          std::span<const SpanRecord> records,
                          const WindowSpec& default_window, std::size_t persistence_n,
                          const EvalOptions& opts = {});

// ── Reprioritisation feed ─────────────────────────────────────────────────

/// Audit record for one reprioritisation trigger taking effect.
struct ReprioritisationAudit {
    std::string scenario_id;
    std::string measure_text;
    Band old_band = Band::unset;
    Band new_band = Band::unset;
};

bool operator==(const ReprioritisationAudit& a, const ReprioritisationAudit& b);

struct ReprioritisationOutcome {
    std::vector<PriorityResult> priorities;
    std::vector<ReprioritisationAudit> audit;  // one entry per scenario per run
};

/// Applies triggers to the current priorities via reprioritise(). Duplicate
/// triggers for one scenario collapse to a single audit entry. Throws on a
/// trigger for an unknown scenario.
ReprioritisationOutcome feed_reprioritiser(
    const std::vector<ReprioritisationTrigger>& triggers,
    const std::vector<PriorityResult>& current);

}  // namespace arceval
