#include "arceval/monitor.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace arceval {

using nlohmann::json;

std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::notice: return "notice";
        case Severity::violation: return "violation";
        case Severity::persistent_violation: return "persistent-violation";
    }
    return "?";
}

bool operator==(const ReprioritisationAudit& a, const ReprioritisationAudit& b) {
    return a.scenario_id == b.scenario_id && a.measure_text == b.measure_text &&
           a.old_band == b.old_band && a.new_band == b.new_band;
}

std::string serialize_alerts(std::span<const Alert> alerts) {
    std::string out;
    for (const Alert& a : alerts) {
        json j;
        j["ts"] = a.ts;
        j["scenario"] = a.scenario_id;
        j["measure"] = a.verdict.text();
        if (a.verdict.observed) j["observed"] = *a.verdict.observed;
        j["severity"] = std::string(to_string(a.severity));
        out += j.dump();
        out += '\n';
    }
    return out;
}

bool MonitorResult::any_violation() const { return !alerts.empty(); }

bool MonitorResult::any_persistent() const {
    return std::any_of(summaries.begin(), summaries.end(),
                       [](const ViolationSummary& s) { return s.persistent; });
}

int MonitorResult::exit_code() const {
    if (any_persistent()) return 4;
    if (any_violation()) return 3;
    return 0;
}

MonitorResult run_monitor(const std::vector<ContextScenario>& scenarios,
                          std::span<const SpanRecord> records,
                          const WindowSpec& default_window, std::size_t persistence_n,
                          const EvalOptions& opts) {
    if (persistence_n < 1)
        throw std::invalid_argument("persistence threshold must be >= 1");

    MonitorResult result;

    for (const ContextScenario& scenario : scenarios) {
        const ScenarioScope scope = scenario.scope();
        for (const MeasureSpec& spec : scenario.measures) {
            const WindowSpec window_spec = spec.window.value_or(default_window);
            const WindowedRecords wr = windows(records, window_spec);

            ViolationSummary summary;
            summary.scenario_id = scenario.id;
            summary.spec = spec;

            std::size_t streak = 0;
            bool triggered = false;
            for (const EventWindow& window : wr.windows) {
                const MeasureVerdict verdict =
                    evaluate(spec, window.records, scope, opts);
                ++summary.windows_evaluated;

                if (verdict.outcome == Outcome::insufficient_data) continue;
                if (verdict.outcome == Outcome::pass) {
                    streak = 0;
                    continue;
                }

                ++summary.windows_failed;
                ++streak;
                summary.consecutive_failures =
                    std::max(summary.consecutive_failures, streak);

                const std::int64_t alert_ts = window.records.back().ts;
                if (!summary.first_fail_ts) summary.first_fail_ts = alert_ts;
                summary.last_fail_ts = alert_ts;

                Alert alert;
                alert.ts = alert_ts;
                alert.scenario_id = scenario.id;
                alert.verdict = verdict;
                if (streak >= persistence_n) {
                    summary.persistent = true;
                    alert.severity = Severity::persistent_violation;
                    if (!triggered) {
                        result.triggers.push_back({scenario.id, spec});
                        triggered = true;
                    }
                } else {
                    alert.severity = Severity::violation;
                }
                result.alerts.push_back(std::move(alert));
            }
            result.summaries.push_back(std::move(summary));
        }
    }

    // Sequential merge: generation order is (scenario, measure, window), so
    // a stable sort by ts keeps ties deterministic.
    std::stable_sort(result.alerts.begin(), result.alerts.end(),
                     [](const Alert& a, const Alert& b) { return a.ts < b.ts; });
    return result;
}

ReprioritisationOutcome feed_reprioritiser(
    const std::vector<ReprioritisationTrigger>& triggers,
    const std::vector<PriorityResult>& current) {
    ReprioritisationOutcome out;

    // One effective trigger per scenario per run.
    std::vector<const ReprioritisationTrigger*> unique;
    std::set<std::string> seen;
    for (const ReprioritisationTrigger& t : triggers) {
        if (seen.insert(t.scenario_id).second) unique.push_back(&t);
    }

    if (unique.empty()) {
        out.priorities = current;
        return out;
    }

    std::vector<ViolationSummary> summaries;
    for (const ReprioritisationTrigger* t : unique) {
        ViolationSummary s;
        s.scenario_id = t->scenario_id;
        s.spec = t->spec;
        s.persistent = true;
        summaries.push_back(std::move(s));
    }
    out.priorities = reprioritise(current, summaries);

    for (const ReprioritisationTrigger* t : unique) {
        ReprioritisationAudit audit;
        audit.scenario_id = t->scenario_id;
        audit.measure_text = t->spec.text();
        for (const PriorityResult& r : current)
            if (r.scenario_id == t->scenario_id) audit.old_band = r.band;
        for (const PriorityResult& r : out.priorities)
            if (r.scenario_id == t->scenario_id) audit.new_band = r.band;
        out.audit.push_back(std::move(audit));
    }
    return out;
}

}  // namespace arceval
