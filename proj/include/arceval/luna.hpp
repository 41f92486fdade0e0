#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arceval/analysis.hpp"
#include "arceval/telemetry.hpp"
#include "arceval/workspace.hpp"

namespace arceval {

// ── Synthetic trace generation ────────────────────────────────────────────

struct TagRate {
    std::string tag;
    double rate = 1.0;  // fraction of events carrying the tag
};

/// Per-scenario event mix for the trace generator. `n` in generate_trace
/// counts events (tagged/latency), traces (completeness) or open/close
/// pairs (resolve).
struct TraceProfile {
    enum class Shape { tagged, latency, completeness, resolve };

    std::string name;
    std::string scenario_id;
    Shape shape = Shape::tagged;
    SpanKind span_kind = SpanKind::workflow;
    std::optional<ArtefactRef> artefact;

    std::vector<TagRate> tag_rates;  // tagged

    double rate = 1.0;             // latency/completeness/resolve pass fraction
    double pass_latency_ms = 999;  // latency: realised maximum of passing events
    double fail_latency_ms = 1000; // latency: latency of failing events

    std::vector<SpanKind> required_kinds;  // completeness

    SpanKind open_kind = SpanKind::contest_opened;    // resolve
    SpanKind close_kind = SpanKind::contest_resolved; // resolve
    std::int64_t within_ms = 48LL * 3600 * 1000;      // resolve: in-time gap bound
    std::int64_t late_ms = 0;                         // resolve: late gap (0 = 1.5x bound)

    std::int64_t start_ts = 1756684800000;  // 2025-09-01T00:00:00Z
    std::int64_t spacing_ms = 1000;
};

/// Deterministic synthetic telemetry: identical (profile, seed, n) give
/// identical records; realised tag/pass counts equal round(rate * n).
/// Throws std::invalid_argument on a rate outside [0,1] or n == 0.
std::vector<SpanRecord> generate_trace(const TraceProfile& profile, std::uint64_t seed,
                                       std::size_t n);

/// Same trace as JSONL text (ingest_text round-trips it).
std::string generate_trace_text(const TraceProfile& profile, std::uint64_t seed,
                                std::size_t n);

// ── Luna corpus data ──────────────────────────────────────────────────────

/// Generator profiles for the seven Luna scenarios, targets at the pass
/// boundary of each measure.
const std::vector<TraceProfile>& luna_profiles();
const TraceProfile& luna_profile(const std::string& scenario_id);

/// Hand-authored ledger entries recorded at the analyse step (gap risks
/// for the medium-priority gaps plus the pre-review tradeoffs).
AnalysisLedger luna_analysis_ledger();

/// Hand-authored ledger entries recorded at the improve step (post-review
/// tradeoffs, sensitivity points and recommendations).
AnalysisLedger luna_improvement_ledger();

/// Replays the whole design-time evaluation against the fixture documents
/// in `fixture_dir` (the directory holding the .aas files): advances the
/// process through improve-architecture, runs gap analysis on the
/// pre-review model, records gap risks, applies the ledgers and marks
/// mitigations against the post-review model.
Workspace build_luna_workspace(const std::string& fixture_dir);

}  // namespace arceval
