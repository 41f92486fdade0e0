#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arceval/vocab.hpp"

namespace arceval {

// ── Span records ──────────────────────────────────────────────────────────

/// One telemetry event from an agent run. Wire format is line-delimited
/// JSON with these exact field names; unknown top-level fields are folded
/// into attrs on ingest.
struct SpanRecord {
    std::int64_t ts = 0;  // milliseconds since the Unix epoch, UTC
    std::string trace_id;
    SpanKind span_kind = SpanKind::log;
    std::vector<std::string> scenario_tags;
    std::optional<ArtefactRef> artefact;
    std::optional<double> latency_ms;
    std::vector<std::string> outcome_tags;
    std::map<std::string, std::string> attrs;

    bool has_outcome_tag(std::string_view tag) const;
};

bool operator==(const SpanRecord& a, const SpanRecord& b);

struct RejectedLine {
    std::size_t line_no = 0;  // 1-based
    std::string reason;
};

struct IngestResult {
    std::vector<SpanRecord> accepted;  // input order, not time-sorted
    std::vector<RejectedLine> rejected;
};

/// Parses line-delimited JSON span records. Malformed lines are rejected
/// with per-line reasons; nothing short of an unreadable stream is fatal.
IngestResult ingest(std::istream& in);
IngestResult ingest_text(const std::string& text);
IngestResult ingest_file(const std::string& path);

/// Canonical JSONL for a record sequence; ingest_text round-trips it.
std::string serialize_records(std::span<const SpanRecord> records);
std::string serialize_record(const SpanRecord& record);

// ── Windowing ─────────────────────────────────────────────────────────────

struct WindowSpec {
    enum class Mode { count, duration };
    Mode mode = Mode::count;
    double size = 0;    // events (count) or seconds (duration)
    double stride = 0;  // same unit as size; stride <= size

    static WindowSpec count(double size, double stride);
    static WindowSpec duration(double seconds, double stride_seconds);
    /// One window spanning everything (size/stride unbounded count window).
    static WindowSpec whole();
    bool is_whole() const;
};

bool operator==(const WindowSpec& a, const WindowSpec& b);

/// A contiguous, time-ordered slice of the sorted record sequence.
struct EventWindow {
    std::span<const SpanRecord> records;
    std::int64_t start_ts = 0;  // duration windows: inclusive lower bound
    std::int64_t end_ts = 0;    // duration windows: exclusive upper bound
};

/// Stable-sorts records by ts (equal timestamps keep input order) and cuts
/// windows per the spec. With stride <= size every record lands in at least
/// one window. Throws std::invalid_argument on a malformed spec.
/// The returned windows view the returned record vector; keep it alive.
struct WindowedRecords {
    std::vector<SpanRecord> sorted;
    std::vector<EventWindow> windows;
};

WindowedRecords windows(std::span<const SpanRecord> records, const WindowSpec& spec);

// ── Scenario scoping ──────────────────────────────────────────────────────

/// What a record must match to count toward a scenario's measures.
struct ScenarioScope {
    std::string scenario_id;
    std::vector<ArtefactRef> artefacts;
};

/// Explicit tags win: a record carrying any scenario_tags is in scope only
/// when they include the scenario id; an untagged record falls back to
/// artefact membership.
bool in_scope(const SpanRecord& record, const ScenarioScope& scope);

std::vector<const SpanRecord*> filter_scope(std::span<const SpanRecord> records,
                                            const ScenarioScope& scope);

}  // namespace arceval
