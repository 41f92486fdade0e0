#include "arceval/telemetry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace arceval {

using nlohmann::json;

// ── SpanRecord ────────────────────────────────────────────────────────────

bool SpanRecord::has_outcome_tag(std::string_view tag) const {
    return std::find(outcome_tags.begin(), outcome_tags.end(), tag) !=
           outcome_tags.end();
}

bool operator==(const SpanRecord& a, const SpanRecord& b) {
    return a.ts == b.ts && a.trace_id == b.trace_id && a.span_kind == b.span_kind &&
           a.scenario_tags == b.scenario_tags && a.artefact == b.artefact &&
           a.latency_ms == b.latency_ms && a.outcome_tags == b.outcome_tags &&
           a.attrs == b.attrs;
}

// ── Ingest ────────────────────────────────────────────────────────────────

namespace {

std::string json_to_attr_string(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// Returns the reason a line is unusable, or empty on success.
std::string parse_record_line(const std::string& line, SpanRecord& out) {
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) return "invalid JSON";
    if (!j.is_object()) return "record is not a JSON object";

    if (!j.contains("ts")) return "missing ts";
    const json& ts = j["ts"];
    if (ts.is_number_integer()) {
        out.ts = ts.get<std::int64_t>();
    } else if (ts.is_number_float()) {
        const double v = ts.get<double>();
        if (!std::isfinite(v)) return "ts not finite";
        out.ts = static_cast<std::int64_t>(std::llround(v));
    } else {
        return "ts not a number";
    }

    if (!j.contains("span_kind") || !j["span_kind"].is_string())
        return "missing span_kind";
    const std::string kind = j["span_kind"].get<std::string>();
    if (auto k = parse_span_kind(kind)) {
        out.span_kind = *k;
    } else {
        return "unknown span_kind \"" + kind + "\"";
    }

    if (j.contains("trace_id")) {
        if (!j["trace_id"].is_string()) return "trace_id not a string";
        out.trace_id = j["trace_id"].get<std::string>();
    }

    if (j.contains("scenario_tags")) {
        if (!j["scenario_tags"].is_array()) return "scenario_tags not an array";
        for (const json& t : j["scenario_tags"]) {
            if (!t.is_string()) return "scenario_tags entry not a string";
            out.scenario_tags.push_back(t.get<std::string>());
        }
    }

    if (j.contains("artefact") && !j["artefact"].is_null()) {
        if (!j["artefact"].is_string()) return "artefact not a string";
        const std::string a = j["artefact"].get<std::string>();
        if (auto ref = parse_artefact(a)) {
            out.artefact = *ref;
        } else {
            return "unknown artefact \"" + a + "\"";
        }
    }

    if (j.contains("latency_ms") && !j["latency_ms"].is_null()) {
        if (!j["latency_ms"].is_number()) return "latency_ms not a number";
        const double v = j["latency_ms"].get<double>();
        if (!std::isfinite(v)) return "latency_ms not finite";
        if (v < 0) return "latency_ms < 0";
        out.latency_ms = v;
    }

    if (j.contains("outcome_tags")) {
        if (!j["outcome_tags"].is_array()) return "outcome_tags not an array";
        for (const json& t : j["outcome_tags"]) {
            if (!t.is_string()) return "outcome_tags entry not a string";
            out.outcome_tags.push_back(t.get<std::string>());
        }
    }

    if (j.contains("attrs")) {
        if (!j["attrs"].is_object()) return "attrs not an object";
        for (auto it = j["attrs"].begin(); it != j["attrs"].end(); ++it) {
            out.attrs[it.key()] = json_to_attr_string(it.value());
        }
    }

    // Unknown top-level fields survive the trip through attrs.
    static const char* known[] = {"ts",        "trace_id",   "span_kind",
                                  "scenario_tags", "artefact", "latency_ms",
                                  "outcome_tags",  "attrs"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool recognised = false;
        for (const char* k : known) {
            if (it.key() == k) { recognised = true; break; }
        }
        if (!recognised) out.attrs[it.key()] = json_to_attr_string(it.value());
    }
    return {};
}

bool line_is_blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

IngestResult ingest(std::istream& in) {
    IngestResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_is_blank(line)) continue;
        SpanRecord record;
        std::string reason = parse_record_line(line, record);
        if (reason.empty()) {
            result.accepted.push_back(std::move(record));
        } else {
            result.rejected.push_back({line_no, std::move(reason)});
        }
    }
    return result;
}

IngestResult ingest_text(const std::string& text) {
    std::istringstream in(text);
    return ingest(in);
}

IngestResult ingest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open telemetry file: " + path);
    return ingest(in);
}

std::string serialize_record(const SpanRecord& r) {
    json j;
    j["ts"] = r.ts;
    if (!r.trace_id.empty()) j["trace_id"] = r.trace_id;
    j["span_kind"] = std::string(to_string(r.span_kind));
    if (!r.scenario_tags.empty()) j["scenario_tags"] = r.scenario_tags;
    if (r.artefact) j["artefact"] = std::string(to_string(*r.artefact));
    if (r.latency_ms) j["latency_ms"] = *r.latency_ms;
    if (!r.outcome_tags.empty()) j["outcome_tags"] = r.outcome_tags;
    if (!r.attrs.empty()) j["attrs"] = r.attrs;
    return j.dump();
}

std::string serialize_records(std::span<const SpanRecord> records) {
    std::string out;
    for (const SpanRecord& r : records) {
        out += serialize_record(r);
        out += '\n';
    }
    return out;
}

// ── Windowing ─────────────────────────────────────────────────────────────

WindowSpec WindowSpec::count(double size, double stride) {
    return {Mode::count, size, stride};
}

WindowSpec WindowSpec::duration(double seconds, double stride_seconds) {
    return {Mode::duration, seconds, stride_seconds};
}

WindowSpec WindowSpec::whole() { return {Mode::count, 0, 0}; }

bool WindowSpec::is_whole() const { return size == 0; }

bool operator==(const WindowSpec& a, const WindowSpec& b) {
    return a.mode == b.mode && a.size == b.size && a.stride == b.stride;
}

namespace {

void validate_spec(const WindowSpec& spec) {
    if (spec.is_whole()) return;
    if (spec.size <= 0) throw std::invalid_argument("window size must be positive");
    if (spec.stride <= 0) throw std::invalid_argument("window stride must be positive");
    if (spec.stride > spec.size)
        throw std::invalid_argument("window stride must not exceed size");
    if (spec.mode == WindowSpec::Mode::count &&
        spec.size != std::floor(spec.size))
        throw std::invalid_argument("count window size must be integral");
}

}  // namespace

WindowedRecords windows(std::span<const SpanRecord> records, const WindowSpec& spec) {
    validate_spec(spec);

    WindowedRecords out;
    out.sorted.assign(records.begin(), records.end());
    std::stable_sort(out.sorted.begin(), out.sorted.end(),
                     [](const SpanRecord& a, const SpanRecord& b) { return a.ts < b.ts; });

    const std::size_t n = out.sorted.size();
    std::span<const SpanRecord> all(out.sorted);
    if (n == 0) return out;

    if (spec.is_whole()) {
        out.windows.push_back({all, out.sorted.front().ts, out.sorted.back().ts + 1});
        return out;
    }

    if (spec.mode == WindowSpec::Mode::count) {
        const auto size = static_cast<std::size_t>(spec.size);
        const auto stride = static_cast<std::size_t>(spec.stride);
        for (std::size_t start = 0; start < n; start += stride) {
            const std::size_t end = std::min(start + size, n);
            auto slice = all.subspan(start, end - start);
            out.windows.push_back({slice, slice.front().ts, slice.back().ts + 1});
        }
    } else {
        const auto size_ms = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::llround(spec.size * 1000.0)));
        const auto stride_ms = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::llround(spec.stride * 1000.0)));
        const std::int64_t first = out.sorted.front().ts;
        const std::int64_t last = out.sorted.back().ts;
        for (std::int64_t start = first; start <= last; start += stride_ms) {
            const std::int64_t end = start + size_ms;
            auto lo = std::lower_bound(out.sorted.begin(), out.sorted.end(), start,
                                       [](const SpanRecord& r, std::int64_t t) { return r.ts < t; });
            auto hi = std::lower_bound(out.sorted.begin(), out.sorted.end(), end,
                                       [](const SpanRecord& r, std::int64_t t) { return r.ts < t; });
            if (lo == hi) {
                // Empty stretch: fast-forward to the grid window that first
                // covers the next record instead of emitting every gap window.
                if (lo == out.sorted.end()) break;
                const std::int64_t target = lo->ts;
                std::int64_t k = (target - size_ms - first) / stride_ms + 1;
                if (k < 0) k = 0;
                const std::int64_t jump = first + k * stride_ms;
                start = jump > start ? jump - stride_ms : start;
                continue;
            }
            const auto offset = static_cast<std::size_t>(lo - out.sorted.begin());
            const auto count = static_cast<std::size_t>(hi - lo);
            out.windows.push_back({all.subspan(offset, count), start, end});
        }
    }
    return out;
}

// ── Scoping ───────────────────────────────────────────────────────────────

bool in_scope(const SpanRecord& record, const ScenarioScope& scope) {
    if (!record.scenario_tags.empty()) {
        return std::find(record.scenario_tags.begin(), record.scenario_tags.end(),
                         scope.scenario_id) != record.scenario_tags.end();
    }
    if (record.artefact) {
        return std::find(scope.artefacts.begin(), scope.artefacts.end(),
                         *record.artefact) != scope.artefacts.end();
    }
    return false;
}

std::vector<const SpanRecord*> filter_scope(std::span<const SpanRecord> records,
                                            const ScenarioScope& scope) {
    std::vector<const SpanRecord*> out;
    for (const SpanRecord& r : records) {
        if (in_scope(r, scope)) out.push_back(&r);
    }
    return out;
}

}  // namespace arceval
