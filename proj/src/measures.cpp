#include "arceval/measures.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "arceval/scenario.hpp"

namespace arceval {

// ── Names ─────────────────────────────────────────────────────────────────

std::string_view to_string(MetricId m) {
    switch (m) {
        case MetricId::ratio: return "ratio";
        case MetricId::latency_pct: return "latency_pct";
        case MetricId::max_latency: return "max_latency";
        case MetricId::completeness: return "completeness";
        case MetricId::resolve_within: return "resolve_within";
    }
    return "?";
}

std::string_view to_string(Comparator c) {
    switch (c) {
        case Comparator::lt: return "<";
        case Comparator::le: return "<=";
        case Comparator::gt: return ">";
        case Comparator::ge: return ">=";
        case Comparator::eq: return "==";
    }
    return "?";
}

bool compare(double observed, Comparator c, double threshold) {
    switch (c) {
        case Comparator::lt: return observed < threshold;
        case Comparator::le: return observed <= threshold;
        case Comparator::gt: return observed > threshold;
        case Comparator::ge: return observed >= threshold;
        case Comparator::eq: return observed == threshold;
    }
    return false;
}

std::string_view to_string(Unit u) {
    switch (u) {
        case Unit::ratio: return "ratio";
        case Unit::ms: return "ms";
        case Unit::s: return "s";
        case Unit::h: return "h";
        case Unit::count: return "count";
    }
    return "?";
}

std::optional<Unit> parse_unit(std::string_view label) {
    if (label == "ratio") return Unit::ratio;
    if (label == "ms") return Unit::ms;
    if (label == "s") return Unit::s;
    if (label == "h") return Unit::h;
    if (label == "count") return Unit::count;
    return std::nullopt;
}

std::string_view to_string(Outcome o) {
    switch (o) {
        case Outcome::pass: return "pass";
        case Outcome::fail: return "fail";
        case Outcome::insufficient_data: return "insufficient-data";
    }
    return "?";
}

double Threshold::as_ms() const {
    switch (unit) {
        case Unit::ms: return value;
        case Unit::s: return value * 1000.0;
        case Unit::h: return value * 3600.0 * 1000.0;
        default: return value;
    }
}

// ── Number formatting ─────────────────────────────────────────────────────

namespace {

std::string format_number(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf,
                                     static_cast<long long>(v));
        (void)ec;
        return std::string(buf, p);
    }
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

}  // namespace

// ── Measure text ──────────────────────────────────────────────────────────

std::string MeasureSpec::text() const {
    std::string out{to_string(metric)};
    out += '(';
    switch (metric) {
        case MetricId::ratio:
            out += tag;
            break;
        case MetricId::latency_pct:
            out += format_number(percentile);
            break;
        case MetricId::max_latency:
            break;
        case MetricId::completeness:
            for (std::size_t i = 0; i < required_kinds.size(); ++i) {
                if (i) out += ", ";
                out += to_string(required_kinds[i]);
            }
            break;
        case MetricId::resolve_within:
            out += open_tag;
            out += ", ";
            out += close_tag;
            break;
    }
    out += ") ";
    out += to_string(comparator);
    out += ' ';
    out += format_number(threshold.value);
    if (threshold.unit != Unit::ratio) {
        out += ' ';
        out += to_string(threshold.unit);
    }
    if (window) {
        out += " over window(";
        out += format_number(window->size);
        out += window->mode == WindowSpec::Mode::count ? " events" : " s";
        out += ')';
    }
    return out;
}

// ── Parser ────────────────────────────────────────────────────────────────

namespace {

struct MeasureCursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw MeasureError(msg, pos + 1);
    }
    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected '") + c + "' " + what);
    }
    std::string label() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size()) {
            const char c = text[pos];
            if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_')
                ++pos;
            else
                break;
        }
        if (pos == start) fail("expected a label");
        return std::string(text.substr(start, pos - start));
    }
    double number() {
        skip_ws();
        const std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        bool digits = false;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            digits = true;
        }
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                ++pos;
                digits = true;
            }
        }
        if (!digits) {
            pos = start;
            fail("expected a number");
        }
        double value = 0;
        auto sv = text.substr(start, pos - start);
        auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
        if (ec != std::errc{} || p != sv.data() + sv.size()) {
            pos = start;
            fail("malformed number");
        }
        return value;
    }
    Comparator comparator() {
        skip_ws();
        const std::size_t start = pos;
        auto rest = text.substr(pos);
        auto take = [&](std::string_view op, Comparator c) -> std::optional<Comparator> {
            if (rest.substr(0, op.size()) == op) {
                pos += op.size();
                return c;
            }
            return std::nullopt;
        };
        if (auto c = take("<=", Comparator::le)) return *c;
        if (auto c = take(">=", Comparator::ge)) return *c;
        if (auto c = take("==", Comparator::eq)) return *c;
        if (auto c = take("<", Comparator::lt)) return *c;
        if (auto c = take(">", Comparator::gt)) return *c;
        pos = start;
        fail("expected a comparator (<, <=, >, >=, ==)");
    }
};

void check_threshold(const MeasureSpec& spec, std::size_t threshold_pos) {
    const Unit u = spec.threshold.unit;
    auto fail_at = [&](const std::string& msg) {
        throw MeasureError(msg, threshold_pos);
    };
    switch (spec.metric) {
        case MetricId::ratio:
        case MetricId::completeness:
            if (u != Unit::ratio)
                fail_at(std::string(to_string(spec.metric)) +
                        " threshold takes no unit");
            if (spec.threshold.value < 0.0 || spec.threshold.value > 1.0)
                fail_at(std::string(to_string(spec.metric)) +
                        " threshold must lie in [0,1]");
            break;
        case MetricId::latency_pct:
        case MetricId::max_latency:
            if (u != Unit::ms && u != Unit::s)
                fail_at("latency threshold requires a ms or s unit");
            if (spec.threshold.value < 0) fail_at("latency threshold must be >= 0");
            break;
        case MetricId::resolve_within:
            if (u != Unit::s && u != Unit::h)
                fail_at("resolve_within threshold requires an s or h unit");
            if (spec.threshold.value < 0) fail_at("deadline threshold must be >= 0");
            break;
    }
}

}  // namespace

MeasureSpec parse_measure(std::string_view text) {
    MeasureCursor cur{text};
    MeasureSpec spec;

    const std::string metric = cur.label();
    if (metric == "ratio") {
        spec.metric = MetricId::ratio;
        cur.expect('(', "after metric name");
        spec.tag = cur.label();
        cur.expect(')', "after ratio tag");
    } else if (metric == "latency_pct") {
        spec.metric = MetricId::latency_pct;
        cur.expect('(', "after metric name");
        cur.skip_ws();
        const std::size_t ppos = cur.pos + 1;
        const double p = cur.number();
        if (!(p > 0.0 && p <= 100.0))
            throw MeasureError("percentile must lie in (0,100]", ppos);
        // Quantise to 1e-3 so rank selection stays exact integer math.
        const double q = std::llround(p * 1000.0) / 1000.0;
        if (std::abs(q - p) > 1e-9)
            throw MeasureError("percentile precision is limited to 0.001", ppos);
        spec.percentile = q;
        cur.expect(')', "after percentile");
    } else if (metric == "max_latency") {
        spec.metric = MetricId::max_latency;
        spec.percentile = 100.0;
        cur.expect('(', "after metric name");
        cur.expect(')', "after metric name");
    } else if (metric == "completeness") {
        spec.metric = MetricId::completeness;
        cur.expect('(', "after metric name");
        do {
            const std::size_t kpos = cur.pos + 1;
            const std::string kind = cur.label();
            auto k = parse_span_kind(kind);
            if (!k) throw MeasureError("unknown span kind \"" + kind + "\"", kpos);
            spec.required_kinds.push_back(*k);
        } while (cur.accept(','));
        cur.expect(')', "after span kinds");
    } else if (metric == "resolve_within") {
        spec.metric = MetricId::resolve_within;
        cur.expect('(', "after metric name");
        spec.open_tag = cur.label();
        cur.expect(',', "between open and close tags");
        spec.close_tag = cur.label();
        cur.expect(')', "after close tag");
    } else {
        throw MeasureError("unknown metric \"" + metric + "\"", 1);
    }

    spec.comparator = cur.comparator();
    cur.skip_ws();
    const std::size_t threshold_pos = cur.pos + 1;
    spec.threshold.value = cur.number();

    // Optional unit, then optional window clause.
    spec.threshold.unit = Unit::ratio;
    if (!cur.eof() && cur.peek() != 'o') {
        cur.skip_ws();
        const std::size_t upos = cur.pos + 1;
        const std::string unit = cur.label();
        auto u = parse_unit(unit);
        if (!u) throw MeasureError("unknown unit \"" + unit + "\"", upos);
        if (*u == Unit::count)
            throw MeasureError("unit count is not applicable to " + metric, upos);
        spec.threshold.unit = *u;
    }
    check_threshold(spec, threshold_pos);

    if (!cur.eof()) {
        cur.skip_ws();
        const std::size_t opos = cur.pos + 1;
        const std::string kw = cur.label();
        if (kw != "over") throw MeasureError("expected 'over' or end of measure", opos);
        const std::string win = cur.label();
        if (win != "window") throw MeasureError("expected 'window(...)'", cur.pos + 1);
        cur.expect('(', "after window");
        const double size = cur.number();
        cur.skip_ws();
        const std::size_t wupos = cur.pos + 1;
        const std::string wunit = cur.label();
        WindowSpec w;
        if (wunit == "events") {
            w = WindowSpec::count(size, size);
        } else if (wunit == "s") {
            w = WindowSpec::duration(size, size);
        } else if (wunit == "h") {
            w = WindowSpec::duration(size * 3600.0, size * 3600.0);
        } else {
            throw MeasureError("window unit must be events, s or h", wupos);
        }
        if (size <= 0) throw MeasureError("window size must be positive", wupos);
        cur.expect(')', "after window size");
        spec.window = w;
    }

    if (!cur.eof()) cur.fail("trailing input after measure");
    return spec;
}

// ── Evaluation ────────────────────────────────────────────────────────────

std::size_t percentile_rank(double p, std::size_t n) {
    // p is quantised to 1e-3 at parse; exact integer arithmetic from there.
    const auto millis = static_cast<std::int64_t>(std::llround(p * 1000.0));
    const std::int64_t numer = millis * static_cast<std::int64_t>(n);
    std::int64_t rank = numer / 100000;
    if (numer % 100000 != 0) ++rank;
    if (rank < 1) rank = 1;
    return static_cast<std::size_t>(rank);
}

namespace {

bool matches_tag(const SpanRecord& r, const std::string& tag) {
    if (auto k = parse_span_kind(tag); k && r.span_kind == *k) return true;
    return r.has_outcome_tag(tag);
}

MeasureVerdict verdict_for(const MeasureSpec& spec, std::optional<double> observed,
                           std::size_t population, bool sufficient) {
    MeasureVerdict v;
    v.spec = spec;
    v.population = population;
    if (!sufficient) {
        v.outcome = Outcome::insufficient_data;
        return v;
    }
    v.observed = observed;
    v.outcome = compare(*observed, spec.comparator, spec.threshold.value)
                    ? Outcome::pass
                    : Outcome::fail;
    return v;
}

}  // namespace

MeasureVerdict evaluate(const MeasureSpec& spec, std::span<const SpanRecord> events,
                        const ScenarioScope& scope, const EvalOptions& opts) {
    std::vector<const SpanRecord*> in = filter_scope(events, scope);
    const std::size_t min_pop = std::max<std::size_t>(opts.min_population, 1);

    switch (spec.metric) {
        case MetricId::ratio: {
            const std::size_t population = in.size();
            if (population < min_pop) return verdict_for(spec, {}, population, false);
            std::size_t hits = 0;
            for (const SpanRecord* r : in) {
                if (r->has_outcome_tag(spec.tag)) ++hits;
            }
            const double observed =
                static_cast<double>(hits) / static_cast<double>(population);
            return verdict_for(spec, observed, population, true);
        }

        case MetricId::latency_pct:
        case MetricId::max_latency: {
            std::vector<double> latencies;
            for (const SpanRecord* r : in) {
                if (r->latency_ms) latencies.push_back(*r->latency_ms);
            }
            const std::size_t population = latencies.size();
            if (population < min_pop) return verdict_for(spec, {}, population, false);
            std::sort(latencies.begin(), latencies.end());
            const std::size_t rank = percentile_rank(spec.percentile, population);
            const double observed_ms = latencies[rank - 1];
            // Compare in the threshold's own unit.
            const double observed = spec.threshold.unit == Unit::s
                                        ? observed_ms / 1000.0
                                        : observed_ms;
            return verdict_for(spec, observed, population, true);
        }

        case MetricId::completeness: {
            // Group in-scope records by trace and check required kinds.
            std::map<std::string, std::set<SpanKind>> traces;
            for (const SpanRecord* r : in) traces[r->trace_id].insert(r->span_kind);
            const std::size_t population = traces.size();
            if (population < min_pop) return verdict_for(spec, {}, population, false);
            std::size_t present = 0;
            for (const auto& [trace, kinds] : traces) {
                for (SpanKind k : spec.required_kinds) {
                    if (kinds.count(k)) ++present;
                }
            }
            const double observed =
                static_cast<double>(present) /
                static_cast<double>(population * spec.required_kinds.size());
            return verdict_for(spec, observed, population, true);
        }

        case MetricId::resolve_within: {
            // Greedy in-order pairing per trace: each close consumed once.
            std::vector<const SpanRecord*> opens;
            std::map<std::string, std::vector<const SpanRecord*>> closes;
            for (const SpanRecord* r : in) {
                if (matches_tag(*r, spec.open_tag)) opens.push_back(r);
                if (matches_tag(*r, spec.close_tag)) closes[r->trace_id].push_back(r);
            }
            const std::size_t population = opens.size();
            if (population < min_pop) return verdict_for(spec, {}, population, false);
            const double limit_ms = spec.threshold.as_ms();
            std::map<std::string, std::size_t> next_close;
            std::size_t resolved = 0;
            for (const SpanRecord* open : opens) {
                auto it = closes.find(open->trace_id);
                if (it == closes.end()) continue;
                std::size_t& idx = next_close[open->trace_id];
                while (idx < it->second.size() && it->second[idx]->ts < open->ts) ++idx;
                if (idx >= it->second.size()) continue;
                const double gap_ms =
                    static_cast<double>(it->second[idx]->ts - open->ts);
                ++idx;
                if (compare(gap_ms, spec.comparator, limit_ms)) ++resolved;
            }
            const double observed =
                static_cast<double>(resolved) / static_cast<double>(population);
            MeasureVerdict v;
            v.spec = spec;
            v.population = population;
            v.observed = observed;
            // The comparator bounds each pair; the verdict requires all of them.
            v.outcome = observed == 1.0 ? Outcome::pass : Outcome::fail;
            return v;
        }
    }
    return verdict_for(spec, {}, 0, false);
}

// ── Scenario verdicts ─────────────────────────────────────────────────────

std::string MeasureVerdict::text() const {
    if (spec) return spec->text();
    return "external(" + assessment + ")";
}

ScenarioVerdicts evaluate_scenario(const ContextScenario& scenario,
                                   std::span<const SpanRecord> events,
                                   std::span<const AssessmentRecord> assessments,
                                   const EvalOptions& opts) {
    ScenarioVerdicts out;
    out.scenario_id = scenario.id;
    const ScenarioScope scope = scenario.scope();

    for (const MeasureSpec& spec : scenario.measures) {
        out.verdicts.push_back(evaluate(spec, events, scope, opts));
    }

    for (const ExternalAssessment& slot : scenario.external_assessments) {
        MeasureVerdict v;
        v.assessment = slot.name;
        v.population = 0;
        std::optional<bool> result = slot.recorded;
        for (const AssessmentRecord& rec : assessments) {
            if (rec.name == slot.name) result = rec.passed;
        }
        if (result) {
            v.population = 1;
            v.observed = *result ? 1.0 : 0.0;
            v.outcome = *result ? Outcome::pass : Outcome::fail;
        } else {
            v.outcome = Outcome::insufficient_data;
        }
        out.verdicts.push_back(v);
    }

    if (out.verdicts.empty()) {
        out.outcome = Outcome::insufficient_data;
        return out;
    }
    bool any_fail = false;
    bool any_insufficient = false;
    for (const MeasureVerdict& v : out.verdicts) {
        if (v.outcome == Outcome::fail) any_fail = true;
        if (v.outcome == Outcome::insufficient_data) any_insufficient = true;
    }
    out.outcome = any_fail ? Outcome::fail
                : any_insufficient ? Outcome::insufficient_data
                                   : Outcome::pass;
    return out;
}

}  // namespace arceval
