#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "arceval/document.hpp"
#include "dsl_cursor.hpp"

namespace arceval {

using dsl::Cursor;

bool operator==(const GovernanceSet& a, const GovernanceSet& b) {
    return a.name == b.name && a.tags == b.tags;
}

std::string_view to_string(BlockKind k) {
    switch (k) {
        case BlockKind::scenario: return "scenario";
        case BlockKind::architecture: return "architecture";
        case BlockKind::governance: return "governance";
        case BlockKind::priorities: return "priorities";
        case BlockKind::general: return "general";
    }
    return "?";
}

std::vector<GovernanceTag> Document::all_tags() const {
    std::vector<GovernanceTag> out;
    for (const GovernanceSet& set : governance)
        out.insert(out.end(), set.tags.begin(), set.tags.end());
    return out;
}

void Document::append(const Document& other) {
    for (auto [kind, idx] : other.order) {
        switch (kind) {
            case BlockKind::scenario:
                scenarios.push_back(other.scenarios[idx]);
                order.emplace_back(kind, scenarios.size() - 1);
                break;
            case BlockKind::architecture:
                architectures.push_back(other.architectures[idx]);
                order.emplace_back(kind, architectures.size() - 1);
                break;
            case BlockKind::governance:
                governance.push_back(other.governance[idx]);
                order.emplace_back(kind, governance.size() - 1);
                break;
            case BlockKind::priorities: {
                // idx points at the first input of the stakeholder group
                const std::string& who = other.priorities[idx].stakeholder;
                order.emplace_back(kind, priorities.size());
                for (const PriorityInput& in : other.priorities)
                    if (in.stakeholder == who) priorities.push_back(in);
                break;
            }
            case BlockKind::general:
                generals.push_back(other.generals[idx]);
                order.emplace_back(kind, generals.size() - 1);
                break;
        }
    }
}

bool operator==(const Document& a, const Document& b) {
    return a.scenarios == b.scenarios && a.architectures == b.architectures &&
           a.governance == b.governance && a.priorities == b.priorities &&
           a.generals == b.generals && a.order == b.order;
}

std::string ParseError::to_string() const {
    return span.to_string() + ": " + message;
}

// ── Parser ────────────────────────────────────────────────────────────────

namespace {

struct Parser {
    Cursor cur;
    Document doc;
    std::vector<ParseError> errors;
    std::set<std::string> scenario_ids;
    std::set<std::string> architecture_names;
    std::set<std::string> governance_names;
    std::set<std::string> stakeholder_names;
    std::set<QualityAttribute> general_qualities;

    Parser(std::string_view text, std::string file) : cur(text, std::move(file)) {}

    void error(const std::string& msg) { errors.push_back({msg, cur.here()}); }
    void error_at(const std::string& msg, const SourceSpan& span) {
        errors.push_back({msg, span});
    }

    // Skips the remainder of a block after an unrecoverable block error.
    void skip_block_body() {
        int depth = 1;
        while (!cur.eof() && depth > 0) {
            cur.skip_inline();
            const char c = cur.peek();
            if (c == '{') ++depth;
            if (c == '}') --depth;
            if (c == '"') {
                std::string err;
                if (!cur.read_string(err)) cur.advance();
                continue;
            }
            cur.advance();
        }
    }

    void skip_to_eol() {
        while (!cur.eof() && cur.peek() != '\n' && cur.peek() != '}') cur.advance();
    }

    // Field terminator: newline, or '}' / EOF directly after the value.
    bool expect_field_end() {
        cur.skip_inline();
        if (cur.peek() == '\n') {
            cur.advance();
            return true;
        }
        if (cur.peek() == '}' || cur.eof()) return true;
        error("expected end of line after field value");
        skip_to_eol();
        return false;
    }

    // ── value helpers ────────────────────────────────────────────────────

    std::optional<std::string> field_string() {
        std::string err;
        auto s = cur.read_string(err);
        if (!s) error(err);
        return s;
    }

    std::optional<std::string> field_label() {
        if (!cur.at_label()) {
            error("expected a label");
            return std::nullopt;
        }
        return cur.read_label();
    }

    std::optional<double> field_number() {
        std::string err;
        auto n = cur.read_number(err);
        if (!n) error(err);
        return n;
    }

    bool open_list() {
        if (!cur.accept('[')) {
            error("expected '['");
            return false;
        }
        return true;
    }

    // After an element: ',' continues, ']' ends. nullopt on error.
    std::optional<bool> list_continues() {
        cur.skip_all();
        if (cur.accept(',')) {
            cur.skip_all();
            if (cur.peek() == ']') {
                error("trailing comma in list");
                cur.advance();
                return std::nullopt;
            }
            return true;
        }
        if (cur.accept(']')) return false;
        error("expected ',' or ']' in list");
        return std::nullopt;
    }

    std::optional<std::vector<std::string>> label_list() {
        if (!open_list()) return std::nullopt;
        std::vector<std::string> out;
        cur.skip_all();
        if (cur.accept(']')) return out;
        while (true) {
            cur.skip_all();
            auto label = field_label();
            if (!label) return std::nullopt;
            out.push_back(*label);
            auto more = list_continues();
            if (!more) return std::nullopt;
            if (!*more) break;
        }
        return out;
    }

    std::optional<std::vector<ArtefactRef>> artefact_list() {
        const SourceSpan span = cur.here();
        auto labels = label_list();
        if (!labels) return std::nullopt;
        std::vector<ArtefactRef> out;
        for (const std::string& label : *labels) {
            auto a = parse_artefact(label);
            if (!a) {
                error_at("unknown artefact \"" + label + "\"", span);
                return std::nullopt;
            }
            out.push_back(*a);
        }
        return out;
    }

    // Captures raw measure text until a top-level ',' / ']' / newline.
    std::optional<MeasureSpec> measure_element() {
        cur.skip_all();
        const SourceSpan start = cur.here();
        const std::size_t begin = cur.pos;
        int parens = 0;
        while (!cur.eof()) {
            const char c = cur.peek();
            if (c == '(') ++parens;
            if (c == ')') --parens;
            if (parens == 0 && (c == ',' || c == ']' || c == '\n' || c == '#')) break;
            cur.advance();
        }
        std::string_view raw = cur.src.substr(begin, cur.pos - begin);
        while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\t' || raw.back() == '\r'))
            raw.remove_suffix(1);
        try {
            return parse_measure(raw);
        } catch (const MeasureError& e) {
            SourceSpan span = start;
            span.column += e.column - 1;
            error_at(std::string("malformed measure: ") + e.what(), span);
            return std::nullopt;
        }
    }

    std::optional<std::vector<MeasureSpec>> measure_list() {
        if (!open_list()) return std::nullopt;
        std::vector<MeasureSpec> out;
        cur.skip_all();
        if (cur.accept(']')) return out;
        while (true) {
            auto m = measure_element();
            if (!m) return std::nullopt;
            out.push_back(std::move(*m));
            auto more = list_continues();
            if (!more) return std::nullopt;
            if (!*more) break;
        }
        return out;
    }

    // ── scenario block ───────────────────────────────────────────────────

    void parse_scenario(const std::string& id, const SourceSpan& span) {
        ContextScenario s;
        s.id = id;
        s.span = span;
        std::set<std::string> present;
        bool bad = false;

        cur.skip_all();
        while (!cur.eof() && cur.peek() != '}') {
            const SourceSpan fspan = cur.here();
            if (!cur.at_label()) {
                error("expected a field name");
                skip_to_eol();
                cur.skip_all();
                bad = true;
                continue;
            }
            const std::string name = cur.read_label();
            if (!cur.accept(':')) {
                error("expected ':' after field name \"" + name + "\"");
                skip_to_eol();
                cur.skip_all();
                bad = true;
                continue;
            }
            if (!present.insert(name).second) {
                error_at("duplicate field \"" + name + "\"", fspan);
                skip_to_eol();
                cur.skip_all();
                bad = true;
                continue;
            }

            bool ok = true;
            if (name == "seq") {
                auto n = field_number();
                if (n && *n > 0 && *n == std::floor(*n)) {
                    s.seq = static_cast<std::uint32_t>(*n);
                } else {
                    if (n) error_at("seq must be a positive integer", fspan);
                    ok = false;
                }
            } else if (name == "quality") {
                auto label = field_label();
                if (label) {
                    auto q = parse_quality(*label);
                    if (q) s.quality = *q;
                    else {
                        error_at("unknown quality attribute \"" + *label + "\"", fspan);
                        ok = false;
                    }
                } else ok = false;
            } else if (name == "priority") {
                auto label = field_label();
                if (label) {
                    auto b = parse_band(*label);
                    if (b && *b != Band::unset) s.priority = *b;
                    else {
                        error_at("priority must be high, medium or low", fspan);
                        ok = false;
                    }
                } else ok = false;
            } else if (name == "source" || name == "stimulus" ||
                       name == "environment" || name == "response") {
                auto text = field_string();
                if (text && !text->empty()) {
                    if (name == "source") s.source = *text;
                    else if (name == "stimulus") s.stimulus = *text;
                    else if (name == "environment") s.environment = *text;
                    else s.response = *text;
                } else {
                    if (text) error_at("field " + name + " must be non-empty", fspan);
                    ok = false;
                }
            } else if (name == "artefacts") {
                auto refs = artefact_list();
                if (refs && !refs->empty()) s.artefacts = *refs;
                else {
                    if (refs) error_at("artefacts must be non-empty", fspan);
                    ok = false;
                }
            } else if (name == "measures") {
                auto ms = measure_list();
                if (ms) s.measures = std::move(*ms);
                else ok = false;
            } else if (name == "external") {
                ok = parse_external(s.external_assessments);
            } else {
                error_at("unknown field \"" + name + "\" in scenario block", fspan);
                ok = false;
            }

            if (!ok) {
                skip_to_eol();
                bad = true;
            }
            expect_field_end();
            cur.skip_all();
        }
        if (!cur.accept('}')) {
            error("unterminated scenario block");
            bad = true;
        }

        static const char* required[] = {"quality", "source", "stimulus",
                                         "environment", "artefacts", "response"};
        for (const char* f : required) {
            if (!present.count(f)) {
                error_at("missing field " + std::string(f), span);
                bad = true;
            }
        }
        if (!scenario_ids.insert(id).second) {
            error_at("duplicate scenario id \"" + id + "\"", span);
            bad = true;
        }
        if (bad) return;
        doc.scenarios.push_back(std::move(s));
        doc.order.emplace_back(BlockKind::scenario, doc.scenarios.size() - 1);
    }

    bool parse_external(std::vector<ExternalAssessment>& out) {
        if (!open_list()) return false;
        cur.skip_all();
        if (cur.accept(']')) return true;
        while (true) {
            cur.skip_all();
            const SourceSpan espan = cur.here();
            if (!cur.accept('[')) {
                error_at("expected [name, pass|fail|pending, note]", espan);
                return false;
            }
            ExternalAssessment slot;
            auto name = field_string();
            if (!name) return false;
            slot.name = *name;
            if (!cur.accept(',')) { error("expected ','"); return false; }
            auto state = field_label();
            if (!state) return false;
            if (*state == "pass") slot.recorded = true;
            else if (*state == "fail") slot.recorded = false;
            else if (*state == "pending") slot.recorded = std::nullopt;
            else {
                error_at("assessment state must be pass, fail or pending", espan);
                return false;
            }
            if (!cur.accept(',')) { error("expected ','"); return false; }
            auto note = field_string();
            if (!note) return false;
            slot.note = *note;
            if (!cur.accept(']')) { error("expected ']'"); return false; }
            out.push_back(std::move(slot));
            auto more = list_continues();
            if (!more) return false;
            if (!*more) break;
        }
        return true;
    }

    // ── architecture block ───────────────────────────────────────────────

    void parse_architecture(const std::string& name, const SourceSpan& span) {
        ArchitectureModel m;
        m.name = name;
        m.span = span;
        bool bad = false;
        bool seen_version = false;
        std::set<std::string> component_ids;
        std::set<std::string> approach_ids;

        cur.skip_all();
        while (!cur.eof() && cur.peek() != '}') {
            const SourceSpan fspan = cur.here();
            if (!cur.at_label()) {
                error("expected a field name");
                skip_to_eol();
                cur.skip_all();
                bad = true;
                continue;
            }
            const std::string fname = cur.read_label();
            if (!cur.accept(':')) {
                error("expected ':' after field name \"" + fname + "\"");
                skip_to_eol();
                cur.skip_all();
                bad = true;
                continue;
            }

            bool ok = true;
            if (fname == "version") {
                if (seen_version) {
                    error_at("duplicate field \"version\"", fspan);
                    ok = false;
                } else {
                    auto v = field_string();
                    if (v) m.version_label = *v;
                    else ok = false;
                    seen_version = true;
                }
            } else if (fname == "component") {
                ok = parse_component(m, component_ids, fspan);
            } else if (fname == "approach") {
                ok = parse_approach(m, approach_ids, fspan);
            } else {
                error_at("unknown field \"" + fname + "\" in architecture block", fspan);
                ok = false;
            }

            if (!ok) {
                skip_to_eol();
                bad = true;
            }
            expect_field_end();
            cur.skip_all();
        }
        if (!cur.accept('}')) {
            error("unterminated architecture block");
            bad = true;
        }

        // Approaches must reference existing component ids.
        for (const ArchApproach& a : m.approaches) {
            for (const std::string& cid : a.components) {
                if (!m.find_component(cid)) {
                    error_at("approach \"" + a.id + "\" references unknown component \"" +
                                 cid + "\"",
                             span);
                    bad = true;
                }
            }
        }
        if (!architecture_names.insert(name).second) {
            error_at("duplicate architecture \"" + name + "\"", span);
            bad = true;
        }
        if (bad) return;
        doc.architectures.push_back(std::move(m));
        doc.order.emplace_back(BlockKind::architecture, doc.architectures.size() - 1);
    }

    bool parse_component(ArchitectureModel& m, std::set<std::string>& ids,
                         const SourceSpan& fspan) {
        if (!open_list()) return false;
        Component c;
        auto id = field_label();
        if (!id) return false;
        c.id = *id;
        if (!cur.accept(',')) { error("expected ','"); return false; }
        auto label = field_label();
        if (!label) return false;
        auto a = parse_artefact(*label);
        if (!a) {
            error_at("unknown artefact \"" + *label + "\"", fspan);
            return false;
        }
        c.artefact = *a;
        if (!cur.accept(',')) { error("expected ','"); return false; }
        auto desc = field_string();
        if (!desc) return false;
        c.description = *desc;
        if (!cur.accept(']')) { error("expected ']'"); return false; }
        if (!ids.insert(c.id).second) {
            error_at("duplicate component id \"" + c.id + "\"", fspan);
            return false;
        }
        m.components.push_back(std::move(c));
        return true;
    }

    bool parse_approach(ArchitectureModel& m, std::set<std::string>& ids,
                        const SourceSpan& fspan) {
        if (!open_list()) return false;
        ArchApproach a;
        auto id = field_label();
        if (!id) return false;
        a.id = *id;
        if (!cur.accept(',')) { error("expected ','"); return false; }
        auto kind = field_label();
        if (!kind) return false;
        auto k = parse_approach_kind(*kind);
        if (!k) {
            error_at("approach kind must be pattern, tactic, decision or guardrail", fspan);
            return false;
        }
        a.kind = *k;
        if (!cur.accept(',')) { error("expected ','"); return false; }
        auto comps = label_list();
        if (!comps) return false;
        a.components = *comps;
        if (!cur.accept(',')) { error("expected ','"); return false; }
        if (!open_list()) return false;
        cur.skip_all();
        if (!cur.accept(']')) {
            while (true) {
                cur.skip_all();
                if (cur.at_string()) {
                    auto sid = field_string();
                    if (!sid) return false;
                    a.supports.push_back(SupportRef::scenario(*sid));
                } else {
                    auto label = field_label();
                    if (!label) return false;
                    // A label naming a quality attribute means the quality;
                    // anything else is a scenario id.
                    if (auto q = parse_quality(*label)) {
                        a.supports.push_back(SupportRef::of(*q));
                    } else {
                        a.supports.push_back(SupportRef::scenario(*label));
                    }
                }
                auto more = list_continues();
                if (!more) return false;
                if (!*more) break;
            }
        }
        if (!cur.accept(',')) { error("expected ','"); return false; }
        auto cov = field_label();
        if (!cov) return false;
        auto c = parse_approach_coverage(*cov);
        if (!c) {
            error_at("approach coverage must be full or partial", fspan);
            return false;
        }
        a.coverage = *c;
        if (!cur.accept(']')) { error("expected ']'"); return false; }
        if (!ids.insert(a.id).second) {
            error_at("duplicate approach id \"" + a.id + "\"", fspan);
            return false;
        }
        m.approaches.push_back(std::move(a));
        return true;
    }

    // ── governance block ─────────────────────────────────────────────────

    void parse_governance(const std::string& name, const SourceSpan& span) {
        GovernanceSet set;
        set.name = name;
        set.span = span;
        bool bad = false;
        std::set<std::string> tag_ids;

        cur.skip_all();
        while (!cur.eof() && cur.peek() != '}') {
            const SourceSpan fspan = cur.here();
            if (!cur.at_label()) {
                error("expected a field name");
                skip_to_eol();
                cur.skip_all();
                bad = true;
                continue;
            }
            const std::string fname = cur.read_label();
            if (!cur.accept(':')) {
                error("expected ':' after field name \"" + fname + "\"");
                skip_to_eol();
                cur.skip_all();
                bad = true;
                continue;
            }
            bool ok = true;
            if (fname == "tag") {
                ok = parse_tag(set, tag_ids, fspan);
            } else {
                error_at("unknown field \"" + fname + "\" in governance block", fspan);
                ok = false;
            }
            if (!ok) {
                skip_to_eol();
                bad = true;
            }
            expect_field_end();
            cur.skip_all();
        }
        if (!cur.accept('}')) {
            error("unterminated governance block");
            bad = true;
        }
        if (!governance_names.insert(name).second) {
            error_at("duplicate governance set \"" + name + "\"", span);
            bad = true;
        }
        if (bad) return;
        doc.governance.push_back(std::move(set));
        doc.order.emplace_back(BlockKind::governance, doc.governance.size() - 1);
    }

    bool parse_tag(GovernanceSet& set, std::set<std::string>& ids,
                   const SourceSpan& fspan) {
        if (!open_list()) return false;
        GovernanceTag tag;
        tag.span = fspan;
        auto id = field_label();
        if (!id) return false;
        tag.id = *id;
        if (!cur.accept(',')) { error("expected ','"); return false; }
        auto text = field_string();
        if (!text) return false;
        tag.text = *text;
        if (!cur.accept(',')) { error("expected ','"); return false; }
        auto labels = label_list();
        if (!labels) return false;
        for (const std::string& label : *labels) {
            auto q = parse_quality(label);
            if (!q) {
                error_at("unknown quality attribute \"" + label + "\"", fspan);
                return false;
            }
            tag.default_qualities.push_back(*q);
        }
        if (!cur.accept(']')) { error("expected ']'"); return false; }
        if (!ids.insert(tag.id).second) {
            error_at("duplicate tag id \"" + tag.id + "\"", fspan);
            return false;
        }
        set.tags.push_back(std::move(tag));
        return true;
    }

    // ── priorities block ─────────────────────────────────────────────────

    void parse_priorities(const std::string& stakeholder, const SourceSpan& span) {
        std::vector<PriorityInput> inputs;
        bool bad = false;
        std::set<std::string> rated;

        cur.skip_all();
        while (!cur.eof() && cur.peek() != '}') {
            const SourceSpan fspan = cur.here();
            if (!cur.at_label()) {
                error("expected a field name");
                skip_to_eol();
                cur.skip_all();
                bad = true;
                continue;
            }
            const std::string fname = cur.read_label();
            if (!cur.accept(':')) {
                error("expected ':' after field name \"" + fname + "\"");
                skip_to_eol();
                cur.skip_all();
                bad = true;
                continue;
            }
            bool ok = true;
            if (fname == "rate") {
                ok = parse_rate(stakeholder, inputs, rated, fspan);
            } else {
                error_at("unknown field \"" + fname + "\" in priorities block", fspan);
                ok = false;
            }
            if (!ok) {
                skip_to_eol();
                bad = true;
            }
            expect_field_end();
            cur.skip_all();
        }
        if (!cur.accept('}')) {
            error("unterminated priorities block");
            bad = true;
        }
        if (!stakeholder_names.insert(stakeholder).second) {
            error_at("duplicate priorities block for stakeholder \"" + stakeholder + "\"",
                     span);
            bad = true;
        }
        if (inputs.empty() && !bad) {
            error_at("priorities block must contain at least one rate", span);
            bad = true;
        }
        if (bad) return;
        doc.order.emplace_back(BlockKind::priorities, doc.priorities.size());
        for (PriorityInput& in : inputs) doc.priorities.push_back(std::move(in));
    }

    bool parse_rate(const std::string& stakeholder, std::vector<PriorityInput>& inputs,
                    std::set<std::string>& rated, const SourceSpan& fspan) {
        if (!open_list()) return false;
        PriorityInput in;
        in.stakeholder = stakeholder;
        in.span = fspan;
        cur.skip_inline();
        if (cur.at_string()) {
            auto id = field_string();
            if (!id) return false;
            in.scenario_id = *id;
        } else {
            auto id = field_label();
            if (!id) return false;
            in.scenario_id = *id;
        }
        int* slots[3] = {&in.impact, &in.risk, &in.relevance};
        static const char* names[3] = {"impact", "risk", "relevance"};
        for (int i = 0; i < 3; ++i) {
            if (!cur.accept(',')) { error("expected ','"); return false; }
            auto n = field_number();
            if (!n) return false;
            if (*n < 1 || *n > 5 || *n != std::floor(*n)) {
                error_at(std::string(names[i]) + " score must be an integer in 1-5", fspan);
                return false;
            }
            *slots[i] = static_cast<int>(*n);
        }
        if (!cur.accept(']')) { error("expected ']'"); return false; }
        if (!rated.insert(in.scenario_id).second) {
            error_at("duplicate rating for scenario \"" + in.scenario_id + "\"", fspan);
            return false;
        }
        inputs.push_back(std::move(in));
        return true;
    }

    // ── general block ────────────────────────────────────────────────────

    void parse_general(const std::string& name, const SourceSpan& span) {
        GeneralScenario g;
        g.span = span;
        bool bad = false;
        auto q = parse_quality(name);
        if (!q) {
            error_at("general block name must be a quality attribute, got \"" + name + "\"",
                     span);
            bad = true;
        } else {
            g.quality = *q;
        }
        std::set<std::string> present;

        cur.skip_all();
        while (!cur.eof() && cur.peek() != '}') {
            const SourceSpan fspan = cur.here();
            if (!cur.at_label()) {
                error("expected a field name");
                skip_to_eol();
                cur.skip_all();
                bad = true;
                continue;
            }
            const std::string fname = cur.read_label();
            if (!cur.accept(':')) {
                error("expected ':' after field name \"" + fname + "\"");
                skip_to_eol();
                cur.skip_all();
                bad = true;
                continue;
            }
            bool ok = true;
            if (fname == "measure") {
                auto text = field_string();
                if (text) g.measure_templates.push_back(*text);
                else ok = false;
            } else if (!present.insert(fname).second) {
                error_at("duplicate field \"" + fname + "\"", fspan);
                ok = false;
            } else if (fname == "source" || fname == "stimulus" ||
                       fname == "environment" || fname == "response") {
                auto text = field_string();
                if (text) {
                    if (fname == "source") g.source_template = *text;
                    else if (fname == "stimulus") g.stimulus_template = *text;
                    else if (fname == "environment") g.environment_template = *text;
                    else g.response_template = *text;
                } else ok = false;
            } else if (fname == "artefacts") {
                auto refs = artefact_list();
                if (refs && !refs->empty()) g.artefacts = *refs;
                else {
                    if (refs) error_at("artefacts must be non-empty", fspan);
                    ok = false;
                }
            } else if (fname == "metrics") {
                auto labels = label_list();
                if (!labels) {
                    ok = false;
                } else {
                    for (const std::string& label : *labels) {
                        if (label == "ratio") g.suggested_metrics.push_back(MetricId::ratio);
                        else if (label == "latency_pct")
                            g.suggested_metrics.push_back(MetricId::latency_pct);
                        else if (label == "max_latency")
                            g.suggested_metrics.push_back(MetricId::max_latency);
                        else if (label == "completeness")
                            g.suggested_metrics.push_back(MetricId::completeness);
                        else if (label == "resolve_within")
                            g.suggested_metrics.push_back(MetricId::resolve_within);
                        else {
                            error_at("unknown metric \"" + label + "\"", fspan);
                            ok = false;
                            break;
                        }
                    }
                }
            } else {
                error_at("unknown field \"" + fname + "\" in general block", fspan);
                ok = false;
            }
            if (!ok) {
                skip_to_eol();
                bad = true;
            }
            expect_field_end();
            cur.skip_all();
        }
        if (!cur.accept('}')) {
            error("unterminated general block");
            bad = true;
        }

        static const char* required[] = {"source", "stimulus", "environment",
                                         "artefacts", "response"};
        for (const char* f : required) {
            if (!present.count(f)) {
                error_at("missing field " + std::string(f), span);
                bad = true;
            }
        }
        if (q && !general_qualities.insert(*q).second) {
            error_at("duplicate general block for quality \"" + name + "\"", span);
            bad = true;
        }
        if (bad) return;
        doc.generals.push_back(std::move(g));
        doc.order.emplace_back(BlockKind::general, doc.generals.size() - 1);
    }

    // ── top level ────────────────────────────────────────────────────────

    void run() {
        while (true) {
            cur.skip_all();
            if (cur.eof()) return;
            const SourceSpan span = cur.here();
            if (!cur.at_label()) {
                error("expected a block kind");
                cur.advance();
                continue;
            }
            const std::string kind = cur.read_label();
            std::string err;
            cur.skip_inline();
            auto name = cur.read_string(err);
            if (!name) {
                error(err.empty() ? "expected a block name string" : err);
                skip_to_eol();
                continue;
            }
            if (!cur.accept_crossing_newlines('{')) {
                error("expected '{' after block name");
                skip_to_eol();
                continue;
            }
            if (kind == "scenario") {
                if (name->empty()) {
                    error_at("scenario id must be non-empty", span);
                    skip_block_body();
                } else {
                    parse_scenario(*name, span);
                }
            } else if (kind == "architecture") {
                parse_architecture(*name, span);
            } else if (kind == "governance") {
                parse_governance(*name, span);
            } else if (kind == "priorities") {
                parse_priorities(*name, span);
            } else if (kind == "general") {
                parse_general(*name, span);
            } else {
                error_at("unknown block kind \"" + kind + "\"", span);
                skip_block_body();
            }
        }
    }
};

}  // namespace

ParseResult parse_document(std::string_view text, std::string file) {
    Parser parser(text, std::move(file));
    parser.run();
    return {std::move(parser.doc), std::move(parser.errors)};
}

}  // namespace arceval
