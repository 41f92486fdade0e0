#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "arceval/workspace.hpp"
#include "dsl_cursor.hpp"

namespace arceval {

namespace fs = std::filesystem;
using dsl::Cursor;

// ── Manifest parser ───────────────────────────────────────────────────────

namespace {

std::string format_weight(double v) {
    if (v == std::floor(v)) return std::to_string(static_cast<long long>(v));
    std::ostringstream os;
    os << v;
    return os.str();
}

struct ManifestParser {
    Cursor cur;
    WorkspaceManifest manifest;
    std::vector<ParseError> errors;

    ManifestParser(std::string_view text, std::string file)
        : cur(text, std::move(file)) {}

    void error(const std::string& msg) { errors.push_back({msg, cur.here()}); }
    void error_at(const std::string& msg, const SourceSpan& span) {
        errors.push_back({msg, span});
    }

    void skip_to_eol() {
        while (!cur.eof() && cur.peek() != '\n' && cur.peek() != '}') cur.advance();
    }

    std::optional<std::string> need_string() {
        std::string err;
        auto s = cur.read_string(err);
        if (!s) error(err);
        return s;
    }

    std::optional<std::string> need_label() {
        if (!cur.at_label()) {
            error("expected a label");
            return std::nullopt;
        }
        return cur.read_label();
    }

    std::optional<double> need_number() {
        std::string err;
        auto n = cur.read_number(err);
        if (!n) error(err);
        return n;
    }

    bool comma() {
        if (cur.accept(',')) return true;
        error("expected ','");
        return false;
    }

    bool open() {
        if (cur.accept('[')) return true;
        error("expected '['");
        return false;
    }

    bool close() {
        if (cur.accept(']')) return true;
        error("expected ']'");
        return false;
    }

    std::optional<std::vector<std::string>> label_list() {
        if (!open()) return std::nullopt;
        std::vector<std::string> out;
        cur.skip_all();
        if (cur.accept(']')) return out;
        while (true) {
            cur.skip_all();
            auto l = need_label();
            if (!l) return std::nullopt;
            out.push_back(*l);
            cur.skip_all();
            if (cur.accept(',')) continue;
            if (cur.accept(']')) break;
            error("expected ',' or ']'");
            return std::nullopt;
        }
        return out;
    }

    std::optional<std::vector<std::string>> id_list() {
        // Labels or quoted strings, mixed.
        if (!open()) return std::nullopt;
        std::vector<std::string> out;
        cur.skip_all();
        if (cur.accept(']')) return out;
        while (true) {
            cur.skip_all();
            if (cur.at_string()) {
                auto s = need_string();
                if (!s) return std::nullopt;
                out.push_back(*s);
            } else {
                auto l = need_label();
                if (!l) return std::nullopt;
                out.push_back(*l);
            }
            cur.skip_all();
            if (cur.accept(',')) continue;
            if (cur.accept(']')) break;
            error("expected ',' or ']'");
            return std::nullopt;
        }
        return out;
    }

    bool parse_field(const std::string& name, const SourceSpan& fspan) {
        if (name == "document") {
            auto s = need_string();
            if (!s) return false;
            manifest.documents.push_back(*s);
        } else if (name == "current") {
            auto s = need_string();
            if (!s) return false;
            manifest.current_architecture = *s;
        } else if (name == "weights") {
            if (!open()) return false;
            double w[3];
            for (int i = 0; i < 3; ++i) {
                if (i && !comma()) return false;
                auto n = need_number();
                if (!n) return false;
                w[i] = *n;
            }
            if (!close()) return false;
            manifest.weights = {w[0], w[1], w[2]};
        } else if (name == "bands") {
            if (!open()) return false;
            auto high = need_number();
            if (!high || !comma()) return false;
            auto medium = need_number();
            if (!medium) return false;
            if (!close()) return false;
            if (*medium > *high) {
                error_at("band cut-offs must be ordered high >= medium", fspan);
                return false;
            }
            manifest.band_cutoffs = {*high, *medium};
        } else if (name == "persistence") {
            auto n = need_number();
            if (!n) return false;
            if (*n < 1 || *n != std::floor(*n)) {
                error_at("persistence must be a positive integer", fspan);
                return false;
            }
            manifest.persistence = static_cast<std::size_t>(*n);
        } else if (name == "goal") {
            if (!open()) return false;
            GoalStatement g;
            auto id = need_label();
            if (!id || !comma()) return false;
            g.id = *id;
            auto text = need_string();
            if (!text || !comma()) return false;
            g.text = *text;
            auto state = need_label();
            if (!state) return false;
            if (*state == "clarified") g.clarified = true;
            else if (*state == "unclarified") g.clarified = false;
            else {
                error_at("goal state must be clarified or unclarified", fspan);
                return false;
            }
            if (!close()) return false;
            manifest.goals.push_back(std::move(g));
        } else if (name == "requirement") {
            if (!open()) return false;
            QualityRequirement r;
            auto q = need_label();
            if (!q) return false;
            auto quality = parse_quality(*q);
            if (!quality) {
                error_at("unknown quality attribute \"" + *q + "\"", fspan);
                return false;
            }
            r.quality = *quality;
            if (!comma()) return false;
            auto text = need_string();
            if (!text || !comma()) return false;
            r.rationale = *text;
            auto refs = label_list();
            if (!refs || !comma()) return false;
            r.governance_refs = *refs;
            auto kind = need_label();
            if (!kind) return false;
            if (*kind == "guardrail") r.guardrail = true;
            else if (*kind == "quality") r.guardrail = false;
            else {
                error_at("requirement kind must be quality or guardrail", fspan);
                return false;
            }
            if (!close()) return false;
            manifest.requirements.push_back(std::move(r));
        } else if (name == "completed") {
            auto labels = label_list();
            if (!labels) return false;
            for (const std::string& l : *labels) {
                auto step = parse_process_step(l);
                if (!step) {
                    error_at("unknown process step \"" + l + "\"", fspan);
                    return false;
                }
                manifest.completed.push_back(*step);
            }
        } else if (name == "risk") {
            if (!open()) return false;
            Risk r;
            auto id = need_label();
            if (!id || !comma()) return false;
            r.id = *id;
            auto text = need_string();
            if (!text || !comma()) return false;
            r.text = *text;
            auto scenarios = id_list();
            if (!scenarios || !comma()) return false;
            r.scenarios = *scenarios;
            auto approaches = label_list();
            if (!approaches || !comma()) return false;
            r.approaches = *approaches;
            auto status = need_label();
            if (!status) return false;
            auto st = parse_risk_status(*status);
            if (!st) {
                error_at("risk status must be open or mitigated", fspan);
                return false;
            }
            r.status = *st;
            if (!close()) return false;
            manifest.ledger.risks.push_back(std::move(r));
        } else if (name == "tradeoff") {
            if (!open()) return false;
            Tradeoff t;
            auto id = need_label();
            if (!id || !comma()) return false;
            t.id = *id;
            auto text = need_string();
            if (!text || !comma()) return false;
            t.text = *text;
            auto quals = label_list();
            if (!quals || !comma()) return false;
            for (const std::string& l : *quals) {
                auto q = parse_quality(l);
                if (!q) {
                    error_at("unknown quality attribute \"" + l + "\"", fspan);
                    return false;
                }
                t.qualities.push_back(*q);
            }
            std::set<QualityAttribute> distinct(t.qualities.begin(), t.qualities.end());
            if (distinct.size() < 2) {
                error_at("tradeoff needs at least two distinct qualities", fspan);
                return false;
            }
            auto approach = need_label();
            if (!approach) return false;
            t.approach = *approach;
            if (!close()) return false;
            manifest.ledger.tradeoffs.push_back(std::move(t));
        } else if (name == "sensitivity") {
            if (!open()) return false;
            SensitivityPoint s;
            auto id = need_label();
            if (!id || !comma()) return false;
            s.id = *id;
            auto text = need_string();
            if (!text || !comma()) return false;
            s.text = *text;
            auto approach = need_label();
            if (!approach || !comma()) return false;
            s.approach = *approach;
            auto q = need_label();
            if (!q) return false;
            auto quality = parse_quality(*q);
            if (!quality) {
                error_at("unknown quality attribute \"" + *q + "\"", fspan);
                return false;
            }
            s.quality = *quality;
            if (!close()) return false;
            manifest.ledger.sensitivities.push_back(std::move(s));
        } else if (name == "recommendation") {
            if (!open()) return false;
            Recommendation r;
            auto id = need_label();
            if (!id || !comma()) return false;
            r.id = *id;
            auto text = need_string();
            if (!text || !comma()) return false;
            r.text = *text;
            auto risks = label_list();
            if (!risks || !comma()) return false;
            r.addresses = *risks;
            auto target = need_string();
            if (!target) return false;
            r.target = *target;
            if (!close()) return false;
            manifest.ledger.recommendations.push_back(std::move(r));
        } else if (name == "audit") {
            if (!open()) return false;
            ReprioritisationAudit a;
            cur.skip_all();
            if (cur.at_string()) {
                auto s = need_string();
                if (!s) return false;
                a.scenario_id = *s;
            } else {
                auto l = need_label();
                if (!l) return false;
                a.scenario_id = *l;
            }
            if (!comma()) return false;
            auto text = need_string();
            if (!text || !comma()) return false;
            a.measure_text = *text;
            auto old_band = need_label();
            if (!old_band || !comma()) return false;
            auto new_band = need_label();
            if (!new_band) return false;
            auto ob = parse_band(*old_band);
            auto nb = parse_band(*new_band);
            if (!ob || !nb) {
                error_at("audit bands must be high, medium, low or unset", fspan);
                return false;
            }
            a.old_band = *ob;
            a.new_band = *nb;
            if (!close()) return false;
            manifest.ledger.audit.push_back(std::move(a));
        } else {
            error_at("unknown field \"" + name + "\" in workspace manifest", fspan);
            return false;
        }
        return true;
    }

    void run() {
        cur.skip_all();
        const SourceSpan span = cur.here();
        if (!cur.at_label() || cur.read_label() != "workspace") {
            error_at("expected a workspace block", span);
            return;
        }
        std::string err;
        cur.skip_inline();
        auto name = cur.read_string(err);
        if (!name) {
            error(err.empty() ? "expected the workspace name" : err);
            return;
        }
        manifest.name = *name;
        if (!cur.accept_crossing_newlines('{')) {
            error("expected '{' after workspace name");
            return;
        }
        cur.skip_all();
        while (!cur.eof() && cur.peek() != '}') {
            const SourceSpan fspan = cur.here();
            if (!cur.at_label()) {
                error("expected a field name");
                skip_to_eol();
                cur.skip_all();
                continue;
            }
            const std::string fname = cur.read_label();
            if (!cur.accept(':')) {
                error("expected ':' after field name \"" + fname + "\"");
                skip_to_eol();
                cur.skip_all();
                continue;
            }
            if (!parse_field(fname, fspan)) skip_to_eol();
            cur.skip_inline();
            if (cur.peek() == '\n') cur.advance();
            cur.skip_all();
        }
        if (!cur.accept('}')) error("unterminated workspace block");
    }
};

}  // namespace

ManifestResult parse_manifest(std::string_view text, std::string file) {
    ManifestParser parser(text, std::move(file));
    parser.run();
    return {std::move(parser.manifest), std::move(parser.errors)};
}

// ── Manifest serializer ───────────────────────────────────────────────────

std::string serialize_manifest(const WorkspaceManifest& m) {
    std::string out = "workspace " + quote_string(m.name) + " {\n";
    for (const std::string& doc : m.documents)
        out += "  document: " + quote_string(doc) + "\n";
    if (m.current_architecture)
        out += "  current: " + quote_string(*m.current_architecture) + "\n";
    out += "  weights: [" + format_weight(m.weights.impact) + ", " +
           format_weight(m.weights.risk) + ", " + format_weight(m.weights.relevance) +
           "]\n";
    out += "  bands: [" + format_weight(m.band_cutoffs.high) + ", " +
           format_weight(m.band_cutoffs.medium) + "]\n";
    out += "  persistence: " + std::to_string(m.persistence) + "\n";
    for (const GoalStatement& g : m.goals) {
        out += "  goal: [" + g.id + ", " + quote_string(g.text) + ", " +
               (g.clarified ? "clarified" : "unclarified") + "]\n";
    }
    for (const QualityRequirement& r : m.requirements) {
        out += "  requirement: [" + std::string(to_string(r.quality)) + ", " +
               quote_string(r.rationale) + ", [" + join_labels(r.governance_refs) +
               "], " + (r.guardrail ? "guardrail" : "quality") + "]\n";
    }
    if (!m.completed.empty()) {
        out += "  completed: [";
        for (std::size_t i = 0; i < m.completed.size(); ++i) {
            if (i) out += ", ";
            out += to_string(m.completed[i]);
        }
        out += "]\n";
    }
    for (const Risk& r : m.ledger.risks) {
        out += "  risk: [" + r.id + ", " + quote_string(r.text) + ", [" +
               join_labels(r.scenarios) + "], [" + join_labels(r.approaches) + "], " +
               std::string(to_string(r.status)) + "]\n";
    }
    for (const Tradeoff& t : m.ledger.tradeoffs) {
        out += "  tradeoff: [" + t.id + ", " + quote_string(t.text) + ", [";
        for (std::size_t i = 0; i < t.qualities.size(); ++i) {
            if (i) out += ", ";
            out += to_string(t.qualities[i]);
        }
        out += "], " + t.approach + "]\n";
    }
    for (const SensitivityPoint& s : m.ledger.sensitivities) {
        out += "  sensitivity: [" + s.id + ", " + quote_string(s.text) + ", " +
               s.approach + ", " + std::string(to_string(s.quality)) + "]\n";
    }
    for (const Recommendation& r : m.ledger.recommendations) {
        out += "  recommendation: [" + r.id + ", " + quote_string(r.text) + ", [" +
               join_labels(r.addresses) + "], " + quote_string(r.target) + "]\n";
    }
    for (const ReprioritisationAudit& a : m.ledger.audit) {
        out += "  audit: [" + a.scenario_id + ", " + quote_string(a.measure_text) +
               ", " + std::string(to_string(a.old_band)) + ", " +
               std::string(to_string(a.new_band)) + "]\n";
    }
    out += "}\n";
    return out;
}

// ── load / save ───────────────────────────────────────────────────────────

namespace {

std::string read_file(const fs::path& path, std::vector<ParseError>& errors) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        errors.push_back({"cannot open file", {path.string(), 1, 1}});
        return {};
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

LoadResult load_workspace(const std::string& dir) {
    LoadResult result;
    const fs::path root(dir);
    const fs::path manifest_path = root / manifest_filename;

    const std::string manifest_text = read_file(manifest_path, result.errors);
    if (!result.errors.empty()) return result;

    ManifestResult mr = parse_manifest(manifest_text, manifest_path.string());
    result.errors.insert(result.errors.end(), mr.errors.begin(), mr.errors.end());
    if (!mr.ok()) return result;
    const WorkspaceManifest& m = mr.manifest;

    Workspace ws;
    ws.name = m.name;
    ws.goals = m.goals;
    ws.requirements = m.requirements;
    ws.weights = m.weights;
    ws.band_cutoffs = m.band_cutoffs;
    ws.analysis = m.ledger;
    ws.current_architecture = m.current_architecture;
    for (ProcessStep s : m.completed) ws.state.completed.insert(s);
    result.persistence = m.persistence;

    Document merged;
    for (const std::string& name : m.documents) {
        const fs::path path = root / name;
        const std::string text = read_file(path, result.errors);
        ParseResult pr = parse_document(text, path.string());
        result.errors.insert(result.errors.end(), pr.errors.begin(), pr.errors.end());
        merged.append(pr.document);
    }

    // Per-file parsing cannot see duplicates across documents.
    std::set<std::string> scenario_ids;
    for (const ContextScenario& s : merged.scenarios) {
        if (!scenario_ids.insert(s.id).second)
            result.errors.push_back(
                {"duplicate scenario id \"" + s.id + "\" across documents", s.span});
    }
    std::set<std::string> architecture_names;
    for (const ArchitectureModel& a : merged.architectures) {
        if (!architecture_names.insert(a.name).second)
            result.errors.push_back(
                {"duplicate architecture \"" + a.name + "\" across documents", a.span});
    }
    std::set<std::string> governance_names;
    for (const GovernanceSet& g : merged.governance) {
        if (!governance_names.insert(g.name).second)
            result.errors.push_back(
                {"duplicate governance set \"" + g.name + "\" across documents", g.span});
    }
    if (!result.errors.empty()) return result;
    ws.scenarios = merged.scenarios;
    ws.architectures = merged.architectures;
    ws.governance = merged.governance;
    ws.priority_inputs = merged.priorities;
    result.catalogue_overrides = merged.generals;

    // Priorities are derived state: recompute, then replay audited bumps.
    if (ws.state.done(ProcessStep::prioritise_scenarios) && !ws.priority_inputs.empty()) {
        ws.priorities = apply_band_overrides(
            prioritise(ws.priority_inputs, ws.weights, ws.band_cutoffs), ws.scenarios);
        std::set<std::string> bumped;
        for (const ReprioritisationAudit& a : ws.analysis.audit)
            bumped.insert(a.scenario_id);
        for (PriorityResult& r : ws.priorities) {
            if (!bumped.count(r.scenario_id)) continue;
            r.risk_mean = 5.0;
            r.score = (r.weights.impact * r.impact_mean + r.weights.risk * 5.0 +
                       r.weights.relevance * r.relevance_mean) /
                      (r.weights.impact + r.weights.risk + r.weights.relevance);
            r.band = band_for_score(r.score, r.cutoffs);
            r.manual_band = false;
        }
        assign_ranks(ws.priorities);
    }

    result.workspace = std::move(ws);
    return result;
}

void save_workspace(const Workspace& ws, const std::string& dir,
                    std::size_t persistence) {
    const fs::path root(dir);
    fs::create_directories(root);

    WorkspaceManifest m;
    m.name = ws.name;
    m.current_architecture = ws.current_architecture;
    m.weights = ws.weights;
    m.band_cutoffs = ws.band_cutoffs;
    m.persistence = persistence;
    m.goals = ws.goals;
    m.requirements = ws.requirements;
    for (ProcessStep s : all_process_steps())
        if (ws.state.done(s)) m.completed.push_back(s);
    m.ledger = ws.analysis;

    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream out(root / name, std::ios::binary);
        out << text;
        m.documents.push_back(name);
    };

    if (!ws.scenarios.empty()) {
        Document doc;
        doc.scenarios = ws.scenarios;
        for (std::size_t i = 0; i < doc.scenarios.size(); ++i)
            doc.order.emplace_back(BlockKind::scenario, i);
        write("scenarios.aas", serialize(doc));
    }
    if (!ws.architectures.empty()) {
        Document doc;
        doc.architectures = ws.architectures;
        for (std::size_t i = 0; i < doc.architectures.size(); ++i)
            doc.order.emplace_back(BlockKind::architecture, i);
        write("architectures.aas", serialize(doc));
    }
    if (!ws.governance.empty()) {
        Document doc;
        doc.governance = ws.governance;
        for (std::size_t i = 0; i < doc.governance.size(); ++i)
            doc.order.emplace_back(BlockKind::governance, i);
        write("governance.aas", serialize(doc));
    }
    if (!ws.priority_inputs.empty()) {
        Document doc;
        doc.priorities = ws.priority_inputs;
        std::set<std::string> seen;
        for (std::size_t i = 0; i < doc.priorities.size(); ++i) {
            if (seen.insert(doc.priorities[i].stakeholder).second)
                doc.order.emplace_back(BlockKind::priorities, i);
        }
        write("priorities.aas", serialize(doc));
    }

    std::ofstream out(root / manifest_filename, std::ios::binary);
    out << serialize_manifest(m);
}

}  // namespace arceval
