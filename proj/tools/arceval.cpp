#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "arceval/catalogue.hpp"
#include "arceval/document.hpp"
#include "arceval/luna.hpp"
#include "arceval/monitor.hpp"
#include "arceval/report.hpp"
#include "arceval/workspace.hpp"

namespace fs = std::filesystem;
using namespace arceval;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_findings = 2;
constexpr int exit_violations = 3;
constexpr int exit_persistent = 4;
constexpr int exit_parse = 5;

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

void print_errors(const std::vector<ParseError>& errors) {
    for (const ParseError& e : errors) std::cerr << "error: " << e.to_string() << "\n";
}

// Loads a workspace or reports parse errors and returns nullopt.
std::optional<LoadResult> load_or_complain(const std::string& dir) {
    LoadResult lr = load_workspace(dir);
    if (!lr.ok()) {
        print_errors(lr.errors);
        return std::nullopt;
    }
    return lr;
}

std::optional<Weights> parse_weights(const std::string& text) {
    Weights w;
    std::istringstream in(text);
    std::string part;
    double* slots[3] = {&w.impact, &w.risk, &w.relevance};
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(in, part, ',')) return std::nullopt;
        try {
            *slots[i] = std::stod(part);
        } catch (...) {
            return std::nullopt;
        }
    }
    if (std::getline(in, part, ',')) return std::nullopt;
    return w;
}

// "100" / "100:50" (events), "60s" / "60s:30s" (seconds), "2h" (hours).
std::optional<WindowSpec> parse_window(const std::string& text) {
    auto parse_part = [](const std::string& part, bool& duration) -> std::optional<double> {
        if (part.empty()) return std::nullopt;
        double scale = 1;
        std::string digits = part;
        if (part.back() == 's') {
            duration = true;
            digits = part.substr(0, part.size() - 1);
        } else if (part.back() == 'h') {
            duration = true;
            scale = 3600;
            digits = part.substr(0, part.size() - 1);
        }
        try {
            return std::stod(digits) * scale;
        } catch (...) {
            return std::nullopt;
        }
    };
    bool duration = false;
    const auto colon = text.find(':');
    auto size = parse_part(colon == std::string::npos ? text : text.substr(0, colon),
                           duration);
    if (!size) return std::nullopt;
    double stride = *size;
    if (colon != std::string::npos) {
        bool stride_duration = false;
        auto s = parse_part(text.substr(colon + 1), stride_duration);
        if (!s) return std::nullopt;
        stride = *s;
    }
    return duration ? WindowSpec::duration(*size, stride)
                    : WindowSpec::count(*size, stride);
}

std::optional<IngestResult> read_telemetry(const std::string& source) {
    try {
        if (source == "-") return ingest(std::cin);
        return ingest_file(source);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::nullopt;
    }
}

int run_init(const std::string& dir, const std::string& name) {
    Workspace ws;
    ws.name = name;
    save_workspace(ws, dir);
    for (const char* doc : {"scenarios.aas", "governance.aas", "architectures.aas",
                            "priorities.aas"})
        std::ofstream(fs::path(dir) / doc, std::ios::app);
    // Register the (empty) documents in the manifest.
    WorkspaceManifest m;
    m.name = name;
    m.documents = {"scenarios.aas", "governance.aas", "architectures.aas",
                   "priorities.aas"};
    std::ofstream(fs::path(dir) / manifest_filename, std::ios::binary)
        << serialize_manifest(m);
    std::cout << "initialised workspace \"" << name << "\" in " << dir << "\n";
    return exit_ok;
}

int run_catalogue() {
    for (const GeneralScenario& g : builtin_catalogue()) {
        std::cout << serialize_general(g);
        if (g.quality != builtin_catalogue().back().quality) std::cout << "\n";
    }
    return exit_ok;
}

int run_scenario_new(const std::string& quality_label, const std::string& id,
                     const std::vector<std::string>& sets) {
    auto quality = parse_quality(quality_label);
    if (!quality) {
        std::cerr << "error: unknown quality attribute \"" << quality_label << "\"\n";
        return exit_parse;
    }
    std::vector<FieldOverride> overrides;
    for (const std::string& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --set expects field=value, got \"" << kv << "\"\n";
            return exit_parse;
        }
        overrides.push_back({kv.substr(0, eq), kv.substr(eq + 1)});
    }
    try {
        const GeneralScenario& general = catalogue_entry(builtin_catalogue(), *quality);
        const ContextScenario scenario = instantiate(general, id, overrides);
        std::cout << serialize_scenario(scenario);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    }
    return exit_ok;
}

int run_check(const std::string& dir) {
    auto lr = load_or_complain(dir);
    if (!lr) return exit_parse;
    const Workspace& ws = lr->workspace;

    bool warnings = false;
    auto emit = [&](const Finding& f) {
        std::cout << f.to_string() << "\n";
        if (f.level == FindingLevel::warning) warnings = true;
    };

    const auto catalogue =
        apply_catalogue_overrides(builtin_catalogue(), lr->catalogue_overrides);
    for (const ContextScenario& s : ws.scenarios)
        for (const Finding& f : validate(s, catalogue)) emit(f);

    if (ws.state.done(ProcessStep::identify_requirements)) {
        for (const Finding& f : coverage_check(ws)) emit(f);
    }
    if (!warnings) std::cout << "ok: no warnings\n";
    return warnings ? exit_findings : exit_ok;
}

int run_prioritise(const std::string& dir, const std::string& weights_text, bool save) {
    auto lr = load_or_complain(dir);
    if (!lr) return exit_parse;
    Workspace ws = lr->workspace;

    Weights weights = ws.weights;
    if (!weights_text.empty()) {
        auto w = parse_weights(weights_text);
        if (!w) {
            std::cerr << "error: --weights expects three comma-separated numbers\n";
            return exit_parse;
        }
        weights = *w;
    }

    std::vector<std::string> ids;
    for (const ContextScenario& s : ws.scenarios) ids.push_back(s.id);
    try {
        AdvancePayload payload;
        payload.weights = weights;
        payload.priorities = apply_band_overrides(
            prioritise(ids, ws.priority_inputs, weights, ws.band_cutoffs), ws.scenarios);
        ws = advance(std::move(ws), ProcessStep::prioritise_scenarios, payload);
        for (const PriorityResult& r : ws.priorities) {
            std::cout << r.rank << ". " << r.scenario_id << " score "
                      << fixed2(r.score) << " band " << to_string(r.band)
                      << (r.manual_band ? " (manual)" : "") << "\n";
        }
        if (save) save_workspace(ws, dir, lr->persistence);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    }
    return exit_ok;
}

int run_analyse(const std::string& dir, bool save) {
    auto lr = load_or_complain(dir);
    if (!lr) return exit_parse;
    Workspace ws = lr->workspace;

    const ArchitectureModel* arch = ws.current();
    if (!arch) {
        std::cerr << "error: workspace has no architecture revision\n";
        return exit_parse;
    }
    try {
        ws = advance(std::move(ws), ProcessStep::analyse_architecture, {});
        const auto coverage = gap_analysis(ws.scenarios, *ws.current());
        record_gap_risks(ws.analysis, coverage, ws.scenarios, ws.priorities);
        update_mitigations(ws.analysis, ws.scenarios, ws.architectures);
        for (const ScenarioCoverage& cov : coverage) {
            std::cout << cov.scenario_id << " (" << to_string(cov.quality)
                      << "): " << to_string(cov.level) << "\n";
            for (const std::string& why : cov.justifications)
                std::cout << "  - " << why << "\n";
        }
        if (save) save_workspace(ws, dir, lr->persistence);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    }
    return exit_ok;
}

int run_monitor_cmd(const std::string& dir, const std::string& telemetry,
                    const std::string& window_text, std::size_t persistence) {
    auto lr = load_or_complain(dir);
    if (!lr) return exit_parse;
    const Workspace& ws = lr->workspace;

    WindowSpec window = WindowSpec::whole();
    if (!window_text.empty()) {
        auto w = parse_window(window_text);
        if (!w) {
            std::cerr << "error: cannot parse --window \"" << window_text << "\"\n";
            return exit_parse;
        }
        window = *w;
    }
    auto records = read_telemetry(telemetry);
    if (!records) return exit_parse;
    for (const RejectedLine& r : records->rejected)
        std::cerr << "telemetry line " << r.line_no << " rejected: " << r.reason << "\n";

    const std::size_t n = persistence ? persistence : lr->persistence;
    try {
        const MonitorResult result =
            run_monitor(ws.scenarios, records->accepted, window, n);
        std::cout << serialize_alerts(result.alerts);
        for (const ViolationSummary& s : result.summaries) {
            if (s.windows_failed == 0) continue;
            std::cerr << s.scenario_id << " / " << s.spec.text() << ": "
                      << s.windows_failed << "/" << s.windows_evaluated
                      << " windows failed, longest streak " << s.consecutive_failures
                      << (s.persistent ? " (persistent)" : "") << "\n";
        }
        for (const ReprioritisationTrigger& t : result.triggers) {
            std::cerr << "trigger: reprioritise " << t.scenario_id << " ["
                      << t.spec.text() << "]\n";
        }
        return result.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    }
}

int run_report(const std::string& dir, const std::string& telemetry,
               const std::string& format, const std::string& window_text,
               std::size_t persistence) {
    auto lr = load_or_complain(dir);
    if (!lr) return exit_parse;
    const Workspace& ws = lr->workspace;

    std::vector<ScenarioVerdicts> verdicts;
    std::vector<ViolationSummary> summaries;
    int code = exit_ok;
    if (!telemetry.empty()) {
        auto records = read_telemetry(telemetry);
        if (!records) return exit_parse;
        WindowedRecords sorted = windows(records->accepted, WindowSpec::whole());
        for (const ContextScenario& s : ws.scenarios)
            verdicts.push_back(evaluate_scenario(s, sorted.sorted));

        WindowSpec window = WindowSpec::whole();
        if (!window_text.empty()) {
            auto w = parse_window(window_text);
            if (!w) {
                std::cerr << "error: cannot parse --window \"" << window_text << "\"\n";
                return exit_parse;
            }
            window = *w;
        }
        const std::size_t n = persistence ? persistence : lr->persistence;
        const MonitorResult result =
            run_monitor(ws.scenarios, records->accepted, window, n);
        summaries = result.summaries;
        code = result.exit_code();
    }

    if (format == "machine") {
        std::cout << render_coverage_json(ws);
    } else {
        std::cout << render_report(ws, verdicts, summaries);
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AgentArcEval: scenario-based architecture evaluation for FM agents"};
    app.require_subcommand(1);

    std::string workspace_dir = ".";
    std::string name = "workspace";
    std::string quality;
    std::string id;
    std::vector<std::string> sets;
    std::string weights_text;
    std::string telemetry;
    std::string window_text;
    std::string format = "text";
    std::size_t persistence = 0;
    bool save = false;

    auto* init = app.add_subcommand("init", "Create an empty workspace");
    init->add_option("--workspace", workspace_dir, "Workspace directory");
    init->add_option("--name", name, "Workspace name");

    auto* catalogue =
        app.add_subcommand("catalogue", "Print the built-in general-scenario catalogue");

    auto* scenario = app.add_subcommand("scenario", "Scenario operations");
    auto* scenario_new =
        scenario->add_subcommand("new", "Instantiate a context scenario from the catalogue");
    scenario_new->add_option("quality", quality, "Quality attribute")->required();
    scenario_new->add_option("--id", id, "Scenario id")->required();
    scenario_new->add_option("--set", sets, "Field override, field=value");

    auto* check = app.add_subcommand("check", "Validate scenarios and traceability");
    check->add_option("--workspace", workspace_dir, "Workspace directory");

    auto* prioritise_cmd = app.add_subcommand("prioritise", "Rank context scenarios");
    prioritise_cmd->add_option("--workspace", workspace_dir, "Workspace directory");
    prioritise_cmd->add_option("--weights", weights_text, "impact,risk,relevance");
    prioritise_cmd->add_flag("--save", save, "Persist the advanced workspace");

    auto* analyse = app.add_subcommand("analyse", "Gap analysis against the current architecture");
    analyse->add_option("--workspace", workspace_dir, "Workspace directory");
    analyse->add_flag("--save", save, "Persist the advanced workspace");

    auto* monitor_cmd = app.add_subcommand("monitor", "Evaluate measures over telemetry windows");
    monitor_cmd->add_option("--workspace", workspace_dir, "Workspace directory");
    monitor_cmd->add_option("--telemetry", telemetry, "Telemetry file or - for stdin")
        ->required();
    monitor_cmd->add_option("--window", window_text,
                            "Window spec: N[:S] events or Ns[:Ss] / Nh duration");
    monitor_cmd->add_option("--persistence", persistence,
                            "Consecutive failing windows for a persistent violation");

    auto* report = app.add_subcommand("report", "Render the evaluation report");
    report->add_option("--workspace", workspace_dir, "Workspace directory");
    report->add_option("--telemetry", telemetry, "Telemetry file or - for stdin");
    report->add_option("--window", window_text, "Window spec for the monitor pass");
    report->add_option("--persistence", persistence, "Persistence threshold");
    report->add_option("--format", format, "text | machine")
        ->check(CLI::IsMember({"text", "machine"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (init->parsed()) return run_init(workspace_dir, name);
        if (catalogue->parsed()) return run_catalogue();
        if (scenario->parsed() && scenario_new->parsed())
            return run_scenario_new(quality, id, sets);
        if (check->parsed()) return run_check(workspace_dir);
        if (prioritise_cmd->parsed())
            return run_prioritise(workspace_dir, weights_text, save);
        if (analyse->parsed()) return run_analyse(workspace_dir, save);
        if (monitor_cmd->parsed())
            return run_monitor_cmd(workspace_dir, telemetry, window_text, persistence);
        if (report->parsed())
            return run_report(workspace_dir, telemetry, format, window_text, persistence);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    }
    return exit_ok;
}
