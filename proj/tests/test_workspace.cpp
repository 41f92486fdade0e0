#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "arceval/workspace.hpp"

using namespace arceval;

namespace {

GovernanceSet gov_set() {
    GovernanceSet set;
    set.name = "std";
    GovernanceTag tag;
    tag.id = "g1";
    tag.text = "Protect AI systems.";
    tag.default_qualities = {QualityAttribute::privacy};
    set.tags.push_back(tag);
    return set;
}

QualityRequirement requirement(QualityAttribute q,
                               std::vector<std::string> refs = {}) {
    QualityRequirement r;
    r.quality = q;
    r.rationale = "needed";
    r.governance_refs = std::move(refs);
    return r;
}

ContextScenario scenario(const std::string& id, QualityAttribute q,
                         Band priority = Band::unset) {
    ContextScenario s;
    s.id = id;
    s.quality = q;
    s.priority = priority;
    s.source = "src";
    s.stimulus = "stim";
    s.environment = "env";
    s.artefacts = {ArtefactRef::agent};
    s.response = "resp";
    return s;
}

ArchitectureModel model(const std::string& name) {
    ArchitectureModel m;
    m.name = name;
    m.version_label = "v";
    m.components.push_back({"gen", ArtefactRef::generator, "the generator"});
    return m;
}

// Advances through the design-time sequence up to (excluding) `stop`.
Workspace luna_like_until(ProcessStep stop) {
    Workspace ws;
    ws.name = "t";
    const ProcessStep order[] = {
        ProcessStep::understand_goals,      ProcessStep::review_governance,
        ProcessStep::identify_requirements, ProcessStep::review_architecture,
        ProcessStep::define_scenarios,      ProcessStep::prioritise_scenarios,
        ProcessStep::analyse_architecture,  ProcessStep::improve_architecture,
    };
    for (ProcessStep step : order) {
        if (step == stop) break;
        AdvancePayload payload;
        if (step == ProcessStep::understand_goals)
            payload.goals.push_back({"goal-1", "do the thing", true});
        if (step == ProcessStep::review_governance)
            payload.governance.push_back(gov_set());
        if (step == ProcessStep::identify_requirements)
            payload.requirements = {requirement(QualityAttribute::privacy, {"g1"}),
                                    requirement(QualityAttribute::fairness)};
        if (step == ProcessStep::review_architecture) {
            payload.architectures.push_back(model("m-1"));
            payload.current_architecture = "m-1";
        }
        if (step == ProcessStep::define_scenarios)
            payload.scenarios = {scenario("s-1", QualityAttribute::privacy)};
        if (step == ProcessStep::prioritise_scenarios) {
            PriorityInput in;
            in.scenario_id = "s-1";
            in.impact = in.risk = in.relevance = 3;
            in.stakeholder = "pm";
            payload.priority_inputs = {in};
            payload.priorities = prioritise(payload.priority_inputs);
        }
        ws = advance(std::move(ws), step, payload);
    }
    return ws;
}

}  // namespace

TEST_CASE("define-scenarios on a fresh workspace names the missing prerequisite") {
    Workspace ws;
    try {
        advance(std::move(ws), ProcessStep::define_scenarios, {});
        FAIL("expected ProcessOrderError");
    } catch (const ProcessOrderError& e) {
        REQUIRE(e.missing.size() == 1);
        CHECK(e.missing[0] == ProcessStep::identify_requirements);
        CHECK(std::string(e.what()).find("identify-requirements") != std::string::npos);
    }
}

TEST_CASE("the full design-time sequence completes 8 steps") {
    Workspace ws = luna_like_until(ProcessStep::monitor_risks);
    CHECK(ws.state.completed.size() == 8);
    for (ProcessStep s : {ProcessStep::understand_goals, ProcessStep::review_governance,
                          ProcessStep::identify_requirements,
                          ProcessStep::review_architecture, ProcessStep::define_scenarios,
                          ProcessStep::prioritise_scenarios,
                          ProcessStep::analyse_architecture,
                          ProcessStep::improve_architecture})
        CHECK(ws.state.done(s));
}

TEST_CASE("reprioritise re-opens analyse and improve, and only those") {
    Workspace ws = luna_like_until(ProcessStep::monitor_risks);
    ws = advance(std::move(ws), ProcessStep::monitor_risks, {});
    const auto before = ws.state.completed;
    ws = advance(std::move(ws), ProcessStep::reprioritise, {});

    CHECK(!ws.state.done(ProcessStep::analyse_architecture));
    CHECK(!ws.state.done(ProcessStep::improve_architecture));
    CHECK(ws.state.done(ProcessStep::reprioritise));
    // Nothing else was removed.
    for (ProcessStep s : before) {
        if (s == ProcessStep::analyse_architecture ||
            s == ProcessStep::improve_architecture)
            continue;
        CHECK(ws.state.done(s));
    }
    // The re-opened steps can be redone.
    ws = advance(std::move(ws), ProcessStep::analyse_architecture, {});
    CHECK(ws.state.done(ProcessStep::analyse_architecture));
}

TEST_CASE("every missing-prerequisite combination is rejected") {
    // For each step, try it on a workspace that completed everything except
    // one of its prerequisites.
    for (ProcessStep step : all_process_steps()) {
        Workspace complete;
        for (ProcessStep s : all_process_steps()) complete.state.completed.insert(s);
        const auto prereqs = [&] {
            Workspace fresh;
            return fresh.state.missing_for(step);
        }();
        for (ProcessStep missing : prereqs) {
            Workspace ws = complete;
            ws.state.completed.erase(missing);
            CHECK_THROWS_AS(advance(std::move(ws), step, {}), ProcessOrderError);
        }
    }
}

TEST_CASE("advance validates payload invariants") {
    Workspace ws = luna_like_until(ProcessStep::define_scenarios);

    AdvancePayload outside;
    outside.scenarios = {scenario("s-x", QualityAttribute::security)};
    CHECK_THROWS_AS(advance(ws, ProcessStep::define_scenarios, outside),
                    std::invalid_argument);

    AdvancePayload dup;
    dup.scenarios = {scenario("s-1", QualityAttribute::privacy),
                     scenario("s-1", QualityAttribute::privacy)};
    CHECK_THROWS_AS(advance(ws, ProcessStep::define_scenarios, dup),
                    std::invalid_argument);

    AdvancePayload bad_ref;
    bad_ref.requirements = {requirement(QualityAttribute::safety, {"ghost"})};
    CHECK_THROWS_AS(advance(ws, ProcessStep::identify_requirements, bad_ref),
                    std::invalid_argument);
}

TEST_CASE("coverage_check flags requirements without scenarios") {
    Workspace ws = luna_like_until(ProcessStep::prioritise_scenarios);
    // Requirements: privacy (has s-1), fairness (no scenario). g1 is referenced.
    const auto findings = coverage_check(ws);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].subject == "fairness");
    CHECK(findings[0].message.find("no context scenario") != std::string::npos);
}

TEST_CASE("coverage_check flags unreferenced governance tags") {
    Workspace ws = luna_like_until(ProcessStep::prioritise_scenarios);
    GovernanceSet extra;
    extra.name = "extra";
    GovernanceTag loose;
    loose.id = "g9";
    loose.text = "An unmapped obligation.";
    extra.tags.push_back(loose);
    AdvancePayload payload;
    payload.governance.push_back(extra);
    ws = advance(std::move(ws), ProcessStep::review_governance, payload);

    const auto findings = coverage_check(ws);
    bool found = false;
    for (const Finding& f : findings)
        if (f.subject == "g9") found = true;
    CHECK(found);
}

TEST_CASE("coverage_check needs identify-requirements; empty governance is vacuous") {
    Workspace fresh;
    CHECK_THROWS_AS(coverage_check(fresh), ProcessOrderError);

    Workspace ws;
    ws = advance(std::move(ws), ProcessStep::understand_goals, {});
    ws = advance(std::move(ws), ProcessStep::review_governance, {});
    AdvancePayload reqs;
    reqs.requirements = {requirement(QualityAttribute::privacy)};
    ws = advance(std::move(ws), ProcessStep::identify_requirements, reqs);
    // No governance tags at all: only the requirement-without-scenario finding.
    const auto findings = coverage_check(ws);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].subject == "privacy");
}

TEST_CASE("coverage_check is monotone: adding a scenario never adds a finding") {
    Workspace ws = luna_like_until(ProcessStep::prioritise_scenarios);
    const auto before = coverage_check(ws).size();
    AdvancePayload payload;
    payload.scenarios = {scenario("s-2", QualityAttribute::fairness)};
    ws = advance(std::move(ws), ProcessStep::define_scenarios, payload);
    CHECK(coverage_check(ws).size() <= before);
}

TEST_CASE("diff of a model against itself is empty") {
    const ArchitectureModel m = model("m");
    CHECK(diff_architectures(m, m).empty());
}

TEST_CASE("a renamed component id is one removal plus one addition") {
    ArchitectureModel before = model("m");
    ArchitectureModel after = before;
    after.components[0].id = "generator-core";
    const ArchitectureDiff diff = diff_architectures(before, after);
    CHECK(diff.added_components == std::vector<std::string>{"generator-core"});
    CHECK(diff.removed_components == std::vector<std::string>{"gen"});
    CHECK(diff.modified_components.empty());
}

TEST_CASE("modified components and approaches are reported by id") {
    ArchitectureModel before = model("m");
    ArchApproach a;
    a.id = "caching";
    a.kind = ApproachKind::tactic;
    a.components = {"gen"};
    a.supports = {SupportRef::of(QualityAttribute::efficiency)};
    before.approaches.push_back(a);

    ArchitectureModel after = before;
    after.components[0].description = "changed";
    after.approaches[0].coverage = ApproachCoverage::partial;
    const ArchitectureDiff diff = diff_architectures(before, after);
    CHECK(diff.modified_components == std::vector<std::string>{"gen"});
    CHECK(diff.modified_approaches == std::vector<std::string>{"caching"});
}

TEST_CASE("manifest round-trips through its serializer") {
    WorkspaceManifest m;
    m.name = "demo";
    m.documents = {"scenarios.aas", "governance.aas"};
    m.current_architecture = "m-2";
    m.weights = {2, 1, 1};
    m.band_cutoffs = {4.5, 3};
    m.persistence = 5;
    m.goals = {{"goal-1", "say \"hi\"", true}};
    m.requirements = {requirement(QualityAttribute::privacy)};
    m.completed = {ProcessStep::understand_goals, ProcessStep::review_governance};
    m.ledger.risks = {{"r1", "a risk", {"s-1"}, {}, RiskStatus::open}};
    m.ledger.tradeoffs = {{"t1", "a tradeoff",
                           {QualityAttribute::accuracy, QualityAttribute::efficiency},
                           "caching"}};
    m.ledger.sensitivities = {{"sp1", "sensitive", "caching", QualityAttribute::accuracy}};
    m.ledger.recommendations = {{"rec1", "fix it", {"r1"}, "m-2"}};
    m.ledger.audit = {{"s-1", "ratio(ok) >= 0.5", Band::medium, Band::high}};

    const std::string text = serialize_manifest(m);
    const ManifestResult back = parse_manifest(text);
    const std::string manifest_err =
        back.errors.empty() ? "" : back.errors[0].to_string();
    REQUIRE_MESSAGE(back.ok(), manifest_err);
    CHECK(back.manifest.name == m.name);
    CHECK(back.manifest.documents == m.documents);
    CHECK(back.manifest.current_architecture == m.current_architecture);
    CHECK(back.manifest.weights == m.weights);
    CHECK(back.manifest.band_cutoffs == m.band_cutoffs);
    CHECK(back.manifest.persistence == m.persistence);
    CHECK(back.manifest.goals == m.goals);
    CHECK(back.manifest.requirements == m.requirements);
    CHECK(back.manifest.completed == m.completed);
    CHECK(back.manifest.ledger == m.ledger);
    CHECK(serialize_manifest(back.manifest) == text);
}

TEST_CASE("general blocks in workspace documents surface as catalogue overrides") {
    const auto dir = std::filesystem::temp_directory_path() / "arceval-ws-generals";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    {
        std::ofstream manifest(dir / manifest_filename);
        manifest << "workspace \"g\" {\n  document: \"doc.aas\"\n}\n";
        std::ofstream doc(dir / "doc.aas");
        doc << "general \"safety\" {\n"
               "  source: \"s\"\n  stimulus: \"st\"\n  environment: \"e\"\n"
               "  artefacts: [guardrails]\n  response: \"r\"\n"
               "}\n";
    }
    const LoadResult lr = load_workspace(dir.string());
    REQUIRE(lr.ok());
    REQUIRE(lr.catalogue_overrides.size() == 1);
    CHECK(lr.catalogue_overrides[0].quality == QualityAttribute::safety);
    std::filesystem::remove_all(dir);
}

TEST_CASE("duplicate scenario ids across document files are load errors") {
    const auto dir = std::filesystem::temp_directory_path() / "arceval-ws-dup";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const char* block =
        "scenario \"same\" {\n"
        "  quality: accuracy\n  source: \"a\"\n  stimulus: \"b\"\n"
        "  environment: \"c\"\n  artefacts: [agent]\n  response: \"d\"\n}\n";
    {
        std::ofstream manifest(dir / manifest_filename);
        manifest << "workspace \"dup\" {\n  document: \"a.aas\"\n"
                    "  document: \"b.aas\"\n}\n";
        std::ofstream(dir / "a.aas") << block;
        std::ofstream(dir / "b.aas") << block;
    }
    const LoadResult lr = load_workspace(dir.string());
    REQUIRE(!lr.ok());
    CHECK(lr.errors[0].message.find("across documents") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("workspace save/load round-trips losslessly") {
    Workspace ws = luna_like_until(ProcessStep::analyse_architecture);
    const auto dir =
        std::filesystem::temp_directory_path() / "arceval-ws-roundtrip-test";
    std::filesystem::remove_all(dir);
    save_workspace(ws, dir.string(), 4);

    const LoadResult lr = load_workspace(dir.string());
    const std::string load_err = lr.errors.empty() ? "" : lr.errors[0].to_string();
    REQUIRE_MESSAGE(lr.ok(), load_err);
    const Workspace& back = lr.workspace;
    CHECK(lr.persistence == 4);
    CHECK(back.name == ws.name);
    CHECK(back.goals == ws.goals);
    CHECK(back.governance == ws.governance);
    CHECK(back.requirements == ws.requirements);
    CHECK(back.scenarios == ws.scenarios);
    CHECK(back.architectures == ws.architectures);
    CHECK(back.current_architecture == ws.current_architecture);
    CHECK(back.priority_inputs == ws.priority_inputs);
    CHECK(back.analysis == ws.analysis);
    CHECK(back.state == ws.state);
    REQUIRE(back.priorities.size() == ws.priorities.size());
    for (std::size_t i = 0; i < ws.priorities.size(); ++i) {
        CHECK(back.priorities[i].scenario_id == ws.priorities[i].scenario_id);
        CHECK(back.priorities[i].score == ws.priorities[i].score);
        CHECK(back.priorities[i].band == ws.priorities[i].band);
    }
    std::filesystem::remove_all(dir);
}
