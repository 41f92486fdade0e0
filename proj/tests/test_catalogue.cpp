#include <doctest.h>

#include <set>

#include "arceval/catalogue.hpp"
#include "arceval/document.hpp"

using namespace arceval;

TEST_CASE("built-in catalogue has exactly one entry per quality attribute") {
    const auto& catalogue = builtin_catalogue();
    CHECK(catalogue.size() == 11);
    std::set<QualityAttribute> seen;
    for (const GeneralScenario& g : catalogue) {
        CHECK(seen.insert(g.quality).second);
        CHECK(!g.source_template.empty());
        CHECK(!g.stimulus_template.empty());
        CHECK(!g.environment_template.empty());
        CHECK(!g.artefacts.empty());
        CHECK(!g.response_template.empty());
        CHECK(!g.measure_templates.empty());
    }
    CHECK(seen.size() == 11);
}

TEST_CASE("accuracy entry matches the published template") {
    const GeneralScenario& g =
        catalogue_entry(builtin_catalogue(), QualityAttribute::accuracy);
    CHECK(g.response_template.find("accurately accomplishes the goal through") !=
          std::string::npos);
    CHECK(g.artefacts == std::vector<ArtefactRef>{ArtefactRef::agent});
}

TEST_CASE("observability entry targets the log repository") {
    const GeneralScenario& g =
        catalogue_entry(builtin_catalogue(), QualityAttribute::observability);
    CHECK(g.artefacts == std::vector<ArtefactRef>{ArtefactRef::log_repository});
}

TEST_CASE("privacy entry targets workflow execution") {
    const GeneralScenario& g =
        catalogue_entry(builtin_catalogue(), QualityAttribute::privacy);
    CHECK(g.artefacts == std::vector<ArtefactRef>{ArtefactRef::workflow_execution});
}

TEST_CASE("instantiate carries templates and applies overrides") {
    const GeneralScenario& accuracy =
        catalogue_entry(builtin_catalogue(), QualityAttribute::accuracy);
    const ContextScenario s =
        instantiate(accuracy, "luna-1", {{"source", "Tax professional"}});
    CHECK(s.id == "luna-1");
    CHECK(s.quality == QualityAttribute::accuracy);
    CHECK(s.source == "Tax professional");
    CHECK(s.stimulus == accuracy.stimulus_template);
    CHECK(s.response == accuracy.response_template);
    CHECK(s.measures.empty());  // draft state
}

TEST_CASE("instantiate with no overrides mirrors the general scenario") {
    for (const GeneralScenario& g : builtin_catalogue()) {
        const ContextScenario s = instantiate(g, "x");
        CHECK(s.id == "x");
        CHECK(s.quality == g.quality);
        CHECK(s.source == g.source_template);
        CHECK(s.stimulus == g.stimulus_template);
        CHECK(s.environment == g.environment_template);
        CHECK(s.artefacts == g.artefacts);
        CHECK(s.response == g.response_template);
        CHECK(s.priority == Band::unset);
    }
}

TEST_CASE("instantiate rejects bad inputs, naming the offender") {
    const GeneralScenario& fairness =
        catalogue_entry(builtin_catalogue(), QualityAttribute::fairness);
    CHECK_THROWS_WITH_AS(instantiate(fairness, "f-1", {{"artefacts", "[bogus]"}}),
                         "unknown artefact \"bogus\"", std::invalid_argument);
    CHECK_THROWS_AS(instantiate(fairness, ""), std::invalid_argument);
    CHECK_THROWS_WITH_AS(instantiate(fairness, "f-1", {{"colour", "blue"}}),
                         "unknown override field \"colour\"", std::invalid_argument);
    CHECK_THROWS_AS(instantiate(fairness, "f-1", {{"seq", "zero"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(instantiate(fairness, "f-1", {{"priority", "urgent"}}),
                    std::invalid_argument);
}

TEST_CASE("instantiate is idempotent on overrides") {
    const GeneralScenario& g =
        catalogue_entry(builtin_catalogue(), QualityAttribute::efficiency);
    const std::vector<FieldOverride> overrides = {
        {"source", "ops"}, {"priority", "high"}, {"artefacts", "retriever, generator"},
        {"seq", "4"}};
    const ContextScenario a = instantiate(g, "e-1", overrides);
    const ContextScenario b = instantiate(g, "e-1", overrides);
    CHECK(a == b);
    CHECK(serialize_scenario(a) == serialize_scenario(b));
}

TEST_CASE("catalogue overrides replace by quality and keep the 11-entry shape") {
    GeneralScenario custom =
        catalogue_entry(builtin_catalogue(), QualityAttribute::safety);
    custom.response_template = "customised";
    const auto merged = apply_catalogue_overrides(builtin_catalogue(), {custom});
    CHECK(merged.size() == 11);
    CHECK(catalogue_entry(merged, QualityAttribute::safety).response_template ==
          "customised");
}

TEST_CASE("map_governance maps defaults and flags unmapped tags") {
    GovernanceTag g3;
    g3.id = "g3";
    g3.text = "Enable human control or intervention.";
    g3.default_qualities = {QualityAttribute::safety, QualityAttribute::contestability};
    const GovernanceMapping mapping = map_governance({g3});
    REQUIRE(mapping.entries.size() == 1);
    CHECK(mapping.entries[0].first == "g3");
    CHECK(mapping.entries[0].second ==
          std::vector<QualityAttribute>{QualityAttribute::safety,
                                        QualityAttribute::contestability});
    CHECK(mapping.unmapped.empty());
}

TEST_CASE("map_governance of an empty list is empty") {
    const GovernanceMapping mapping = map_governance({});
    CHECK(mapping.entries.empty());
    CHECK(mapping.unmapped.empty());
}

TEST_CASE("a tag with no defaults is present but flagged unmapped") {
    GovernanceTag tag;
    tag.id = "g9";
    tag.text = "Some obligation.";
    const GovernanceMapping mapping = map_governance({tag});
    REQUIRE(mapping.entries.size() == 1);
    CHECK(mapping.entries[0].second.empty());
    CHECK(mapping.unmapped == std::vector<std::string>{"g9"});
}

TEST_CASE("duplicate governance tag ids are rejected") {
    GovernanceTag a;
    a.id = "g1";
    GovernanceTag b;
    b.id = "g1";
    CHECK_THROWS_AS(map_governance({a, b}), std::invalid_argument);
}
