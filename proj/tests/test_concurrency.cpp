#include <doctest.h>

#include <thread>
#include <vector>

#include "arceval/catalogue.hpp"
#include "arceval/document.hpp"
#include "arceval/luna.hpp"
#include "arceval/measures.hpp"

using namespace arceval;

// The stated concurrency contracts: catalogue data and event windows are
// immutable and shareable; parser, serializer and evaluation are pure.

TEST_CASE("scenarios evaluate concurrently over a shared immutable window") {
    const TraceProfile& profile = luna_profile("luna-1");
    const auto records = generate_trace(profile, 21, 2000);
    const auto sorted = windows(records, WindowSpec::whole());

    ContextScenario scenario;
    scenario.id = "luna-1";
    scenario.quality = QualityAttribute::accuracy;
    scenario.source = "a";
    scenario.stimulus = "b";
    scenario.environment = "c";
    scenario.artefacts = {ArtefactRef::generator};
    scenario.response = "d";
    scenario.measures = {parse_measure("ratio(relevant_response) >= 0.95"),
                         parse_measure("ratio(correct_reference) >= 0.95")};

    const ScenarioVerdicts expected = evaluate_scenario(scenario, sorted.sorted);

    constexpr int n_threads = 8;
    std::vector<ScenarioVerdicts> results(n_threads);
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) {
        threads.emplace_back([&, i] {
            for (int round = 0; round < 50; ++round)
                results[i] = evaluate_scenario(scenario, sorted.sorted);
        });
    }
    for (std::thread& t : threads) t.join();

    for (const ScenarioVerdicts& r : results) {
        CHECK(r.outcome == expected.outcome);
        REQUIRE(r.verdicts.size() == expected.verdicts.size());
        for (std::size_t v = 0; v < r.verdicts.size(); ++v) {
            CHECK(r.verdicts[v].observed == expected.verdicts[v].observed);
            CHECK(r.verdicts[v].outcome == expected.verdicts[v].outcome);
        }
    }
}

TEST_CASE("parser and serializer run concurrently on distinct inputs") {
    // Each thread round-trips its own document; the catalogue is shared
    // read-only by the concurrent validate calls.
    constexpr int n_threads = 8;
    std::vector<std::string> failures(n_threads);
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) {
        threads.emplace_back([&, i] {
            const std::string text =
                "scenario \"s-" + std::to_string(i) + "\" {\n"
                "  quality: privacy\n"
                "  source: \"a\"\n  stimulus: \"b\"\n  environment: \"c\"\n"
                "  artefacts: [workflow-execution]\n  response: \"d\"\n"
                "  measures: [ratio(sensitive_filtered) >= 0.99]\n"
                "}\n";
            for (int round = 0; round < 100; ++round) {
                const ParseResult pr = parse_document(text);
                if (!pr.ok()) {
                    failures[i] = "parse failed";
                    return;
                }
                if (serialize(pr.document) != serialize(pr.document)) {
                    failures[i] = "serialize not pure";
                    return;
                }
                if (!validate(pr.document.scenarios[0], builtin_catalogue()).empty()) {
                    failures[i] = "unexpected findings";
                    return;
                }
            }
        });
    }
    for (std::thread& t : threads) t.join();
    for (const std::string& f : failures) CHECK(f.empty());
}
