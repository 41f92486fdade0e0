#include <doctest.h>

#include <sstream>

#include "arceval/telemetry.hpp"
#include "oracles.hpp"

using namespace arceval;

namespace {

SpanRecord record(std::int64_t ts, SpanKind kind = SpanKind::workflow,
                  std::string trace = "t") {
    SpanRecord r;
    r.ts = ts;
    r.span_kind = kind;
    r.trace_id = std::move(trace);
    return r;
}

}  // namespace

TEST_CASE("ingest accepts well-formed lines and rejects bad ones with reasons") {
    const std::string text =
        R"({"ts": 1, "span_kind": "workflow"})" "\n"
        R"({"ts": 2, "span_kind": "task", "latency_ms": 42.5})" "\n"
        R"({"ts": 3, "span_kind": "goal", "scenario_tags": ["s-1"]})" "\n"
        R"({"ts": 4, "span_kind": "task", "latency_ms": -1})" "\n";
    const IngestResult result = ingest_text(text);
    CHECK(result.accepted.size() == 3);
    REQUIRE(result.rejected.size() == 1);
    CHECK(result.rejected[0].line_no == 4);
    CHECK(result.rejected[0].reason == "latency_ms < 0");
}

TEST_CASE("ingest of empty input yields nothing") {
    const IngestResult result = ingest_text("");
    CHECK(result.accepted.empty());
    CHECK(result.rejected.empty());
}

TEST_CASE("ingest rejection reasons") {
    CHECK(ingest_text("{\"span_kind\": \"task\"}\n").rejected[0].reason == "missing ts");
    CHECK(ingest_text("{\"ts\": 1}\n").rejected[0].reason == "missing span_kind");
    CHECK(ingest_text("{\"ts\": 1, \"span_kind\": \"nope\"}\n").rejected[0].reason ==
          "unknown span_kind \"nope\"");
    CHECK(ingest_text("not json\n").rejected[0].reason == "invalid JSON");
    CHECK(ingest_text("{\"ts\": 1, \"span_kind\": \"task\", \"artefact\": \"x\"}\n")
              .rejected[0]
              .reason == "unknown artefact \"x\"");
}

TEST_CASE("unknown top-level fields are preserved in attrs") {
    const auto result =
        ingest_text(R"({"ts": 5, "span_kind": "fm", "model": "gpt-4o", "tokens": 17})" "\n");
    REQUIRE(result.accepted.size() == 1);
    const SpanRecord& r = result.accepted[0];
    CHECK(r.attrs.at("model") == "gpt-4o");
    CHECK(r.attrs.at("tokens") == "17");
}

TEST_CASE("telemetry round-trip: ingest(serialize(records)) == records") {
    std::vector<SpanRecord> records;
    SpanRecord a = record(10, SpanKind::reasoning, "trace-1");
    a.scenario_tags = {"s-1", "s-2"};
    a.artefact = ArtefactRef::retriever;
    a.latency_ms = 12.25;
    a.outcome_tags = {"relevant_response"};
    a.attrs = {{"k", "v"}, {"n", "2"}};
    records.push_back(a);
    records.push_back(record(11, SpanKind::contest_opened, "trace-2"));

    const IngestResult back = ingest_text(serialize_records(records));
    REQUIRE(back.rejected.empty());
    REQUIRE(back.accepted.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
        CHECK(back.accepted[i] == records[i]);
}

TEST_CASE("count windows: 10 events, size 5, stride 5 gives 2 disjoint windows") {
    std::vector<SpanRecord> records;
    for (int i = 0; i < 10; ++i) records.push_back(record(i));
    const auto wr = windows(records, WindowSpec::count(5, 5));
    REQUIRE(wr.windows.size() == 2);
    CHECK(wr.windows[0].records.size() == 5);
    CHECK(wr.windows[1].records.size() == 5);
    CHECK(wr.windows[0].records[0].ts == 0);
    CHECK(wr.windows[1].records[0].ts == 5);
}

TEST_CASE("duration windows: 60 s size, 30 s stride over 90 s gives 3 windows") {
    std::vector<SpanRecord> records;
    for (int i = 0; i < 90; ++i) records.push_back(record(i * 1000));
    const auto wr = windows(records, WindowSpec::duration(60, 30));
    REQUIRE(wr.windows.size() == 3);
    CHECK(wr.windows[0].records.size() == 60);   // [0, 60s)
    CHECK(wr.windows[1].records.size() == 60);   // [30s, 90s)
    CHECK(wr.windows[2].records.size() == 30);   // [60s, 120s)
}

TEST_CASE("a single event lands in exactly one window regardless of stride") {
    std::vector<SpanRecord> records{record(123)};
    CHECK(windows(records, WindowSpec::count(5, 2)).windows.size() == 1);
    CHECK(windows(records, WindowSpec::duration(60, 15)).windows.size() == 1);
}

TEST_CASE("sparse traces do not materialise empty gap windows") {
    // Two events ~12 days apart; the gap must not be enumerated.
    std::vector<SpanRecord> records{record(0), record(1'000'000'000)};

    const auto tumbling = windows(records, WindowSpec::duration(60, 60));
    REQUIRE(tumbling.windows.size() == 2);
    CHECK(tumbling.windows[0].records.size() == 1);
    CHECK(tumbling.windows[1].records.size() == 1);

    // With stride < size the late event lands in two overlapping windows.
    const auto sliding = windows(records, WindowSpec::duration(60, 30));
    REQUIRE(sliding.windows.size() == 3);
    for (const EventWindow& w : sliding.windows) {
        CHECK(w.records.size() == 1);
        // Windows stay on the stride grid anchored at the first record.
        CHECK((w.start_ts - sliding.windows[0].start_ts) % 30000 == 0);
    }
    CHECK(sliding.windows[1].start_ts <= 1'000'000'000);
    CHECK(sliding.windows[2].end_ts > 1'000'000'000);
}

TEST_CASE("invalid window specs are rejected") {
    std::vector<SpanRecord> records{record(1)};
    CHECK_THROWS_AS(windows(records, WindowSpec::count(5, 6)), std::invalid_argument);
    CHECK_THROWS_AS(windows(records, WindowSpec::count(-1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(windows(records, {WindowSpec::Mode::count, 5, 0}),
                    std::invalid_argument);
}

TEST_CASE("sorting is stable and every record is covered when stride <= size") {
    oracles::Rng rng(7);
    std::vector<SpanRecord> records;
    for (int i = 0; i < 200; ++i) {
        SpanRecord r = record(static_cast<std::int64_t>(rng.below(50)) * 1000);
        r.attrs["idx"] = std::to_string(i);
        records.push_back(r);
    }
    const auto wr = windows(records, WindowSpec::duration(10, 5));

    // Stability: equal timestamps keep input order in the sorted stream.
    for (std::size_t i = 1; i < wr.sorted.size(); ++i) {
        REQUIRE(wr.sorted[i - 1].ts <= wr.sorted[i].ts);
        if (wr.sorted[i - 1].ts == wr.sorted[i].ts)
            CHECK(std::stoi(wr.sorted[i - 1].attrs.at("idx")) <
                  std::stoi(wr.sorted[i].attrs.at("idx")));
    }

    // Coverage: the union of windows holds every record.
    std::size_t covered = 0;
    std::vector<bool> seen(wr.sorted.size(), false);
    for (const EventWindow& w : wr.windows) {
        if (w.records.empty()) continue;
        const auto offset = static_cast<std::size_t>(w.records.data() - wr.sorted.data());
        for (std::size_t i = 0; i < w.records.size(); ++i) {
            if (!seen[offset + i]) {
                seen[offset + i] = true;
                ++covered;
            }
        }
    }
    CHECK(covered == wr.sorted.size());
}

TEST_CASE("scenario scoping: explicit tags win, artefact is the fallback") {
    ScenarioScope scope{"s-1", {ArtefactRef::generator}};

    SpanRecord tagged = record(1);
    tagged.scenario_tags = {"s-1"};
    CHECK(in_scope(tagged, scope));

    SpanRecord other_tag = record(2);
    other_tag.scenario_tags = {"s-2"};
    other_tag.artefact = ArtefactRef::generator;  // tags win: still out of scope
    CHECK(!in_scope(other_tag, scope));

    SpanRecord by_artefact = record(3);
    by_artefact.artefact = ArtefactRef::generator;
    CHECK(in_scope(by_artefact, scope));

    SpanRecord unrelated = record(4);
    CHECK(!in_scope(unrelated, scope));
}
