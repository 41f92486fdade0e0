#include <doctest.h>

#include "arceval/document.hpp"
#include "doc_gen.hpp"

using namespace arceval;

namespace {

const char* minimal_scenario =
    "scenario \"s-1\" {\n"
    "  quality: accuracy\n"
    "  source: \"a user\"\n"
    "  stimulus: \"a request\"\n"
    "  environment: \"normal\"\n"
    "  artefacts: [agent]\n"
    "  response: \"done\"\n"
    "}\n";

}  // namespace

TEST_CASE("minimal scenario block parses with priority unset") {
    const ParseResult result = parse_document(minimal_scenario);
    REQUIRE(result.ok());
    REQUIRE(result.document.scenarios.size() == 1);
    const ContextScenario& s = result.document.scenarios[0];
    CHECK(s.id == "s-1");
    CHECK(s.quality == QualityAttribute::accuracy);
    CHECK(s.priority == Band::unset);
    CHECK(!s.seq.has_value());
    CHECK(s.measures.empty());
    CHECK(s.span.line == 1);
}

TEST_CASE("the Luna privacy scenario parses with its measure") {
    const char* text =
        "scenario \"luna-7\" {\n"
        "  seq: 7\n"
        "  quality: privacy\n"
        "  priority: high\n"
        "  source: \"Tax professional submitting sensitive data\"\n"
        "  stimulus: \"Personal data submitted for tax calculation\"\n"
        "  environment: \"Sensitive data must be protected\"\n"
        "  artefacts: [prompt-optimiser, generator]\n"
        "  response: \"All sensitive data is desensitised\"\n"
        "  measures: [ratio(sensitive_filtered) >= 0.99]\n"
        "}\n";
    const ParseResult result = parse_document(text);
    REQUIRE(result.ok());
    const ContextScenario& s = result.document.scenarios[0];
    CHECK(s.quality == QualityAttribute::privacy);
    CHECK(s.seq == 7);
    CHECK(s.priority == Band::high);
    REQUIRE(s.measures.size() == 1);
    CHECK(s.measures[0].metric == MetricId::ratio);
    CHECK(s.measures[0].tag == "sensitive_filtered");
    CHECK(s.measures[0].threshold.value == 0.99);
}

TEST_CASE("missing required field is reported with the block's span") {
    std::string text = minimal_scenario;
    const auto pos = text.find("  stimulus");
    text.erase(pos, text.find('\n', pos) - pos + 1);
    const ParseResult result = parse_document(text);
    REQUIRE(result.errors.size() == 1);
    CHECK(result.errors[0].message == "missing field stimulus");
    CHECK(result.errors[0].span.line == 1);
    CHECK(result.document.scenarios.empty());
}

TEST_CASE("parse errors name the offending vocabulary token") {
    std::string text = minimal_scenario;
    const auto pos = text.find("[agent]");
    text.replace(pos, 7, "[bogus]");
    const ParseResult result = parse_document(text);
    REQUIRE(!result.ok());
    CHECK(result.errors[0].message.find("bogus") != std::string::npos);
}

TEST_CASE("unknown block kinds and duplicate ids are errors") {
    const std::string doubled = std::string(minimal_scenario) + "\n" + minimal_scenario;
    const ParseResult dup = parse_document(doubled);
    REQUIRE(!dup.ok());
    CHECK(dup.errors[0].message == "duplicate scenario id \"s-1\"");
    CHECK(dup.document.scenarios.size() == 1);

    const ParseResult unknown = parse_document("widget \"w\" {\n}\n");
    REQUIRE(!unknown.ok());
    CHECK(unknown.errors[0].message == "unknown block kind \"widget\"");
}

TEST_CASE("malformed measure errors preserve the measure's span") {
    const char* text =
        "scenario \"s-1\" {\n"
        "  quality: accuracy\n"
        "  source: \"a\"\n"
        "  stimulus: \"b\"\n"
        "  environment: \"c\"\n"
        "  artefacts: [agent]\n"
        "  response: \"d\"\n"
        "  measures: [ratio(x) >= 1.5]\n"
        "}\n";
    const ParseResult result = parse_document(text);
    REQUIRE(!result.ok());
    CHECK(result.errors[0].message.find("malformed measure") != std::string::npos);
    CHECK(result.errors[0].span.line == 8);
    CHECK(result.errors[0].span.column > 14);
}

TEST_CASE("architecture blocks parse components, approaches and supports") {
    const char* text =
        "architecture \"m\" {\n"
        "  version: \"v1\"\n"
        "  component: [gen, generator, \"the generator\"]\n"
        "  component: [mem, agent-memory, \"the memory\"]\n"
        "  approach: [caching, tactic, [mem, gen], [efficiency, \"s-9\"], partial]\n"
        "}\n";
    const ParseResult result = parse_document(text);
    REQUIRE(result.ok());
    const ArchitectureModel& m = result.document.architectures[0];
    CHECK(m.version_label == "v1");
    REQUIRE(m.components.size() == 2);
    REQUIRE(m.approaches.size() == 1);
    const ArchApproach& a = m.approaches[0];
    CHECK(a.kind == ApproachKind::tactic);
    CHECK(a.coverage == ApproachCoverage::partial);
    REQUIRE(a.supports.size() == 2);
    CHECK(a.supports[0].is_quality());
    CHECK(a.supports[0].quality() == QualityAttribute::efficiency);
    CHECK(!a.supports[1].is_quality());
    CHECK(a.supports[1].scenario_id() == "s-9");
}

TEST_CASE("approaches referencing unknown components are rejected") {
    const char* text =
        "architecture \"m\" {\n"
        "  version: \"v1\"\n"
        "  component: [gen, generator, \"g\"]\n"
        "  approach: [x, tactic, [ghost], [efficiency], full]\n"
        "}\n";
    const ParseResult result = parse_document(text);
    REQUIRE(!result.ok());
    CHECK(result.errors[0].message.find("ghost") != std::string::npos);
}

TEST_CASE("governance and priorities blocks parse") {
    const char* text =
        "governance \"std\" {\n"
        "  tag: [g3, \"Enable human control or intervention.\", [safety, contestability]]\n"
        "}\n"
        "\n"
        "priorities \"PM\" {\n"
        "  rate: [s-1, 5, 4, 3]\n"
        "}\n";
    const ParseResult result = parse_document(text);
    REQUIRE(result.ok());
    REQUIRE(result.document.governance.size() == 1);
    CHECK(result.document.governance[0].tags[0].default_qualities.size() == 2);
    REQUIRE(result.document.priorities.size() == 1);
    const PriorityInput& in = result.document.priorities[0];
    CHECK(in.stakeholder == "PM");
    CHECK(in.impact == 5);
    CHECK(in.risk == 4);
    CHECK(in.relevance == 3);
}

TEST_CASE("priority scores outside 1-5 are rejected") {
    const ParseResult result =
        parse_document("priorities \"PM\" {\n  rate: [s-1, 6, 4, 3]\n}\n");
    REQUIRE(!result.ok());
    CHECK(result.errors[0].message.find("1-5") != std::string::npos);
}

TEST_CASE("general blocks override catalogue entries by quality name") {
    const char* text =
        "general \"safety\" {\n"
        "  source: \"s\"\n"
        "  stimulus: \"st\"\n"
        "  environment: \"e\"\n"
        "  artefacts: [guardrails]\n"
        "  response: \"r\"\n"
        "  measure: \"threat detection rate\"\n"
        "  metrics: [ratio]\n"
        "}\n";
    const ParseResult result = parse_document(text);
    REQUIRE(result.ok());
    const GeneralScenario& g = result.document.generals[0];
    CHECK(g.quality == QualityAttribute::safety);
    CHECK(g.measure_templates == std::vector<std::string>{"threat detection rate"});
    CHECK(g.suggested_metrics == std::vector<MetricId>{MetricId::ratio});

    const ParseResult bad = parse_document("general \"speed\" {\n}\n");
    CHECK(!bad.ok());
}

TEST_CASE("trailing commas are rejected") {
    std::string text = minimal_scenario;
    const auto pos = text.find("[agent]");
    text.replace(pos, 7, "[agent,]");
    const ParseResult result = parse_document(text);
    REQUIRE(!result.ok());
    CHECK(result.errors[0].message == "trailing comma in list");
}

TEST_CASE("a scenario id that collides with a quality name round-trips quoted") {
    const char* text =
        "architecture \"m\" {\n"
        "  version: \"v\"\n"
        "  component: [gen, generator, \"g\"]\n"
        "  approach: [x, tactic, [gen], [accuracy, \"accuracy\"], full]\n"
        "}\n";
    const ParseResult first = parse_document(text);
    REQUIRE(first.ok());
    const ArchApproach& a = first.document.architectures[0].approaches[0];
    REQUIRE(a.supports.size() == 2);
    CHECK(a.supports[0].is_quality());
    CHECK(!a.supports[1].is_quality());
    CHECK(a.supports[1].scenario_id() == "accuracy");

    const std::string canonical = serialize(first.document);
    const ParseResult second = parse_document(canonical);
    REQUIRE(second.ok());
    CHECK(second.document == first.document);
}

TEST_CASE("comments, blank lines and wrapped lists are tolerated") {
    const char* text =
        "# a document\n"
        "\n"
        "scenario \"s-1\" {  # inline comment\n"
        "  quality: accuracy\n"
        "  source: \"a\"   # trailing\n"
        "  stimulus: \"b\"\n"
        "  environment: \"c\"\n"
        "  artefacts: [agent,\n"
        "              retriever]\n"
        "  response: \"d\"\n"
        "}\n";
    const ParseResult result = parse_document(text);
    REQUIRE(result.ok());
    CHECK(result.document.scenarios[0].artefacts.size() == 2);
}

TEST_CASE("string escapes cover quote, backslash and newline") {
    const std::string raw = "line1\nline2 with \"quotes\" and \\slash";
    const std::string text = "scenario \"s-1\" {\n"
                             "  quality: accuracy\n"
                             "  source: " + quote_string(raw) + "\n"
                             "  stimulus: \"b\"\n"
                             "  environment: \"c\"\n"
                             "  artefacts: [agent]\n"
                             "  response: \"d\"\n"
                             "}\n";
    const ParseResult result = parse_document(text);
    REQUIRE(result.ok());
    CHECK(result.document.scenarios[0].source == raw);

    const ParseResult bad = parse_document("scenario \"s\\q\" {\n}\n");
    REQUIRE(!bad.ok());
    CHECK(bad.errors[0].message == "invalid escape \\q");
}

TEST_CASE("error spans stay within the input's bounds") {
    const char* broken =
        "scenario \"s-1\" {\n"
        "  quality: accuracy\n"
        "  source: \"unterminated\n"
        "}\n";
    const ParseResult result = parse_document(broken);
    REQUIRE(!result.ok());
    for (const ParseError& e : result.errors) {
        CHECK(e.span.line >= 1);
        CHECK(e.span.line <= 4);
        CHECK(e.span.column >= 1);
    }
}

TEST_CASE("numeric literals beyond double range are clean errors") {
    const std::string huge(400, '9');
    const ParseResult result = parse_document(
        "scenario \"s\" {\n  seq: " + huge + "\n  quality: accuracy\n"
        "  source: \"a\"\n  stimulus: \"b\"\n  environment: \"c\"\n"
        "  artefacts: [agent]\n  response: \"d\"\n}\n");
    REQUIRE(!result.ok());
    CHECK(result.errors[0].message == "number out of range");
}

TEST_CASE("fuzz: arbitrary input never crashes and spans stay in bounds") {
    oracles::Rng rng(191);
    for (int trial = 0; trial < 300; ++trial) {
        std::string text;
        if (trial % 3 == 0) {
            // Pure garbage bytes (printable-biased).
            const std::size_t len = rng.below(400);
            for (std::size_t i = 0; i < len; ++i)
                text += static_cast<char>(rng.below(127) + 1);
        } else if (trial % 3 == 1) {
            // A valid document truncated at a random point.
            text = doc_gen::random_document(rng);
            text.resize(rng.below(text.size() + 1));
        } else {
            // A valid document with random single-byte corruption.
            text = doc_gen::random_document(rng);
            for (int hits = 0; hits < 5 && !text.empty(); ++hits)
                text[rng.below(text.size())] = static_cast<char>(rng.below(127) + 1);
        }
        const ParseResult result = parse_document(text);
        std::size_t lines = 1;
        for (char ch : text)
            if (ch == '\n') ++lines;
        for (const ParseError& e : result.errors) {
            CHECK(e.span.line >= 1);
            CHECK(e.span.line <= lines + 1);
            CHECK(e.span.column >= 1);
        }
    }
}

TEST_CASE("round-trip: parse(serialize(parse(d))) == parse(d) on random documents") {
    oracles::Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const std::string text = doc_gen::random_document(rng);
        CAPTURE(text);
        const ParseResult first = parse_document(text);
        const std::string first_err =
            first.errors.empty() ? "" : first.errors[0].to_string();
        REQUIRE_MESSAGE(first.ok(), first_err);
        const std::string canonical = serialize(first.document);
        const ParseResult second = parse_document(canonical);
        const std::string second_err =
            second.errors.empty() ? "" : second.errors[0].to_string() + "\n" + canonical;
        REQUIRE_MESSAGE(second.ok(), second_err);
        CHECK(second.document == first.document);
        // Canonical form is a fixed point of serialize.
        CHECK(serialize(second.document) == canonical);
    }
}

TEST_CASE("field-order permutations serialize to byte-identical text") {
    const char* permuted =
        "scenario \"s-1\" {\n"
        "  response: \"done\"\n"
        "  artefacts: [agent]\n"
        "  environment: \"normal\"\n"
        "  quality: accuracy\n"
        "  stimulus: \"a request\"\n"
        "  source: \"a user\"\n"
        "}\n";
    const ParseResult a = parse_document(minimal_scenario);
    const ParseResult b = parse_document(permuted);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(serialize(a.document) == serialize(b.document));
}

TEST_CASE("validate: human-judged measures warn, clean scenarios do not") {
    ParseResult luna4 = parse_document(
        "scenario \"luna-4\" {\n"
        "  quality: transparency\n"
        "  source: \"Tax professional\"\n"
        "  stimulus: \"Requests an explanation\"\n"
        "  environment: \"Preparing reports\"\n"
        "  artefacts: [agent]\n"
        "  response: \"Reasoning, sources and FM version\"\n"
        "  measures: [ratio(correct_reference) >= 0.95]\n"
        "  external: [[\"users-understand-explanation\", pass, \"95% of users understand\"]]\n"
        "}\n");
    REQUIRE(luna4.ok());
    const auto findings = validate(luna4.document.scenarios[0], builtin_catalogue());
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].level == FindingLevel::warning);
    CHECK(findings[0].message.find("human-judged") != std::string::npos);
}

TEST_CASE("validate: fully machine-measurable scenario has no findings") {
    ParseResult doc = parse_document(
        "scenario \"s\" {\n"
        "  quality: privacy\n"
        "  source: \"a\"\n"
        "  stimulus: \"b\"\n"
        "  environment: \"c\"\n"
        "  artefacts: [workflow-execution]\n"
        "  response: \"d\"\n"
        "  measures: [ratio(sensitive_filtered) >= 0.99]\n"
        "}\n");
    REQUIRE(doc.ok());
    CHECK(validate(doc.document.scenarios[0], builtin_catalogue()).empty());
}

TEST_CASE("validate: a measure-free scenario yields exactly one warning") {
    ParseResult doc = parse_document(
        "scenario \"s\" {\n"
        "  quality: privacy\n"
        "  source: \"a\"\n"
        "  stimulus: \"b\"\n"
        "  environment: \"c\"\n"
        "  artefacts: [workflow-execution]\n"
        "  response: \"d\"\n"
        "}\n");
    REQUIRE(doc.ok());
    const auto findings = validate(doc.document.scenarios[0], builtin_catalogue());
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].level == FindingLevel::warning);
}

TEST_CASE("validate: artefacts outside the general scenario are informational") {
    ParseResult doc = parse_document(
        "scenario \"s\" {\n"
        "  quality: privacy\n"
        "  source: \"a\"\n"
        "  stimulus: \"b\"\n"
        "  environment: \"c\"\n"
        "  artefacts: [prompt-optimiser, generator]\n"
        "  response: \"d\"\n"
        "  measures: [ratio(sensitive_filtered) >= 0.99]\n"
        "}\n");
    REQUIRE(doc.ok());
    const auto findings = validate(doc.document.scenarios[0], builtin_catalogue());
    CHECK(findings.size() == 2);
    for (const Finding& f : findings) CHECK(f.level == FindingLevel::info);
}
