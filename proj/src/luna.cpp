#include "arceval/luna.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "arceval/document.hpp"

namespace arceval {

namespace fs = std::filesystem;

// ── Deterministic RNG helpers ─────────────────────────────────────────────
//
// std::uniform_int_distribution is implementation-defined; bounded draws
// are done by rejection so traces are reproducible everywhere.

namespace {

struct TraceRng {
    std::mt19937_64 gen;

    explicit TraceRng(std::uint64_t seed) : gen(seed) {}

    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = gen();
        } while (v >= limit);
        return v % n;
    }

    // k distinct positions out of n, as a boolean mask.
    std::vector<bool> pick(std::size_t n, std::size_t k) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t i = n; i > 1; --i)
            std::swap(idx[i - 1], idx[below(i)]);
        std::vector<bool> mask(n, false);
        for (std::size_t i = 0; i < k && i < n; ++i) mask[idx[i]] = true;
        return mask;
    }
};

std::size_t target_count(double rate, std::size_t n) {
    return static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));
}

SpanRecord base_record(const TraceProfile& profile, std::int64_t ts,
                       const std::string& trace_id, SpanKind kind) {
    SpanRecord r;
    r.ts = ts;
    r.trace_id = trace_id;
    r.span_kind = kind;
    if (!profile.scenario_id.empty()) r.scenario_tags.push_back(profile.scenario_id);
    r.artefact = profile.artefact;
    return r;
}

}  // namespace

std::vector<SpanRecord> generate_trace(const TraceProfile& profile, std::uint64_t seed,
                                       std::size_t n) {
    if (n == 0) throw std::invalid_argument("event count must be >= 1");
    auto check_rate = [](double rate) {
        if (rate < 0.0 || rate > 1.0)
            throw std::invalid_argument("rate must lie in [0,1]");
    };
    check_rate(profile.rate);
    for (const TagRate& tr : profile.tag_rates) check_rate(tr.rate);

    TraceRng rng(seed);
    std::vector<SpanRecord> records;

    switch (profile.shape) {
        case TraceProfile::Shape::tagged: {
            std::vector<std::vector<bool>> masks;
            for (const TagRate& tr : profile.tag_rates)
                masks.push_back(rng.pick(n, target_count(tr.rate, n)));
            for (std::size_t i = 0; i < n; ++i) {
                SpanRecord r = base_record(profile, profile.start_ts +
                                                        static_cast<std::int64_t>(i) *
                                                            profile.spacing_ms,
                                           profile.name + "-t" + std::to_string(i),
                                           profile.span_kind);
                for (std::size_t t = 0; t < profile.tag_rates.size(); ++t)
                    if (masks[t][i]) r.outcome_tags.push_back(profile.tag_rates[t].tag);
                records.push_back(std::move(r));
            }
            break;
        }

        case TraceProfile::Shape::latency: {
            const std::size_t k = target_count(profile.rate, n);
            const std::vector<bool> passing = rng.pick(n, k);
            bool boundary_placed = false;
            for (std::size_t i = 0; i < n; ++i) {
                SpanRecord r = base_record(profile, profile.start_ts +
                                                        static_cast<std::int64_t>(i) *
                                                            profile.spacing_ms,
                                           profile.name + "-t" + std::to_string(i),
                                           profile.span_kind);
                if (passing[i]) {
                    // The first passing event pins the realised maximum.
                    if (!boundary_placed) {
                        r.latency_ms = profile.pass_latency_ms;
                        boundary_placed = true;
                    } else {
                        const auto limit =
                            static_cast<std::uint64_t>(profile.pass_latency_ms);
                        r.latency_ms =
                            limit <= 1 ? profile.pass_latency_ms
                                       : static_cast<double>(1 + rng.below(limit));
                    }
                } else {
                    r.latency_ms = profile.fail_latency_ms;
                }
                records.push_back(std::move(r));
            }
            break;
        }

        case TraceProfile::Shape::completeness: {
            const std::size_t k = target_count(profile.rate, n);
            const std::vector<bool> complete = rng.pick(n, k);
            if (profile.required_kinds.empty())
                throw std::invalid_argument("completeness profile needs required kinds");
            std::int64_t ts = profile.start_ts;
            for (std::size_t i = 0; i < n; ++i) {
                const std::string trace_id = profile.name + "-t" + std::to_string(i);
                const std::size_t dropped =
                    complete[i] ? profile.required_kinds.size()
                                : static_cast<std::size_t>(
                                      rng.below(profile.required_kinds.size()));
                for (std::size_t s = 0; s < profile.required_kinds.size(); ++s) {
                    if (!complete[i] && s == dropped) continue;
                    records.push_back(base_record(profile, ts + static_cast<std::int64_t>(s),
                                                  trace_id, profile.required_kinds[s]));
                }
                ts += profile.spacing_ms;
            }
            break;
        }

        case TraceProfile::Shape::resolve: {
            const std::size_t k = target_count(profile.rate, n);
            const std::vector<bool> in_time = rng.pick(n, k);
            const std::int64_t late =
                profile.late_ms > 0 ? profile.late_ms
                                    : profile.within_ms + profile.within_ms / 2;
            bool boundary_placed = false;
            for (std::size_t i = 0; i < n; ++i) {
                const std::string trace_id = profile.name + "-t" + std::to_string(i);
                const std::int64_t open_ts =
                    profile.start_ts + static_cast<std::int64_t>(i) * profile.spacing_ms;
                std::int64_t gap;
                if (in_time[i]) {
                    if (!boundary_placed) {
                        gap = profile.within_ms;  // pins the realised worst case
                        boundary_placed = true;
                    } else {
                        gap = 1 + static_cast<std::int64_t>(
                                      rng.below(static_cast<std::uint64_t>(
                                          std::max<std::int64_t>(profile.within_ms, 1))));
                    }
                } else {
                    gap = late;
                }
                records.push_back(base_record(profile, open_ts, trace_id,
                                              profile.open_kind));
                records.push_back(base_record(profile, open_ts + gap, trace_id,
                                              profile.close_kind));
            }
            std::stable_sort(records.begin(), records.end(),
                             [](const SpanRecord& a, const SpanRecord& b) {
                                 return a.ts < b.ts;
                             });
            break;
        }
    }
    return records;
}

std::string generate_trace_text(const TraceProfile& profile, std::uint64_t seed,
                                std::size_t n) {
    return serialize_records(generate_trace(profile, seed, n));
}

// ── Luna profiles ─────────────────────────────────────────────────────────

namespace {

std::vector<TraceProfile> build_profiles() {
    std::vector<TraceProfile> out;

    TraceProfile p1;
    p1.name = "luna-1-accuracy";
    p1.scenario_id = "luna-1";
    p1.shape = TraceProfile::Shape::tagged;
    p1.span_kind = SpanKind::workflow;
    p1.artefact = ArtefactRef::generator;
    p1.tag_rates = {{"relevant_response", 0.95}, {"correct_reference", 0.95}};
    out.push_back(p1);

    TraceProfile p2;
    p2.name = "luna-2-adaptability";
    p2.scenario_id = "luna-2";
    p2.shape = TraceProfile::Shape::tagged;
    p2.span_kind = SpanKind::feedback;
    p2.artefact = ArtefactRef::agent_memory;
    p2.tag_rates = {{"correct_update", 0.99}};
    out.push_back(p2);

    TraceProfile p3;
    p3.name = "luna-3-efficiency";
    p3.scenario_id = "luna-3";
    p3.shape = TraceProfile::Shape::latency;
    p3.span_kind = SpanKind::workflow;
    p3.artefact = ArtefactRef::generator;
    p3.rate = 1.0;
    p3.pass_latency_ms = 999;
    p3.fail_latency_ms = 1000;
    out.push_back(p3);

    TraceProfile p4;
    p4.name = "luna-4-transparency";
    p4.scenario_id = "luna-4";
    p4.shape = TraceProfile::Shape::tagged;
    p4.span_kind = SpanKind::workflow;
    p4.artefact = ArtefactRef::generator;
    p4.tag_rates = {{"correct_reference", 0.95}};
    out.push_back(p4);

    TraceProfile p5;
    p5.name = "luna-5-observability";
    p5.scenario_id = "luna-5";
    p5.shape = TraceProfile::Shape::completeness;
    p5.artefact = ArtefactRef::log_repository;
    p5.rate = 1.0;
    p5.required_kinds = {SpanKind::goal, SpanKind::workflow, SpanKind::feedback};
    out.push_back(p5);

    TraceProfile p6;
    p6.name = "luna-6-contestability";
    p6.scenario_id = "luna-6";
    p6.shape = TraceProfile::Shape::resolve;
    p6.artefact = ArtefactRef::agent_memory;
    p6.rate = 1.0;
    p6.within_ms = 48LL * 3600 * 1000;
    p6.spacing_ms = 60LL * 60 * 1000;
    out.push_back(p6);

    TraceProfile p7;
    p7.name = "luna-7-privacy";
    p7.scenario_id = "luna-7";
    p7.shape = TraceProfile::Shape::tagged;
    p7.span_kind = SpanKind::guardrail;
    p7.artefact = ArtefactRef::prompt_optimiser;
    p7.tag_rates = {{"sensitive_filtered", 0.99}};
    out.push_back(p7);

    return out;
}

}  // namespace

const std::vector<TraceProfile>& luna_profiles() {
    static const std::vector<TraceProfile> profiles = build_profiles();
    return profiles;
}

const TraceProfile& luna_profile(const std::string& scenario_id) {
    for (const TraceProfile& p : luna_profiles()) {
        if (p.scenario_id == scenario_id) return p;
    }
    throw std::invalid_argument("no luna profile for scenario \"" + scenario_id + "\"");
}

// ── Ledger data ───────────────────────────────────────────────────────────

AnalysisLedger luna_analysis_ledger() {
    AnalysisLedger ledger;
    ledger.risks.push_back(
        {"gap-luna-2",
         "No architecture approach supports adaptability; user feedback is not "
         "incorporated into future recommendations.",
         {"luna-2"},
         {},
         RiskStatus::open});
    ledger.risks.push_back(
        {"gap-luna-3",
         "No architecture approach supports efficiency; previously answered "
         "queries are fully recomputed.",
         {"luna-3"},
         {},
         RiskStatus::open});
    ledger.risks.push_back(
        {"gap-luna-5",
         "The architecture provides no observability support; queries, responses "
         "and feedback are not systematically logged.",
         {"luna-5"},
         {},
         RiskStatus::open});
    ledger.tradeoffs.push_back(
        {"crawl-freshness",
         "Weekly private-ruling crawls trade recommendation freshness against "
         "crawling cost.",
         {QualityAttribute::accuracy, QualityAttribute::efficiency},
         "weekly-crawling"});
    ledger.tradeoffs.push_back(
        {"vectordb-vs-kg",
         "A vector database is cheaper to maintain than a knowledge graph but "
         "captures fewer entity relationships.",
         {QualityAttribute::accuracy, QualityAttribute::efficiency},
         "vector-db-storage"});
    return ledger;
}

AnalysisLedger luna_improvement_ledger() {
    AnalysisLedger ledger;
    ledger.tradeoffs.push_back(
        {"rerank-latency",
         "LLM-based reranking improves retrieval relevance at the cost of added "
         "latency and token spend.",
         {QualityAttribute::accuracy, QualityAttribute::efficiency},
         "reranking"});
    ledger.sensitivities.push_back(
        {"chunking-granularity",
         "Embedding whole ruling pages dilutes retrieval relevance; per-question "
         "chunks shift accuracy sharply.",
         "semantic-chunking", QualityAttribute::accuracy});
    ledger.sensitivities.push_back(
        {"guardrail-scope",
         "Widening desensitisation from prompts to all component boundaries "
         "determines how much sensitive data can leak.",
         "cross-component-guardrails", QualityAttribute::privacy});
    ledger.recommendations.push_back(
        {"rec-memory",
         "Add an agent memory component storing user feedback, user profiles and "
         "contest resolution tracking.",
         {"gap-luna-2"},
         "luna-post"});
    ledger.recommendations.push_back(
        {"rec-memory-first",
         "Check agent memory for previously answered queries before engaging "
         "retrieval and generation.",
         {"gap-luna-3"},
         "luna-post"});
    ledger.recommendations.push_back(
        {"rec-agentops",
         "Introduce a cross-cutting AgentOps layer logging all queries, responses, "
         "feedback and component inputs and outputs.",
         {"gap-luna-5"},
         "luna-post"});
    ledger.recommendations.push_back(
        {"rec-guardrails",
         "Apply desensitisation guardrails across all components rather than only "
         "the user prompt.",
         {"gap-luna-7"},
         "luna-post"});
    ledger.recommendations.push_back(
        {"rec-reranker",
         "Add an LLM-based reranker and per-question chunking to sharpen retrieval "
         "relevance.",
         {},
         "luna-post"});
    return ledger;
}

// ── Workspace rebuild ─────────────────────────────────────────────────────

namespace {

Document parse_fixture(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open fixture " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    ParseResult pr = parse_document(os.str(), path.string());
    if (!pr.ok())
        throw std::runtime_error("fixture parse error: " + pr.errors.front().to_string());
    return std::move(pr.document);
}

}  // namespace

Workspace build_luna_workspace(const std::string& fixture_dir) {
    const fs::path root(fixture_dir);
    const Document scenarios = parse_fixture(root / "scenarios.aas");
    const Document governance = parse_fixture(root / "governance.aas");
    const Document architectures = parse_fixture(root / "architectures.aas");
    const Document priorities = parse_fixture(root / "priorities.aas");

    Workspace ws;
    ws.name = "luna";

    AdvancePayload goals;
    goals.goals.push_back(
        {"tax-recommendations",
         "Provide professional and accurate tax recommendations with clear "
         "references to the Australian Taxation Office legal database for tax "
         "professionals.",
         true});
    ws = advance(std::move(ws), ProcessStep::understand_goals, goals);

    AdvancePayload gov;
    gov.governance = governance.governance;
    ws = advance(std::move(ws), ProcessStep::review_governance, gov);

    AdvancePayload reqs;
    reqs.requirements = {
        {QualityAttribute::accuracy,
         "Provide correct and precise tax recommendations aligned with the latest "
         "ATO legal database content.",
         {"g2"},
         false},
        {QualityAttribute::adaptability,
         "Incorporate user feedback into the agent memory to improve future "
         "recommendation generation.",
         {},
         false},
        {QualityAttribute::efficiency,
         "Quickly deliver tax recommendations for queries similar to previously "
         "answered ones.",
         {},
         false},
        {QualityAttribute::transparency,
         "Provide clear practical explanations for each recommendation, citing "
         "legal references and the FM version used.",
         {"g4", "g6"},
         false},
        {QualityAttribute::observability,
         "Track historical queries, monitor user feedback, and alert on copilot "
         "health, performance or user complaints.",
         {"g2", "g7"},
         false},
        {QualityAttribute::contestability,
         "Allow users to challenge the copilot's recommendations and submit "
         "feedback for review.",
         {"g3", "g5"},
         false},
        {QualityAttribute::privacy,
         "Desensitise all input and output data to protect personally identifiable "
         "information and sensitive company data.",
         {"g1"},
         true},
    };
    ws = advance(std::move(ws), ProcessStep::identify_requirements, reqs);

    AdvancePayload arch;
    arch.architectures = architectures.architectures;
    arch.current_architecture = "luna-pre";
    ws = advance(std::move(ws), ProcessStep::review_architecture, arch);

    AdvancePayload scen;
    scen.scenarios = scenarios.scenarios;
    ws = advance(std::move(ws), ProcessStep::define_scenarios, scen);

    AdvancePayload prio;
    prio.priority_inputs = priorities.priorities;
    prio.priorities = apply_band_overrides(
        prioritise(priorities.priorities, ws.weights), scenarios.scenarios);
    ws = advance(std::move(ws), ProcessStep::prioritise_scenarios, prio);

    AdvancePayload analyse;
    analyse.ledger = luna_analysis_ledger();
    ws = advance(std::move(ws), ProcessStep::analyse_architecture, analyse);
    const auto pre_coverage = gap_analysis(ws.scenarios, *ws.current());
    record_gap_risks(ws.analysis, pre_coverage, ws.scenarios, ws.priorities);

    AdvancePayload improve;
    improve.current_architecture = "luna-post";
    improve.ledger = luna_improvement_ledger();
    ws = advance(std::move(ws), ProcessStep::improve_architecture, improve);
    update_mitigations(ws.analysis, ws.scenarios, ws.architectures);

    return ws;
}

}  // namespace arceval
