#include "arceval/catalogue.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

namespace arceval {

bool operator==(const GeneralScenario& a, const GeneralScenario& b) {
    return a.quality == b.quality && a.source_template == b.source_template &&
           a.stimulus_template == b.stimulus_template &&
           a.environment_template == b.environment_template &&
           a.artefacts == b.artefacts && a.response_template == b.response_template &&
           a.measure_templates == b.measure_templates &&
           a.suggested_metrics == b.suggested_metrics;
}

bool operator==(const GovernanceTag& a, const GovernanceTag& b) {
    return a.id == b.id && a.text == b.text &&
           a.default_qualities == b.default_qualities;
}

// ── Built-in catalogue ────────────────────────────────────────────────────

namespace {

GeneralScenario make(QualityAttribute q, std::string source, std::string stimulus,
                     std::string environment, std::vector<ArtefactRef> artefacts,
                     std::string response, std::vector<std::string> measures,
                     std::vector<MetricId> metrics) {
    GeneralScenario g;
    g.quality = q;
    g.source_template = std::move(source);
    g.stimulus_template = std::move(stimulus);
    g.environment_template = std::move(environment);
    g.artefacts = std::move(artefacts);
    g.response_template = std::move(response);
    g.measure_templates = std::move(measures);
    g.suggested_metrics = std::move(metrics);
    return g;
}

std::vector<GeneralScenario> build_catalogue() {
    std::vector<GeneralScenario> c;

    c.push_back(make(
        QualityAttribute::accuracy,
        "A user relying on the agent to achieve goals, or context engine "
        "proactively suggesting goals to the user.",
        "A goal achieving request initiated by the user or proactively "
        "suggested by the agent's context engine.",
        "The agent operates in normal conditions.",
        {ArtefactRef::agent},
        "The agent accurately accomplishes the goal through optimised prompts, "
        "reasoning and planning, past agent memory, existing workflows, "
        "knowledge bases, external tools, and other agents as needed.",
        {"The accuracy of the final result in relation to the user expectation."},
        {MetricId::ratio}));

    c.push_back(make(
        QualityAttribute::adaptability,
        "A user who provides feedback on the agent's outputs (either final or "
        "intermediate ones), or an automated runtime evaluator that "
        "continuously monitors and evaluates these outputs.",
        "The agent receives feedback from the user, or it gets evaluation "
        "results from the runtime evaluator.",
        "A dynamic environment where the agent continuously collects and "
        "processes user feedback and runtime evaluation results.",
        {ArtefactRef::agent_memory, ArtefactRef::reasoning_planning},
        "The agent updates its memory to incorporate the feedback or "
        "evaluation insights. The updated memory can adapt the agent's future "
        "prompts, reasoning and planning, and workflow execution.",
        {"Rate of successful adaptations.", "Time to adapt."},
        {MetricId::ratio, MetricId::latency_pct}));

    c.push_back(make(
        QualityAttribute::efficiency,
        "A user or the agent itself triggering the need for a quick response "
        "based on previous interactions or learned experiences stored in the "
        "agent memory.",
        "A request where the agent can utilise relevant memory from past "
        "interactions or task executions to quickly generate a response, "
        "minimising the need for redundant processing or reasoning.",
        "An environment where responsiveness is important.",
        {ArtefactRef::agent_memory, ArtefactRef::retriever, ArtefactRef::generator},
        "The agent quickly generates a response by using relevant agent "
        "memory, such as previous results, existing workflows, or past "
        "experience.",
        {"The response time.", "The cost."},
        {MetricId::latency_pct, MetricId::max_latency}));

    c.push_back(make(
        QualityAttribute::privacy,
        "A user, FM, knowledge base, external tool, or other agent providing "
        "sensitive data.",
        "Sensitive data provided by the user, FM, knowledge base, external "
        "tool, or other agent.",
        "An environment where sensitive data must be protected.",
        {ArtefactRef::workflow_execution},
        "Privacy-preserving techniques, such as data anonymisation, "
        "encryption, and differential privacy, are applied to protect "
        "sensitive data.",
        {"Percentage of protected sensitive data."},
        {MetricId::ratio}));

    c.push_back(make(
        QualityAttribute::security,
        "A user, FM, external tool, other agent, or any external entity "
        "attempting unauthorised access or posing potential vulnerabilities "
        "or threats.",
        "An attempted unauthorised access, a detected vulnerability, a "
        "malicious attack.",
        "A potentially hostile environment, where it must defend against a "
        "variety of threats while maintaining normal operations and overall "
        "system integrity.",
        {ArtefactRef::prompt_optimiser, ArtefactRef::workflow_execution},
        "The agent detects the security threats and takes immediate actions "
        "to mitigate them. This includes analysing vulnerabilities, denying "
        "unauthorised access, isolating compromised tools or agents, logging "
        "incidents, alerting the user or administrator, updating agent "
        "memory, and strengthening guardrails.",
        {"Time to detect a vulnerability.",
         "Time to recover from a successful attack."},
        {MetricId::latency_pct, MetricId::resolve_within}));

    c.push_back(make(
        QualityAttribute::fairness,
        "A user generating a biased result.",
        "Bias in the agent's final result, or intermediate result or user.",
        "A diverse environment with affected humans from varying demographics "
        "and social contexts.",
        {ArtefactRef::agent},
        "The agent identifies fairness issues and applies mitigation "
        "techniques to ensure equitable outcomes.",
        {"The bias detection rate.", "The mitigation success rate."},
        {MetricId::ratio}));

    c.push_back(make(
        QualityAttribute::availability,
        "Internal or external entities that trigger abnormal conditions "
        "interrupting the agent's operations.",
        "An abnormal condition arises, disrupting the agent's operations, "
        "such as unmet task dependencies, tool failures, data quality issues, "
        "or user interventions.",
        "A complex and dynamic environment where exceptions are common in "
        "task execution, external tool API calls, data operations, and "
        "interactions with other agents.",
        {ArtefactRef::agent},
        "The agent detects the exceptions and activates appropriate handling "
        "mechanisms, including retrying failed tasks, switching to "
        "alternative tasks or tools, requesting human intervention, applying "
        "fallback, using alternative resources, and logging the incident.",
        {"The exception resolution rate.", "Mean recovery time.",
         "Task success rate.", "Agent uptime."},
        {MetricId::ratio, MetricId::resolve_within}));

    c.push_back(make(
        QualityAttribute::observability,
        "A monitoring system, system administrator, or external evaluator, "
        "aiming to assess the agent's performance and behaviour in real-time.",
        "A request for real-time diagnosis, triggered by events like "
        "performance degradation, abnormal execution.",
        "A complex, real-time environment where continuous monitoring, "
        "logging, and analysis are vital.",
        {ArtefactRef::log_repository},
        "The agent generates logs for each span, a traceable unit of "
        "operation, related to its behaviour, including reasoning span, "
        "planning span, workflow span, task span, tool span, evaluation span, "
        "and FM span. This provides stakeholders with real-time insights into "
        "the agent's health, goal completion progress, and potential "
        "anomalies.",
        {"Log granularity and completeness."},
        {MetricId::completeness}));

    c.push_back(make(
        QualityAttribute::transparency,
        "A user or external auditor seeking to understand the reasoning "
        "behind the agent's final/intermediate results.",
        "A request for an explanation of how the agent produced its final or "
        "intermediate results.",
        "A context where the user requires clarity on how/why outcomes were "
        "generated.",
        {ArtefactRef::agent},
        "The agent informs that the outcome was generated by an AI agent and "
        "provides a human-understandable explanation of its final and "
        "intermediate results. This explanation includes justifications for "
        "goal understanding, planning, agent memory and knowledge retrieval, "
        "external tool and agent selection, and workflow execution.",
        {"The percentage of users who can understand the explanations.",
         "The time taken to generate and deliver explanations to the user."},
        {MetricId::ratio, MetricId::latency_pct}));

    c.push_back(make(
        QualityAttribute::safety,
        "A user, external system, or internal monitoring component detecting "
        "potential unsafe behaviour.",
        "An event that can cause the agent to behave in an unintended or "
        "harmful way.",
        "An environment where safety is critical.",
        {ArtefactRef::prompt_optimiser, ArtefactRef::workflow_execution},
        "The agent detects potential safety threats and immediately triggers "
        "predefined safety mechanisms, including refusing unsafe human goals, "
        "halting unsafe operations, switching to a safe fallback mode, "
        "isolating faulty components, alerting humans, activating guardrails.",
        {"The rate of threat detection.", "Percentage of unsafe events avoided.",
         "Percentage of events that require human intervention.",
         "The time taken to mitigate a safety threat."},
        {MetricId::ratio, MetricId::latency_pct}));

    c.push_back(make(
        QualityAttribute::contestability,
        "A user or stakeholder who wants to question or contest the agent's "
        "decision or outcome.",
        "A specific decision or outcome generated by the agent, perceived as "
        "incorrect or unethical, which requires further justification or "
        "review.",
        "An environment where users and stakeholders must be able to contest "
        "decisions, especially in high-stakes environments such as "
        "healthcare, legal, financial, or public-sector applications.",
        {ArtefactRef::workflow_execution, ArtefactRef::agent_memory},
        "The agent provides a detailed explanation of how the outcome was "
        "produced. Users challenge the outcome by submitting "
        "counter-evidence, rejecting or correcting the result, requesting a "
        "human review.",
        {"The time taken to resolve contested decisions.",
         "The percentage of contested decisions that result in a meaningful "
         "correction after the review process."},
        {MetricId::resolve_within, MetricId::ratio}));

    return c;
}

}  // namespace

const std::vector<GeneralScenario>& builtin_catalogue() {
    static const std::vector<GeneralScenario> catalogue = build_catalogue();
    return catalogue;
}

const GeneralScenario& catalogue_entry(const std::vector<GeneralScenario>& catalogue,
                                       QualityAttribute q) {
    for (const GeneralScenario& g : catalogue) {
        if (g.quality == q) return g;
    }
    throw std::invalid_argument("no catalogue entry for quality " +
                                std::string(to_string(q)));
}

std::vector<GeneralScenario> apply_catalogue_overrides(
    std::vector<GeneralScenario> catalogue,
    const std::vector<GeneralScenario>& overrides) {
    for (const GeneralScenario& o : overrides) {
        bool replaced = false;
        for (GeneralScenario& g : catalogue) {
            if (g.quality == o.quality) {
                g = o;
                replaced = true;
                break;
            }
        }
        if (!replaced) catalogue.push_back(o);
    }
    return catalogue;
}

// ── instantiate ───────────────────────────────────────────────────────────

namespace {

std::vector<std::string> split_list(const std::string& value) {
    // Accepts "a, b, c" or "[a, b, c]".
    std::string body = value;
    if (!body.empty() && body.front() == '[' && body.back() == ']')
        body = body.substr(1, body.size() - 2);
    std::vector<std::string> out;
    std::string item;
    for (char ch : body) {
        if (ch == ',') {
            out.push_back(item);
            item.clear();
        } else {
            item += ch;
        }
    }
    out.push_back(item);
    for (std::string& s : out) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    }
    std::erase_if(out, [](const std::string& s) { return s.empty(); });
    return out;
}

}  // namespace

ContextScenario instantiate(const GeneralScenario& general, const std::string& id,
                            const std::vector<FieldOverride>& overrides) {
    if (id.empty()) throw std::invalid_argument("scenario id must be non-empty");

    ContextScenario s;
    s.id = id;
    s.quality = general.quality;
    s.source = general.source_template;
    s.stimulus = general.stimulus_template;
    s.environment = general.environment_template;
    s.artefacts = general.artefacts;
    s.response = general.response_template;

    for (const FieldOverride& o : overrides) {
        if (o.name == "source") {
            s.source = o.value;
        } else if (o.name == "stimulus") {
            s.stimulus = o.value;
        } else if (o.name == "environment") {
            s.environment = o.value;
        } else if (o.name == "response") {
            s.response = o.value;
        } else if (o.name == "priority") {
            auto b = parse_band(o.value);
            if (!b) throw std::invalid_argument("invalid priority \"" + o.value + "\"");
            s.priority = *b;
        } else if (o.name == "seq") {
            unsigned long v = 0;
            auto sv = std::string_view(o.value);
            auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
            if (ec != std::errc{} || p != sv.data() + sv.size() || v == 0)
                throw std::invalid_argument("seq must be a positive integer");
            s.seq = static_cast<std::uint32_t>(v);
        } else if (o.name == "artefacts") {
            std::vector<ArtefactRef> refs;
            for (const std::string& label : split_list(o.value)) {
                auto a = parse_artefact(label);
                if (!a)
                    throw std::invalid_argument("unknown artefact \"" + label + "\"");
                refs.push_back(*a);
            }
            if (refs.empty())
                throw std::invalid_argument("artefacts override must be non-empty");
            s.artefacts = std::move(refs);
        } else {
            throw std::invalid_argument("unknown override field \"" + o.name + "\"");
        }
    }
    return s;
}

// ── map_governance ────────────────────────────────────────────────────────

GovernanceMapping map_governance(const std::vector<GovernanceTag>& tags) {
    std::set<std::string> seen;
    GovernanceMapping mapping;
    for (const GovernanceTag& tag : tags) {
        if (!seen.insert(tag.id).second)
            throw std::invalid_argument("duplicate governance tag id \"" + tag.id + "\"");
        mapping.entries.emplace_back(tag.id, tag.default_qualities);
        if (tag.default_qualities.empty()) mapping.unmapped.push_back(tag.id);
    }
    return mapping;
}

}  // namespace arceval
