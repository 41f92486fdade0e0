#pragma once

#include <string>
#include <vector>

#include "arceval/architecture.hpp"
#include "arceval/monitor.hpp"
#include "arceval/scenario.hpp"
#include "arceval/vocab.hpp"

namespace arceval {

// ── Ledger entries ────────────────────────────────────────────────────────

enum class RiskStatus { open, mitigated };

std::string_view to_string(RiskStatus s);
std::optional<RiskStatus> parse_risk_status(std::string_view label);

struct Risk {
    std::string id;
    std::string text;
    std::vector<std::string> scenarios;   // scenario ids
    std::vector<std::string> approaches;  // approach ids
    RiskStatus status = RiskStatus::open;

    bool operator==(const Risk&) const = default;
};

struct Tradeoff {
    std::string id;
    std::string text;
    std::vector<QualityAttribute> qualities;  // at least two, distinct
    std::string approach;

    bool operator==(const Tradeoff&) const = default;
};

struct SensitivityPoint {
    std::string id;
    std::string text;
    std::string approach;
    QualityAttribute quality = QualityAttribute::accuracy;

    bool operator==(const SensitivityPoint&) const = default;
};

struct Recommendation {
    std::string id;
    std::string text;
    std::vector<std::string> addresses;  // risk ids
    std::string target;                  // architecture revision name

    bool operator==(const Recommendation&) const = default;
};

/// Gap/tradeoff/risk ledger carried by a workspace. Tradeoffs and
/// sensitivities are human-authored; gap risks are auto-created by
/// analysis; audit entries come from reprioritisation runs.
struct AnalysisLedger {
    std::vector<Risk> risks;
    std::vector<Tradeoff> tradeoffs;
    std::vector<SensitivityPoint> sensitivities;
    std::vector<Recommendation> recommendations;
    std::vector<ReprioritisationAudit> audit;

    Risk* find_risk(const std::string& id);
    const Risk* find_risk(const std::string& id) const;
    void merge(const AnalysisLedger& other);  // by id; later entries win
};

bool operator==(const AnalysisLedger& a, const AnalysisLedger& b);

// ── Gap analysis ──────────────────────────────────────────────────────────

enum class CoverageLevel { full, partial, none };

std::string_view to_string(CoverageLevel c);

struct ScenarioCoverage {
    std::string scenario_id;
    QualityAttribute quality = QualityAttribute::accuracy;
    CoverageLevel level = CoverageLevel::none;
    std::vector<std::string> supporting_approaches;  // ids
    std::vector<std::string> justifications;
};

/// Coverage of each scenario by an architecture's approaches.
///
/// none    — no approach supports the scenario or its quality;
/// full    — every scenario artefact the architecture instantiates is
///           touched by a supporting approach declaring full coverage;
/// partial — anything in between (untouched artefacts, or only
///           partial-coverage support).
///
/// Artefacts absent from the architecture's component set are reported in
/// the justification but excluded from the touch requirement. Monotone in
/// approaches: adding a supporting approach never downgrades coverage.
/// Throws std::invalid_argument when an approach's supports reference a
/// scenario id that is in none of the given scenarios.
std::vector<ScenarioCoverage> gap_analysis(const std::vector<ContextScenario>& scenarios,
                                           const ArchitectureModel& arch);

/// The risk id gap analysis assigns to a high-priority coverage gap.
std::string gap_risk_id(const std::string& scenario_id);

/// Creates (or keeps) one open Risk per high-priority scenario whose
/// coverage is none/partial. Bands come from the priority results when
/// present, else from the scenario's own priority field. Existing ledger
/// entries with the same id are left untouched.
void record_gap_risks(AnalysisLedger& ledger,
                      const std::vector<ScenarioCoverage>& coverage,
                      const std::vector<ContextScenario>& scenarios,
                      const std::vector<PriorityResult>& priorities);

/// Flips risks to mitigated when a recommendation addresses them and the
/// recommendation's target architecture fully covers every scenario the
/// risk cites.
void update_mitigations(AnalysisLedger& ledger,
                        const std::vector<ContextScenario>& scenarios,
                        const std::vector<ArchitectureModel>& revisions);

}  // namespace arceval
