#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arceval/analysis.hpp"
#include "arceval/catalogue.hpp"
#include "arceval/document.hpp"
#include "arceval/prioritiser.hpp"

namespace arceval {

// ── Workspace model ───────────────────────────────────────────────────────

struct GoalStatement {
    std::string id;
    std::string text;
    bool clarified = false;

    bool operator==(const GoalStatement&) const = default;
};

struct QualityRequirement {
    QualityAttribute quality = QualityAttribute::accuracy;
    std::string rationale;
    std::vector<std::string> governance_refs;  // tag ids
    bool guardrail = false;

    bool operator==(const QualityRequirement&) const = default;
};

/// Completed evaluation-process steps with the ordering rules:
///   identify-requirements needs understand-goals + review-governance;
///   define-scenarios needs identify-requirements;
///   prioritise-scenarios needs define-scenarios;
///   analyse-architecture needs prioritise-scenarios + review-architecture;
///   improve-architecture needs analyse-architecture;
///   monitor-risks needs improve-architecture;
///   reprioritise needs monitor-risks and re-opens analyse + improve.
struct ProcessState {
    std::set<ProcessStep> completed;

    bool done(ProcessStep s) const { return completed.count(s) > 0; }
    /// Missing prerequisites for a step, in canonical step order.
    std::vector<ProcessStep> missing_for(ProcessStep s) const;
};

bool operator==(const ProcessState& a, const ProcessState& b);

/// One evaluation session. A single-writer value: advance() returns a new
/// workspace; older copies stay valid for readers.
struct Workspace {
    std::string name;
    std::vector<GoalStatement> goals;
    std::vector<GovernanceSet> governance;
    std::vector<QualityRequirement> requirements;
    std::vector<ArchitectureModel> architectures;  // ordered revisions
    std::optional<std::string> current_architecture;
    std::vector<ContextScenario> scenarios;
    std::vector<PriorityInput> priority_inputs;
    std::vector<PriorityResult> priorities;
    Weights weights;
    BandCutoffs band_cutoffs;
    AnalysisLedger analysis;
    ProcessState state;

    std::vector<GovernanceTag> all_tags() const;
    const ArchitectureModel* current() const;
    const ContextScenario* find_scenario(const std::string& id) const;
};

struct ProcessOrderError : std::runtime_error {
    std::vector<ProcessStep> missing;
    explicit ProcessOrderError(std::vector<ProcessStep> steps);
};

/// Payload merged by advance(); empty members are no-ops.
struct AdvancePayload {
    std::vector<GoalStatement> goals;
    std::vector<GovernanceSet> governance;
    std::vector<QualityRequirement> requirements;
    std::vector<ArchitectureModel> architectures;
    std::optional<std::string> current_architecture;
    std::vector<ContextScenario> scenarios;
    std::vector<PriorityInput> priority_inputs;
    std::vector<PriorityResult> priorities;
    std::optional<Weights> weights;
    std::optional<BandCutoffs> band_cutoffs;
    AnalysisLedger ledger;
};

/// Marks a step completed after merging the payload. Throws
/// ProcessOrderError when prerequisites are missing, std::invalid_argument
/// on payload violations (duplicate ids, scenario quality outside
/// requirements, unresolved governance refs). reprioritise additionally
/// removes analyse-architecture and improve-architecture from completed.
Workspace advance(Workspace ws, ProcessStep step, const AdvancePayload& payload = {});

/// Requirement/scenario/governance traceability findings:
/// governance tags no requirement references, requirements with no
/// scenario, scenarios whose quality is outside the requirements.
/// Requires identify-requirements to be completed.
std::vector<Finding> coverage_check(const Workspace& ws);

// ── Architecture diff ─────────────────────────────────────────────────────

struct ArchitectureDiff {
    std::vector<std::string> added_components;
    std::vector<std::string> removed_components;
    std::vector<std::string> modified_components;
    std::vector<std::string> added_approaches;
    std::vector<std::string> removed_approaches;
    std::vector<std::string> modified_approaches;

    bool empty() const;
};

/// Added/removed/modified components and approaches by id, each list
/// sorted ascending.
ArchitectureDiff diff_architectures(const ArchitectureModel& before,
                                    const ArchitectureModel& after);

// ── Persistence ───────────────────────────────────────────────────────────

/// Workspace manifest: a `workspace "name" { ... }` block listing member
/// document files, the current architecture revision, weights, goals,
/// requirements, completed steps and ledger entries.
struct WorkspaceManifest {
    std::string name;
    std::vector<std::string> documents;  // file names relative to the manifest
    std::optional<std::string> current_architecture;
    Weights weights;
    BandCutoffs band_cutoffs;
    std::size_t persistence = 3;
    std::vector<GoalStatement> goals;
    std::vector<QualityRequirement> requirements;
    std::vector<ProcessStep> completed;
    AnalysisLedger ledger;
};

inline constexpr const char* manifest_filename = "workspace.manifest";

struct ManifestResult {
    WorkspaceManifest manifest;
    std::vector<ParseError> errors;

    bool ok() const { return errors.empty(); }
};

ManifestResult parse_manifest(std::string_view text, std::string file = "<manifest>");
std::string serialize_manifest(const WorkspaceManifest& manifest);

/// Loads a workspace directory: parses the manifest plus every listed
/// document and assembles the workspace without re-running process checks.
/// Parse errors are returned; an empty error list means success.
struct LoadResult {
    Workspace workspace;
    std::size_t persistence = 3;
    // `general` blocks found in the documents, for catalogue overriding.
    std::vector<GeneralScenario> catalogue_overrides;
    std::vector<ParseError> errors;

    bool ok() const { return errors.empty(); }
};

LoadResult load_workspace(const std::string& dir);

/// Writes the manifest and canonical documents (scenarios.aas,
/// architectures.aas, governance.aas, priorities.aas) into dir.
/// load_workspace(save_workspace(ws)) reproduces ws.
void save_workspace(const Workspace& ws, const std::string& dir,
                    std::size_t persistence = 3);

}  // namespace arceval
