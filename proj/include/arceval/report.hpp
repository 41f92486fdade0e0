#pragma once

#include <string>
#include <vector>

#include "arceval/analysis.hpp"
#include "arceval/monitor.hpp"
#include "arceval/workspace.hpp"

namespace arceval {

/// Renders the evaluation report: goals, governance mapping, requirements,
/// prioritised scenarios, coverage table, tradeoffs, risks,
/// recommendations, runtime verdicts, audit — in that order, with stable
/// headings and byte-deterministic output for identical inputs. Coverage
/// is computed against the current architecture revision.
std::string render_report(const Workspace& ws,
                          const std::vector<ScenarioVerdicts>& verdicts = {},
                          const std::vector<ViolationSummary>& summaries = {});

/// Machine-readable sidecar of the coverage table (JSON array).
std::string render_coverage_json(const Workspace& ws);

/// Section headings in report order, for machine-checkable parsing.
const std::vector<std::string>& report_headings();

}  // namespace arceval
