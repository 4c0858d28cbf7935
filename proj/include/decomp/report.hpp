#pragma once

#include <string>

#include "decomp/harness.hpp"
#include "decomp/scenario.hpp"

namespace decomp {

enum class ReportFormat { text, structured };

ReportFormat report_format_from_name(const std::string& name);

// Human-readable and machine-readable renderings of the check results.
// The structured format is JSON with sorted keys, one object per check.
std::string render_validation(const ValidationOutcome& outcome, ReportFormat format);
std::string render_pipeline(const PipelineResult& result, ReportFormat format);
std::string render_diagram_run(const DiagramRun& run, ReportFormat format);

// Rank summary of one projector bundle: per family, per degree, the rank
// of each block projector.
std::string render_ranks(const std::string& label, const ProjectorBundle& bundle,
                         ReportFormat format);

}  // namespace decomp
