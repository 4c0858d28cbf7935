#include "decomp/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "decomp/errors.hpp"

namespace decomp {

namespace {

using nlohmann::json;

json checks_to_json(const std::vector<CheckItem>& checks) {
  json out = json::array();
  for (const CheckItem& c : checks) {
    json item{{"name", c.name}, {"ok", c.ok}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    out.push_back(std::move(item));
  }
  return out;
}

void checks_to_text(std::ostream& os, const std::vector<CheckItem>& checks,
                    const std::string& indent) {
  for (const CheckItem& c : checks) {
    os << indent << (c.ok ? "[ ok ] " : "[FAIL] ") << c.name;
    if (!c.ok && !c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
}

json pipeline_to_json(const PipelineResult& result) {
  json out;
  out["label"] = result.label;
  out["ok"] = result.ok;
  out["checks"] = checks_to_json(result.checks);
  if (result.intersection_run) {
    out["intersection"] = pipeline_to_json(*result.intersection_run);
  }
  return out;
}

void pipeline_to_text(std::ostream& os, const PipelineResult& result, const std::string& indent) {
  os << indent << "realization " << result.label << ": " << (result.ok ? "pass" : "FAIL") << "\n";
  checks_to_text(os, result.checks, indent + "  ");
  if (result.intersection_run) {
    os << indent << "  intersection subquotient:\n";
    pipeline_to_text(os, *result.intersection_run, indent + "  ");
  }
}

json diagram_failures_to_json(const std::vector<DiagramFailure>& failures) {
  json out = json::array();
  for (const DiagramFailure& f : failures) {
    json item{{"source", f.source}, {"target", f.target}, {"what", f.what}, {"degree", f.degree}};
    if (!f.family.empty()) item["family"] = f.family;
    if (!f.key.empty()) item["key"] = f.key;
    out.push_back(std::move(item));
  }
  return out;
}

void diagram_failures_to_text(std::ostream& os, const std::vector<DiagramFailure>& failures) {
  for (const DiagramFailure& f : failures) {
    os << "  [FAIL] " << f.source << " -> " << f.target << ": " << f.what;
    if (!f.family.empty()) os << " family=" << f.family;
    if (!f.key.empty()) os << " key=" << f.key;
    os << " degree=" << f.degree << "\n";
  }
}

json rank_table(const std::map<FamilyKind, ProjectorFamily>& side) {
  json out = json::object();
  for (const auto& [kind, family] : side) {
    json per_key = json::object();
    for (const auto& [key, blocks] : family.projectors) {
      json per_degree = json::object();
      for (const auto& [k, p] : blocks) per_degree[std::to_string(k)] = rank(p);
      per_key[key.to_string(kind)] = std::move(per_degree);
    }
    out[family_name(kind)] = std::move(per_key);
  }
  return out;
}

void rank_table_text(std::ostream& os, const std::map<FamilyKind, ProjectorFamily>& side,
                     const std::string& indent) {
  for (const auto& [kind, family] : side) {
    os << indent << "family " << family_name(kind) << ":\n";
    for (const auto& [key, blocks] : family.projectors) {
      os << indent << "  " << key.to_string(kind) << ":";
      for (const auto& [k, p] : blocks) os << " k=" << k << ":" << rank(p);
      os << "\n";
    }
  }
}

std::string dump(const json& value) { return value.dump(2) + "\n"; }

}  // namespace

ReportFormat report_format_from_name(const std::string& name) {
  if (name == "text") return ReportFormat::text;
  if (name == "structured") return ReportFormat::structured;
  throw ParseError("unknown report format: " + name);
}

std::string render_validation(const ValidationOutcome& outcome, ReportFormat format) {
  if (format == ReportFormat::structured) {
    return dump(json{{"ok", outcome.ok}, {"checks", checks_to_json(outcome.checks)}});
  }
  std::ostringstream os;
  os << "validation: " << (outcome.ok ? "pass" : "FAIL") << "\n";
  checks_to_text(os, outcome.checks, "  ");
  return os.str();
}

std::string render_pipeline(const PipelineResult& result, ReportFormat format) {
  if (format == ReportFormat::structured) return dump(pipeline_to_json(result));
  std::ostringstream os;
  pipeline_to_text(os, result, "");
  return os.str();
}

std::string render_diagram_run(const DiagramRun& run, ReportFormat format) {
  if (format == ReportFormat::structured) {
    json out;
    out["ok"] = run.ok();
    json vertices = json::array();
    for (const PipelineResult& r : run.vertices) vertices.push_back(pipeline_to_json(r));
    out["vertices"] = std::move(vertices);
    out["diagram"] = json{{"ok", run.diagram.ok()},
                          {"failures", diagram_failures_to_json(run.diagram.failures)}};
    json rationality = json::array();
    for (const RationalityFailure& f : run.rationality.failures) {
      json item{{"where", f.where}, {"what", f.what}, {"degree", f.degree}};
      if (!f.family.empty()) item["family"] = f.family;
      if (!f.key.empty()) item["key"] = f.key;
      rationality.push_back(std::move(item));
    }
    out["rationality"] = json{{"ok", run.rationality.ok()}, {"failures", std::move(rationality)}};
    return dump(out);
  }
  std::ostringstream os;
  os << "diagram: " << (run.ok() ? "pass" : "FAIL") << "\n";
  for (const PipelineResult& r : run.vertices) pipeline_to_text(os, r, "  ");
  os << "  comparisons: " << (run.diagram.ok() ? "pass" : "FAIL") << "\n";
  diagram_failures_to_text(os, run.diagram.failures);
  os << "  rationality: " << (run.rationality.ok() ? "pass" : "FAIL") << "\n";
  for (const RationalityFailure& f : run.rationality.failures) {
    os << "  [FAIL] " << f.where << ": " << f.what;
    if (!f.family.empty()) os << " family=" << f.family;
    if (!f.key.empty()) os << " key=" << f.key;
    os << " degree=" << f.degree << "\n";
  }
  return os.str();
}

std::string render_ranks(const std::string& label, const ProjectorBundle& bundle,
                         ReportFormat format) {
  if (format == ReportFormat::structured) {
    json out;
    out["label"] = label;
    out["ordinary"] = rank_table(bundle.ordinary);
    if (!bundle.compact.empty()) out["compact"] = rank_table(bundle.compact);
    return dump(out);
  }
  std::ostringstream os;
  os << "projector ranks for " << label << ":\n";
  rank_table_text(os, bundle.ordinary, "  ");
  if (!bundle.compact.empty()) {
    os << "  compact side:\n";
    rank_table_text(os, bundle.compact, "  ");
  }
  return os.str();
}

}  // namespace decomp
