#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>

#include "decomp/errors.hpp"
#include "decomp/generate.hpp"
#include "decomp/harness.hpp"
#include "decomp/matrix.hpp"
#include "decomp/projectors.hpp"
#include "decomp/report.hpp"
#include "decomp/scenario.hpp"

namespace py = pybind11;

namespace {

using namespace decomp;

py::list check_list(const std::vector<CheckItem>& checks) {
  py::list out;
  for (const CheckItem& c : checks) out.append(py::make_tuple(c.name, c.ok, c.detail));
  return out;
}

py::list validate_file(const std::string& path) {
  return check_list(validate_scenario(load_scenario(path)).checks);
}

py::dict run_file(const std::string& path) {
  const ScenarioFile scenario = load_scenario(path);
  const DiagramRun run = run_diagram(scenario.star);
  py::dict out;
  out["ok"] = run.ok();
  out["diagram_ok"] = run.diagram.ok();
  out["rationality_ok"] = run.rationality.ok();
  py::list vertices;
  for (const PipelineResult& v : run.vertices) {
    py::dict vertex;
    vertex["label"] = v.label;
    vertex["ok"] = v.ok;
    vertex["checks"] = check_list(v.checks);
    vertices.append(vertex);
  }
  out["vertices"] = vertices;
  return out;
}

py::list family_ranks(const std::string& path) {
  const ScenarioFile scenario = load_scenario(path);
  const DiagramRun run = run_diagram(scenario.star);
  py::list out;
  for (const PipelineResult& v : run.vertices) {
    if (!v.bundle) continue;
    for (const auto& [kind, family] : v.bundle->ordinary) {
      for (const auto& [key, blocks] : family.projectors) {
        for (const auto& [degree, p] : blocks) {
          const std::size_t r = rank(p);
          if (r == 0) continue;
          out.append(py::make_tuple(v.label, family_name(kind), key.to_string(kind), degree, r));
        }
      }
    }
  }
  return out;
}

std::string generate_text(std::uint64_t seed, const std::string& profile, int max_weight, int spread,
                          bool corrupt) {
  FixtureSpec spec;
  spec.seed = seed;
  spec.profile = profile;
  spec.max_weight = max_weight;
  spec.spread = spread;
  spec.corrupt = corrupt;
  return scenario_to_json_text(generate_fixture(spec).scenario);
}

std::string canonical_text(const std::string& text) {
  return scenario_to_json_text(scenario_from_json_text(text));
}

std::string report_file(const std::string& path, const std::string& format) {
  const ScenarioFile scenario = load_scenario(path);
  return render_diagram_run(run_diagram(scenario.star), report_format_from_name(format));
}

}  // namespace

PYBIND11_MODULE(_decomp, m) {
  m.doc() = "Exact-arithmetic checks for filtered graded decompositions";

  py::register_exception<Error>(m, "EngineError");

  m.def("validate_file", &validate_file, py::arg("path"),
        "Structural checks on a scenario file; returns (name, ok, detail) tuples.");
  m.def("run_file", &run_file, py::arg("path"),
        "Full pipeline and diagram checks; returns a dict with per-vertex results.");
  m.def("family_ranks", &family_ranks, py::arg("path"),
        "Nonzero projector ranks as (vertex, family, key, degree, rank) tuples.");
  m.def("generate", &generate_text, py::arg("seed"), py::arg("profile") = "hl-only",
        py::arg("max_weight") = 2, py::arg("spread") = 2, py::arg("corrupt") = false,
        "Deterministic scenario text for the given knobs.");
  m.def("canonical_text", &canonical_text, py::arg("text"),
        "Parse scenario text and re-serialize it canonically.");
  m.def("report_file", &report_file, py::arg("path"), py::arg("format") = "text",
        "Rendered check report for a scenario file ('text' or 'structured').");
}
