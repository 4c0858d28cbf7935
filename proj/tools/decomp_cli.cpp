#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "decomp/errors.hpp"
#include "decomp/generate.hpp"
#include "decomp/harness.hpp"
#include "decomp/report.hpp"
#include "decomp/scenario.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kInputError = 2;

// A bare name resolves against the corpus directory when the file does
// not exist as given.
std::string resolve_scenario(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (const char* corpus = std::getenv("DECOMP_CORPUS_DIR")) {
    const fs::path base(corpus);
    if (fs::exists(base / path)) return (base / path).string();
    const fs::path with_ext = base / (path + ".scenario");
    if (fs::exists(with_ext)) return with_ext.string();
  }
  return path;
}

decomp::ScenarioFile load(const std::string& path) {
  return decomp::load_scenario(resolve_scenario(path));
}

// Reduced view of a pipeline run: only the checks whose name starts with
// one of the prefixes.  The intersection run moves over when requested.
decomp::PipelineResult filter_pipeline(decomp::PipelineResult&& full,
                                       const std::vector<std::string>& prefixes,
                                       bool keep_intersection) {
  decomp::PipelineResult out;
  out.label = full.label;
  for (const auto& check : full.checks) {
    for (const std::string& prefix : prefixes) {
      const std::string& name = check.name;
      if (name.rfind(prefix, 0) == 0 || name.rfind("compact/" + prefix, 0) == 0) {
        out.add(check.name, check.ok, check.detail);
        break;
      }
    }
  }
  if (keep_intersection && full.intersection_run) {
    out.ok = out.ok && full.intersection_run->ok;
    out.intersection_run = std::move(full.intersection_run);
  }
  return out;
}

int render_pipelines(const decomp::ScenarioFile& scenario, const std::vector<std::string>& prefixes,
                     bool keep_intersection, decomp::ReportFormat format) {
  bool all_ok = true;
  for (const decomp::Realization& r : scenario.star.realizations) {
    decomp::PipelineResult view =
        filter_pipeline(decomp::run_pipeline(r), prefixes, keep_intersection);
    all_ok = all_ok && view.ok;
    std::cout << decomp::render_pipeline(view, format);
  }
  return all_ok ? kPass : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic checks for filtered graded decompositions"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string format_name = "text";
  std::string family_name;
  std::string profile = "hl-only";
  std::string out_path;
  std::uint64_t seed = 1;
  int max_weight = 2;
  int spread = 2;
  bool corrupt = false;

  auto add_scenario = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_path, "scenario file or corpus name")->required();
    cmd->add_option("--format", format_name, "output format: text or structured");
  };

  CLI::App* validate = app.add_subcommand("validate", "schema and consistency checks");
  add_scenario(validate);
  CLI::App* hl_check = app.add_subcommand("hl-check", "filtration and hard Lefschetz checks");
  add_scenario(hl_check);
  CLI::App* split = app.add_subcommand("split", "canonical splitting construction and checks");
  add_scenario(split);
  CLI::App* supports = app.add_subcommand("supports", "pairing and support decomposition checks");
  add_scenario(supports);
  CLI::App* projectors = app.add_subcommand("projectors", "projector systems and rank tables");
  add_scenario(projectors);
  projectors->add_option("--family", family_name,
                         "restrict the rank table to one family: perversity, support, primitive, both");
  CLI::App* diagram = app.add_subcommand("diagram-check", "comparison and rationality checks");
  add_scenario(diagram);
  CLI::App* compose = app.add_subcommand("compose-check", "composition chain and block checks");
  add_scenario(compose);
  CLI::App* report = app.add_subcommand("report", "full pipeline over the whole scenario");
  add_scenario(report);

  CLI::App* generate = app.add_subcommand("generate", "deterministic fixture factory");
  generate->add_option("--seed", seed, "generator seed");
  generate->add_option("--profile", profile, "hl-only, supports, composition, or diagram");
  generate->add_option("--max-weight", max_weight, "largest planted string weight");
  generate->add_option("--spread", spread, "extra strings planted per weight");
  generate->add_flag("--corrupt", corrupt, "plant one inconsistency");
  generate->add_option("--scenario", out_path, "output path (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    const decomp::ReportFormat format = decomp::report_format_from_name(format_name);

    if (validate->parsed()) {
      const decomp::ValidationOutcome outcome = decomp::validate_scenario(load(scenario_path));
      std::cout << decomp::render_validation(outcome, format);
      return outcome.ok ? kPass : kCheckFailure;
    }
    if (hl_check->parsed()) {
      return render_pipelines(load(scenario_path),
                              {"filtration/valid", "eta/", "hl/"}, false, format);
    }
    if (split->parsed()) {
      return render_pipelines(load(scenario_path),
                              {"filtration/valid", "eta/", "hl/", "lift/", "splitting/"}, false,
                              format);
    }
    if (supports->parsed()) {
      return render_pipelines(load(scenario_path),
                              {"filtration/valid", "eta/", "hl/", "pairing/", "supports/"}, false,
                              format);
    }
    if (projectors->parsed()) {
      const decomp::ScenarioFile scenario = load(scenario_path);
      bool all_ok = true;
      for (const decomp::Realization& r : scenario.star.realizations) {
        decomp::PipelineResult full = decomp::run_pipeline(r);
        decomp::ProjectorBundle ranks = full.bundle ? *full.bundle : decomp::ProjectorBundle{};
        if (!family_name.empty()) {
          const decomp::FamilyKind kind = decomp::family_from_name(family_name);
          decomp::ProjectorBundle only;
          if (ranks.ordinary.count(kind)) only.ordinary[kind] = ranks.ordinary.at(kind);
          if (ranks.compact.count(kind)) only.compact[kind] = ranks.compact.at(kind);
          ranks = std::move(only);
        }
        decomp::PipelineResult view = filter_pipeline(
            std::move(full), {"projectors/", "preservation/", "equivariance/"}, false);
        all_ok = all_ok && view.ok;
        std::cout << decomp::render_pipeline(view, format);
        std::cout << decomp::render_ranks(r.label, ranks, format);
      }
      return all_ok ? kPass : kCheckFailure;
    }
    if (diagram->parsed()) {
      const decomp::ScenarioFile scenario = load(scenario_path);
      const decomp::DiagramRun run = decomp::run_diagram(scenario.star);
      std::cout << decomp::render_diagram_run(run, format);
      return run.ok() ? kPass : kCheckFailure;
    }
    if (compose->parsed()) {
      return render_pipelines(load(scenario_path),
                              {"filtration/valid", "eta/", "hl/", "compose/"}, true, format);
    }
    if (report->parsed()) {
      const decomp::ScenarioFile scenario = load(scenario_path);
      const decomp::DiagramRun run = decomp::run_diagram(scenario.star);
      std::cout << decomp::render_diagram_run(run, format);
      return run.ok() ? kPass : kCheckFailure;
    }
    if (generate->parsed()) {
      decomp::FixtureSpec spec;
      spec.seed = seed;
      spec.profile = profile;
      spec.max_weight = max_weight;
      spec.spread = spread;
      spec.corrupt = corrupt;
      const decomp::GeneratedFixture fixture = decomp::generate_fixture(spec);
      if (out_path.empty()) {
        std::cout << decomp::scenario_to_json_text(fixture.scenario);
      } else {
        decomp::save_scenario(fixture.scenario, out_path);
      }
      return kPass;
    }
  } catch (const decomp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
