#pragma once

#include <map>
#include <string>
#include <vector>

#include "decomp/realization.hpp"

namespace decomp {

// Invertible comparison between two realizations, one block per degree
// on each available side.  Comparisons preserve every declared
// filtration exactly (checked, not assumed).
struct Comparison {
  std::string source;
  std::string target;
  std::map<int, Matrix> blocks;
  std::map<int, Matrix> blocks_compact;
};

// A family of realizations of one geometric situation together with the
// comparison isomorphisms between them and a distinguished vertex whose
// projectors are taken as the rational reference.
struct DiagramStar {
  std::vector<Realization> realizations;
  std::vector<Comparison> comparisons;
  std::string rational_vertex;

  const Realization* find(const std::string& label) const;
};

struct DiagramFailure {
  std::string source;
  std::string target;
  std::string what;     // "invertible", "strict", "commutes", ...
  std::string family;   // empty for structural failures
  std::string key;
  int degree = 0;
};

struct DiagramReport {
  std::vector<DiagramFailure> failures;
  bool ok() const { return failures.empty(); }
};

// Per-vertex projector bundles, as produced by run_pipeline.
using BundleMap = std::map<std::string, ProjectorBundle>;

// Checks each comparison is invertible, strictly filtered, and
// intertwines every projector of every family on both sides.
DiagramReport check_diagram(const DiagramStar& star, const BundleMap& bundles);

struct RationalityFailure {
  std::string where;  // vertex or "source->target" edge
  std::string what;
  std::string family;
  std::string key;
  int degree = 0;
};

struct RationalityReport {
  std::vector<RationalityFailure> failures;
  bool ok() const { return failures.empty(); }
};

// Transports the distinguished vertex's projectors along a spanning tree
// of comparisons and checks (a) every local family agrees with the
// transported one and (b) transport is path independent, i.e. every
// comparison equals the composite transport between its endpoints.
RationalityReport check_rationality(const DiagramStar& star, const BundleMap& bundles);

struct EquivarianceReport {
  std::vector<DiagramFailure> failures;
  bool ok() const { return failures.empty(); }
};

// Commutation of the realization's symmetries with one projector bundle.
EquivarianceReport check_equivariance(const Realization& realization, const ProjectorBundle& bundle);

// Full run over a diagram: every vertex pipeline plus the diagram-level
// checks.  Pipeline results are returned per vertex in diagram order.
struct DiagramRun {
  std::vector<PipelineResult> vertices;
  DiagramReport diagram;
  RationalityReport rationality;
  bool ok() const;
};

DiagramRun run_diagram(const DiagramStar& star);

}  // namespace decomp
