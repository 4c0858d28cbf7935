#include "decomp/realization.hpp"

#include <algorithm>
#include <sstream>

#include "decomp/errors.hpp"

namespace decomp {

void PipelineResult::add(const std::string& name, bool item_ok, const std::string& detail) {
  checks.push_back({name, item_ok, detail});
  ok = ok && item_ok;
}

namespace {

std::string describe(const FilteredGradedSpace::ValidationReport& report) {
  return report.to_string();
}

// Hard Lefschetz machinery of one side.  Returns false when downstream
// steps cannot run.
struct SideArtifacts {
  std::optional<HLTriple> triple;
  std::optional<PrimitiveDecomposition> prim;
  std::optional<CanonicalSplitting> split;
};

bool run_hl_side(PipelineResult& result, const std::string& prefix, const FilteredGradedSpace& space,
                 const EtaBlocks& eta, SideArtifacts& out) {
  auto validation = space.validate();
  result.add(prefix + "filtration/valid", validation.ok(), describe(validation));
  if (!validation.ok()) return false;
  try {
    out.triple.emplace(space, eta);
  } catch (const Error& e) {
    result.add(prefix + "eta/shape", false, e.what());
    return false;
  }
  result.add(prefix + "eta/shape", true);
  HLReport hl = verify_hl(*out.triple);
  std::ostringstream hl_detail;
  if (hl.witness) {
    hl_detail << "degree " << hl.witness->degree << ", level " << hl.witness->b;
  }
  if (hl.status == HLStatus::shift_violation) {
    result.add(prefix + "eta/shift", false, hl_detail.str());
    return false;
  }
  result.add(prefix + "eta/shift", true);
  result.add(prefix + "hl/iterates-invertible", hl.ok(), hl_detail.str());
  if (!hl.ok()) return false;
  out.prim = primitive_parts(*out.triple);
  bool lifts_unique = true;
  try {
    out.split = canonical_splitting(*out.triple, *out.prim);
    for (const auto& [i, lift] : out.split->lifts) lifts_unique = lifts_unique && lift.unique();
  } catch (const Error& e) {
    result.add(prefix + "splitting/built", false, e.what());
    return false;
  }
  result.add(prefix + "lift/unique", lifts_unique);
  SplittingCheck check = verify_splitting(*out.triple, *out.split);
  std::ostringstream split_detail;
  if (!check.ok()) {
    split_detail << (check.invertible ? (check.filtered_both_ways ? "graded action is not the identity"
                                                                  : "filtration not carried exactly")
                                      : "phi is singular")
                 << " at degree " << check.degree << ", level " << check.b;
  }
  result.add(prefix + "splitting/verified", check.ok(), split_detail.str());
  return check.ok() && lifts_unique;
}

}  // namespace

PipelineResult run_pipeline(const Realization& r) {
  PipelineResult result;
  result.label = r.label;

  SideArtifacts ordinary;
  const bool ordinary_ok = run_hl_side(result, "", r.space, r.eta, ordinary);

  SideArtifacts compact;
  bool compact_ok = false;
  if (r.has_compact()) {
    compact_ok = run_hl_side(result, "compact/", *r.compact_space,
                             r.compact_eta.value_or(EtaBlocks{}), compact);
  }

  // Optional filtration tags are validated even when unused downstream.
  std::vector<const FilteredGradedSpace*> tags;
  for (const FilteredGradedSpace* f : {r.hodge ? &*r.hodge : nullptr, r.weight ? &*r.weight : nullptr}) {
    if (f == nullptr) continue;
    auto validation = f->validate();
    result.add("filtration/" + kind_name(f->kind()) + "/valid", validation.ok(), describe(validation));
    if (validation.ok()) tags.push_back(f);
  }

  // Support decomposition requires both sides.
  std::optional<SupportScenario> scenario;
  std::optional<SupportDecomposition> decomposition;
  if (r.supports) {
    if (!r.has_compact() || !compact_ok || !ordinary_ok) {
      result.add("supports/decomposition", false,
                 "support data needs valid ordinary and compact-support sides");
    } else {
      try {
        scenario.emplace(*ordinary.triple, *compact.triple, *r.supports);
        PairingReport pairing = scenario->check_graded_pairing();
        std::ostringstream pairing_detail;
        for (const auto& f : pairing.failures) {
          pairing_detail << "(b=" << f.b << ", degree=" << f.j << "): " << f.what << "; ";
        }
        result.add("pairing/nondegenerate", pairing.ok(), pairing_detail.str());
        if (pairing.ok()) {
          decomposition = scenario->assemble();
          result.add("supports/decomposition", true);
        }
      } catch (const Error& e) {
        result.add("supports/decomposition", false, e.what());
        decomposition.reset();
      }
    }
  }

  // Projector families on each available side.
  const std::string dense = r.supports ? r.supports->dense_label : "full";
  auto build_side = [&](const std::string& prefix, SideArtifacts& side, bool compact_side,
                        std::map<FamilyKind, ProjectorFamily>& out_families) -> bool {
    if (!side.triple || !side.prim || !side.split) return false;
    try {
      FourDecompositions decomps = four_decompositions(
          *side.triple, *side.prim, decomposition ? &*decomposition : nullptr, compact_side, dense);
      bool all_ok = true;
      for (FamilyKind kind : {FamilyKind::perversity, FamilyKind::support, FamilyKind::primitive,
                              FamilyKind::both}) {
        ProjectorFamily family = build_projectors(*side.split, decomps, kind);
        SystemReport report = verify_projector_system(family);
        std::ostringstream detail;
        if (!report.ok()) {
          detail << report.violation->what << " fails for " << report.violation->first.to_string(kind)
                 << " at degree " << report.violation->degree;
        }
        result.add(prefix + "projectors/" + family_name(kind) + "/system", report.ok(), detail.str());
        all_ok = all_ok && report.ok();
        out_families[kind] = std::move(family);
      }
      const bool refinements =
          verify_refinement(out_families[FamilyKind::both], out_families[FamilyKind::support]) &&
          verify_refinement(out_families[FamilyKind::both], out_families[FamilyKind::primitive]) &&
          verify_refinement(out_families[FamilyKind::both], out_families[FamilyKind::perversity]) &&
          verify_refinement(out_families[FamilyKind::support], out_families[FamilyKind::perversity]) &&
          verify_refinement(out_families[FamilyKind::primitive], out_families[FamilyKind::perversity]);
      result.add(prefix + "projectors/refinements", refinements);
      return all_ok && refinements;
    } catch (const Error& e) {
      result.add(prefix + "projectors/built", false, e.what());
      return false;
    }
  };

  ProjectorBundle bundle;
  bool have_ordinary_families = false;
  if (ordinary_ok) {
    have_ordinary_families = build_side("", ordinary, false, bundle.ordinary);
  }
  if (r.has_compact() && compact_ok) {
    build_side("compact/", compact, true, bundle.compact);
  }

  // Hodge/weight steps must be carried into themselves by every family.
  if (have_ordinary_families && !tags.empty()) {
    for (const auto& [kind, family] : bundle.ordinary) {
      try {
        PreservationReport report = verify_filtration_preservation(family, tags);
        std::ostringstream detail;
        if (!report.ok()) {
          detail << kind_name(report.violation->filtration) << " step " << report.violation->b
                 << " moved by " << report.violation->key.to_string(kind) << " in degree "
                 << report.violation->degree;
        }
        result.add("preservation/" + family_name(kind), report.ok(), detail.str());
      } catch (const Error& e) {
        result.add("preservation/" + family_name(kind), false, e.what());
      }
    }
  }

  // Symmetries must commute with every projector.
  for (const Symmetry& s : r.symmetries) {
    bool commutes = have_ordinary_families;
    std::string detail;
    if (have_ordinary_families) {
      try {
        for (const auto& [kind, family] : bundle.ordinary) {
          for (const auto& [key, blocks] : family.projectors) {
            for (const auto& [k, p] : blocks) {
              auto it = s.blocks.find(k);
              const Matrix gamma = it == s.blocks.end()
                                       ? Matrix(r.space.dim(k), r.space.dim(k))
                                       : it->second;
              if (!(gamma * p == p * gamma)) {
                commutes = false;
                detail = "fails for " + key.to_string(kind) + " at degree " + std::to_string(k);
                break;
              }
            }
            if (!commutes) break;
          }
          if (!commutes) break;
        }
      } catch (const Error& e) {
        commutes = false;
        detail = e.what();
      }
    }
    result.add("equivariance/" + s.label, commutes, detail);
  }

  // The comparison map from compact to ordinary cohomology intertwines
  // the two systems.
  if (!r.comap.empty()) {
    if (!r.has_compact()) {
      result.add("comap/intertwines", false, "comparison map declared without a compact side");
    } else if (have_ordinary_families && !bundle.compact.empty()) {
      try {
        bool filtered = true;
        for (int k : r.compact_space->degrees()) {
          auto it = r.comap.find(k);
          if (it == r.comap.end()) continue;
          for (int b = r.compact_space->b_min(); b <= r.compact_space->b_max(); ++b) {
            if (!r.space.step(k, b).contains(r.compact_space->step(k, b).apply(it->second))) {
              filtered = false;
            }
          }
        }
        result.add("comap/filtered", filtered);
        bool intertwines = true;
        std::string detail;
        for (FamilyKind kind : {FamilyKind::perversity, FamilyKind::support, FamilyKind::primitive,
                                FamilyKind::both}) {
          const ProjectorFamily& ord = bundle.ordinary.at(kind);
          const ProjectorFamily& cpt = bundle.compact.at(kind);
          std::vector<BlockKey> keys;
          for (const auto& [key, blocks] : ord.projectors) keys.push_back(key);
          for (const auto& [key, blocks] : cpt.projectors) keys.push_back(key);
          std::sort(keys.begin(), keys.end());
          keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
          for (const BlockKey& key : keys) {
            for (int k : r.compact_space->degrees()) {
              auto it = r.comap.find(k);
              const Matrix q = it == r.comap.end()
                                   ? Matrix(r.space.dim(k), r.compact_space->dim(k))
                                   : it->second;
              if (!(ord.block(key, k) * q == q * cpt.block(key, k))) {
                intertwines = false;
                detail = "fails for " + key.to_string(kind) + " at degree " + std::to_string(k);
                break;
              }
            }
            if (!intertwines) break;
          }
          if (!intertwines) break;
        }
        result.add("comap/intertwines", intertwines, detail);
      } catch (const Error& e) {
        result.add("comap/intertwines", false, e.what());
      }
    }
  }

  // Flag data must reproduce the declared filtrations after renumbering.
  if (r.flag) {
    try {
      std::map<int, std::size_t> compact_dims =
          r.has_compact() ? r.compact_space->degree_dims() : std::map<int, std::size_t>{};
      auto [flag_ord, flag_cpt] =
          flag_filtration(r.space.degree_dims(), compact_dims, r.flag->restrictions);
      auto matches = [](const FilteredGradedSpace& renum, const FilteredGradedSpace& target) {
        for (int k : target.degrees()) {
          for (int b = target.b_min(); b <= target.b_max(); ++b) {
            if (!(renum.step(k, b) == target.step(k, b))) return false;
          }
        }
        return true;
      };
      const FilteredGradedSpace renum_ord =
          flag_ord.renumbered(r.space.kind(), r.flag->offsets, r.flag->default_offset,
                              r.space.b_min(), r.space.b_max());
      result.add("flag/matches", matches(renum_ord, r.space));
      if (r.has_compact()) {
        const FilteredGradedSpace renum_cpt = flag_cpt.renumbered(
            r.compact_space->kind(), r.flag->offsets_compact, r.flag->default_offset_compact,
            r.compact_space->b_min(), r.compact_space->b_max());
        result.add("flag/compact/matches", matches(renum_cpt, *r.compact_space));
      }
    } catch (const Error& e) {
      result.add("flag/matches", false, e.what());
    }
  }

  // Composition data: chain identities, double-support block dimensions,
  // and the distinguished subquotient with its own full pipeline.
  if (r.compose) {
    ChainData chain;
    chain.chain.push_back(r.space);
    for (const FilteredGradedSpace& f : r.compose->later) chain.chain.push_back(f);
    chain.declared = r.compose->declared;
    try {
      ChainCheckResult chain_result = multi_composition_check(chain);
      std::ostringstream detail;
      if (!chain_result.ok) {
        detail << chain_result.what << " (prefix";
        for (int v : chain_result.prefix) detail << " " << v;
        detail << ", degree " << chain_result.degree << ", index " << chain_result.index << ")";
      }
      result.add("compose/chain", chain_result.ok, detail.str());
    } catch (const Error& e) {
      result.add("compose/chain", false, e.what());
    }
    if (!r.compose->g_support_steps.empty() && chain.chain.size() >= 2) {
      bool sums_ok = true;
      std::string detail;
      try {
        for (const auto& [a, unused_steps] : r.compose->g_support_steps) {
          (void)unused_steps;
          SupportBlockTable table = support_block_dims(chain.chain[0], chain.chain[1], a,
                                                       r.compose->g_support_steps,
                                                       r.compose->h_support_steps);
          if (!table.sums_match) {
            sums_ok = false;
            detail = "block dimensions do not sum at level " + std::to_string(a);
          }
        }
      } catch (const Error& e) {
        sums_ok = false;
        detail = e.what();
      }
      result.add("compose/support-blocks", sums_ok, detail);
    }
    if (!r.compose->dense_label.empty() && chain.chain.size() >= 2) {
      try {
        auto at_zero = r.compose->g_support_steps.find(0);
        if (at_zero == r.compose->g_support_steps.end() ||
            !at_zero->second.count(r.compose->dense_label)) {
          throw DataError("missing dense support step at level zero");
        }
        std::vector<const FilteredGradedSpace*> extras;
        if (r.hodge) extras.push_back(&*r.hodge);
        if (r.weight) extras.push_back(&*r.weight);
        IntersectionData data =
            intersection_subquotient(chain.chain[0], chain.chain[1], 0,
                                     at_zero->second.at(r.compose->dense_label), r.compose->eta,
                                     extras);
        result.add("compose/intersection", true);
        Realization inner;
        inner.label = r.label + "/intersection";
        inner.space = data.induced;
        inner.eta = data.eta;
        std::size_t extra_index = 0;
        if (r.hodge) inner.hodge = data.extra[extra_index++];
        if (r.weight) inner.weight = data.extra[extra_index++];
        result.intersection_run = std::make_unique<PipelineResult>(run_pipeline(inner));
        result.add("compose/intersection-pipeline", result.intersection_run->ok);
      } catch (const Error& e) {
        result.add("compose/intersection", false, e.what());
      }
    }
  }

  if (ordinary.split) result.splitting = std::move(*ordinary.split);
  if (compact.split) result.splitting_compact = std::move(*compact.split);
  result.bundle = std::move(bundle);
  return result;
}

}  // namespace decomp
