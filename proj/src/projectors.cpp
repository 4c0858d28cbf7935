#include "decomp/projectors.hpp"

#include <sstream>

#include "decomp/errors.hpp"

namespace decomp {

std::string family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::perversity: return "perversity";
    case FamilyKind::support: return "support";
    case FamilyKind::primitive: return "primitive";
    case FamilyKind::both: return "both";
  }
  return "perversity";
}

FamilyKind family_from_name(const std::string& name) {
  if (name == "perversity") return FamilyKind::perversity;
  if (name == "support") return FamilyKind::support;
  if (name == "primitive") return FamilyKind::primitive;
  if (name == "both") return FamilyKind::both;
  throw SchemaError("unknown projector family: '" + name + "'");
}

std::string BlockKey::to_string(FamilyKind kind) const {
  std::ostringstream out;
  switch (kind) {
    case FamilyKind::perversity: out << "b=" << b; break;
    case FamilyKind::support: out << "b=" << b << ",support=" << label; break;
    case FamilyKind::primitive: out << "i=" << i << ",j=" << j; break;
    case FamilyKind::both: out << "i=" << i << ",j=" << j << ",support=" << label; break;
  }
  return out.str();
}

namespace {

// Subspace of the full graded coordinates spanned by one level's summand
// given in block coordinates.
Subspace embed_block(const GradedModel& model, int degree, int b, const Subspace& in_block) {
  const auto& blk = model.block(degree, b);
  Matrix rows(in_block.dim(), model.total_dim(degree));
  for (std::size_t r = 0; r < in_block.dim(); ++r) {
    for (std::size_t c = 0; c < blk.dim; ++c) rows.at(r, blk.offset + c) = in_block.basis().at(r, c);
  }
  return Subspace::row_span(rows);
}

void certify_direct_sum(const std::map<BlockKey, Subspace>& summands, std::size_t dim,
                        const std::string& context) {
  std::size_t total = 0;
  Matrix stacked(0, dim);
  for (const auto& [key, space] : summands) {
    total += space.dim();
    stacked = vstack(stacked, space.basis());
  }
  if (total != dim || rank(stacked) != dim) {
    throw DataError("family is not a direct sum: " + context);
  }
}

}  // namespace

FourDecompositions four_decompositions(const HLTriple& t, const PrimitiveDecomposition& prim,
                                       const SupportDecomposition* supports, bool compact_side,
                                       const std::string& dense_label) {
  const FilteredGradedSpace& sp = t.space();
  const GradedModel& model = t.model();
  FourDecompositions out;
  auto& by_perversity = out.families[FamilyKind::perversity];
  auto& by_support = out.families[FamilyKind::support];
  auto& by_primitive = out.families[FamilyKind::primitive];
  auto& by_both = out.families[FamilyKind::both];

  for (int m : sp.degrees()) {
    const std::size_t n = sp.dim(m);
    auto& perv = by_perversity[m];
    auto& supp = by_support[m];
    auto& primf = by_primitive[m];
    auto& both = by_both[m];
    for (int b = sp.b_min(); b <= sp.b_max(); ++b) {
      BlockKey pk;
      pk.b = b;
      perv[pk] = model.block_span(m, b);
      if (supports != nullptr) {
        const auto& side = compact_side ? supports->compact : supports->ordinary;
        auto it = side.find({b, m});
        if (it == side.end()) throw DataError("support decomposition missing a graded piece");
        for (const auto& [label, space] : it->second) {
          BlockKey sk;
          sk.b = b;
          sk.label = label;
          supp[sk] = embed_block(model, m, b, space);
        }
      } else {
        BlockKey sk;
        sk.b = b;
        sk.label = dense_label;
        supp[sk] = model.block_span(m, b);
      }
    }
    for (const auto& [ij, per_degree] : prim.iterate_basis) {
      const auto [i, j] = ij;
      BlockKey key;
      key.i = i;
      key.j = j;
      key.b = -i + 2 * j;
      auto it = per_degree.find(m);
      Subspace piece = (it == per_degree.end())
                           ? Subspace::zero(model.block_dim(m, key.b))
                           : Subspace::row_span(it->second);
      primf[key] = embed_block(model, m, key.b, piece);
      for (const auto& [sk, ssp] : supp) {
        if (sk.b != key.b) continue;
        BlockKey bk;
        bk.i = i;
        bk.j = j;
        bk.b = key.b;
        bk.label = sk.label;
        both[bk] = intersect(primf[key], ssp);
      }
    }
    certify_direct_sum(perv, n, "perversity, degree " + std::to_string(m));
    certify_direct_sum(supp, n, "support, degree " + std::to_string(m));
    certify_direct_sum(primf, n, "primitive, degree " + std::to_string(m));
    certify_direct_sum(both, n, "both, degree " + std::to_string(m));
  }
  return out;
}

Matrix ProjectorFamily::block(const BlockKey& key, int degree) const {
  auto it = projectors.find(key);
  if (it != projectors.end()) {
    auto kt = it->second.find(degree);
    if (kt != it->second.end()) return kt->second;
  }
  auto dt = degree_dims.find(degree);
  const std::size_t n = dt == degree_dims.end() ? 0 : dt->second;
  return Matrix(n, n);
}

ProjectorFamily build_projectors(const CanonicalSplitting& split, const FourDecompositions& decomps,
                                 FamilyKind kind) {
  ProjectorFamily family;
  family.kind = kind;
  const auto& per_degree = decomps.family(kind);
  // Collect the full key set across degrees so every projector exists in
  // every degree (as zero where its summand vanishes).
  std::vector<BlockKey> keys;
  for (const auto& [m, summands] : per_degree) {
    family.degree_dims[m] = split.phi.count(m) ? split.phi.at(m).rows() : 0;
    for (const auto& [key, space] : summands) {
      if (keys.empty() || !(keys.back() == key)) keys.push_back(key);
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  for (const auto& [m, summands] : per_degree) {
    const std::size_t n = family.degree_dims.at(m);
    // Basis of the graded coordinates adapted to the decomposition.
    Matrix columns(n, n);
    std::vector<std::pair<BlockKey, std::pair<std::size_t, std::size_t>>> spans;
    std::size_t col = 0;
    for (const auto& [key, space] : summands) {
      const std::size_t start = col;
      for (std::size_t r = 0; r < space.dim(); ++r, ++col) {
        for (std::size_t q = 0; q < n; ++q) columns.at(q, col) = space.basis().at(r, q);
      }
      spans.push_back({key, {start, col}});
    }
    if (col != n) throw DataError("projector basis does not fill degree " + std::to_string(m));
    Inverse inv = inverse(columns);
    if (!inv.ok) throw DataError("projector basis is degenerate in degree " + std::to_string(m));
    const Matrix& phi = split.phi.at(m);
    const Matrix& phi_inv = split.phi_inv.at(m);
    for (const auto& [key, range] : spans) {
      // Projection onto the summand along the others, conjugated to the
      // ambient space through the splitting.
      Matrix selected(n, n);
      for (std::size_t c = range.first; c < range.second; ++c) {
        for (std::size_t q = 0; q < n; ++q) selected.at(q, c) = columns.at(q, c);
      }
      Matrix graded_proj = selected * inv.mat;
      family.projectors[key][m] = phi * (graded_proj * phi_inv);
    }
    for (const BlockKey& key : keys) {
      if (!family.projectors[key].count(m)) family.projectors[key][m] = Matrix(n, n);
    }
  }
  return family;
}

SystemReport verify_projector_system(const ProjectorFamily& family) {
  SystemReport report;
  for (const auto& [m, n] : family.degree_dims) {
    Matrix total(n, n);
    for (const auto& [key, blocks] : family.projectors) {
      const Matrix p = family.block(key, m);
      if (!(p * p == p)) {
        report.violation = SystemViolation{"idempotent", key, key, m};
        return report;
      }
      for (const auto& [other, other_blocks] : family.projectors) {
        if (other == key) continue;
        const Matrix q = family.block(other, m);
        if (!(p * q).is_zero()) {
          report.violation = SystemViolation{"orthogonal", key, other, m};
          return report;
        }
      }
      total = total + p;
    }
    if (!total.is_identity()) {
      report.violation = SystemViolation{"complete", BlockKey{}, BlockKey{}, m};
      return report;
    }
  }
  return report;
}

BlockKey canonical_refinement(FamilyKind fine, FamilyKind coarse, const BlockKey& key) {
  BlockKey out;
  switch (coarse) {
    case FamilyKind::perversity:
      out.b = (fine == FamilyKind::primitive || fine == FamilyKind::both) ? -key.i + 2 * key.j : key.b;
      break;
    case FamilyKind::support:
      out.b = -key.i + 2 * key.j;
      out.label = key.label;
      break;
    case FamilyKind::primitive:
      out.i = key.i;
      out.j = key.j;
      out.b = -key.i + 2 * key.j;
      break;
    case FamilyKind::both:
      out = key;
      break;
  }
  return out;
}

bool verify_refinement(const ProjectorFamily& fine, const ProjectorFamily& coarse,
                       const std::function<BlockKey(const BlockKey&)>& refinement) {
  for (const auto& [m, n] : coarse.degree_dims) {
    std::map<BlockKey, Matrix> sums;
    for (const auto& [key, blocks] : coarse.projectors) sums[key] = Matrix(n, n);
    for (const auto& [key, blocks] : fine.projectors) {
      const BlockKey target = refinement(key);
      auto it = sums.find(target);
      if (it == sums.end()) return false;
      it->second = it->second + fine.block(key, m);
    }
    for (const auto& [key, total] : sums) {
      if (!(total == coarse.block(key, m))) return false;
    }
  }
  return true;
}

bool verify_refinement(const ProjectorFamily& fine, const ProjectorFamily& coarse) {
  return verify_refinement(fine, coarse, [&](const BlockKey& key) {
    return canonical_refinement(fine.kind, coarse.kind, key);
  });
}

PreservationReport verify_filtration_preservation(
    const ProjectorFamily& family, const std::vector<const FilteredGradedSpace*>& filtrations) {
  PreservationReport report;
  for (const FilteredGradedSpace* f : filtrations) {
    for (const auto& [key, blocks] : family.projectors) {
      for (int k : f->degrees()) {
        const Matrix p = family.block(key, k);
        if (p.rows() != f->dim(k)) {
          throw DimensionError("projector/filtration degree mismatch at degree " + std::to_string(k));
        }
        for (int b = f->b_min(); b <= f->b_max(); ++b) {
          const Subspace& step = f->step(k, b);
          if (!step.contains(step.apply(p))) {
            report.violation = PreservationViolation{key, f->kind(), k, b};
            return report;
          }
        }
      }
    }
  }
  return report;
}

}  // namespace decomp
