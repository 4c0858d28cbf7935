#include "decomp/hl.hpp"

#include <algorithm>

#include "decomp/errors.hpp"

namespace decomp {

namespace {

// Matrix whose kernel is exactly s (rows span the annihilator).
Matrix annihilator(const Subspace& s) {
  return Subspace::kernel(s.basis()).basis();
}

}  // namespace

Matrix EtaBlocks::block(int k, const FilteredGradedSpace& space) const {
  auto it = blocks.find(k);
  if (it != blocks.end()) return it->second;
  return Matrix(space.dim(k + 2), space.dim(k));
}

HLTriple::HLTriple(FilteredGradedSpace space, EtaBlocks eta)
    : space_(std::move(space)), eta_(std::move(eta)), model_(space_) {
  for (const auto& [k, m] : eta_.blocks) {
    if (m.cols() != space_.dim(k) || m.rows() != space_.dim(k + 2)) {
      throw DimensionError("eta block shape mismatch in degree " + std::to_string(k));
    }
  }
}

Matrix HLTriple::graded_eta(int k, int b) const {
  const std::size_t src = model_.block_dim(k, b);
  const std::size_t tgt = model_.block_dim(k + 2, b + 2);
  if (src == 0 || tgt == 0) return Matrix(tgt, src);
  const Matrix e = eta_.block(k, space_);
  return model_.block(k + 2, b + 2).proj * (e * model_.block(k, b).lift.transpose());
}

Matrix HLTriple::graded_eta_power(int k, int b, int i) const {
  Matrix m = Matrix::identity(model_.block(k, b).dim);
  for (int step = 0; step < i; ++step) {
    m = graded_eta(k + 2 * step, b + 2 * step) * m;
  }
  return m;
}

HLReport verify_hl(const HLTriple& t) {
  HLReport report;
  const FilteredGradedSpace& sp = t.space();
  // An eta that moves the filtration more than two steps is a malformed
  // triple, not a hard Lefschetz failure.
  for (int k : sp.degrees()) {
    const Matrix e = t.eta().block(k, sp);
    for (int b = sp.b_min(); b <= sp.b_max(); ++b) {
      if (!sp.step(k + 2, b + 2).contains(sp.step(k, b).apply(e))) {
        report.status = HLStatus::shift_violation;
        report.witness = HLWitness{k, b};
        return report;
      }
    }
  }
  const int reach = std::max({-sp.b_min(), sp.b_max(), 0});
  for (int i = 0; i <= reach; ++i) {
    for (int k : sp.degrees()) {
      const std::size_t src = t.model().block_dim(k, -i);
      const std::size_t tgt = t.model().block_dim(k + 2 * i, i);
      if (src == 0 && tgt == 0) continue;
      const Matrix power = t.graded_eta_power(k, -i, i);
      if (src != tgt) {
        report.status = HLStatus::hl_failure;
        report.witness = HLWitness{k, -i};
        return report;
      }
      Rational det = determinant(power);
      if (sgn(det) == 0) {
        report.status = HLStatus::hl_failure;
        report.witness = HLWitness{k, -i};
        return report;
      }
      report.certificate.push_back({i, k, power, det});
    }
  }
  return report;
}

PrimitiveDecomposition primitive_parts(const HLTriple& t) {
  HLReport hl = verify_hl(t);
  if (!hl.ok()) {
    throw DataError(hl.status == HLStatus::shift_violation
                        ? "primitive parts: eta violates the filtration shift"
                        : "primitive parts: hard Lefschetz fails");
  }
  const FilteredGradedSpace& sp = t.space();
  const int reach = std::max({-sp.b_min(), sp.b_max(), 0});
  PrimitiveDecomposition out;
  for (int i = 0; i <= reach; ++i) {
    for (int k : sp.degrees()) {
      // P_{-i} = Ker(eta^{i+1} : Gr_{-i} -> Gr_{i+2}); the power i
      // iterate is invertible, the next one cuts out the primitives.
      out.primitive[i][k] = Subspace::kernel(t.graded_eta_power(k, -i, i + 1));
    }
  }
  for (int i = 0; i <= reach; ++i) {
    for (int j = 0; j <= i; ++j) {
      for (const auto& [k, prim] : out.primitive[i]) {
        const int m = k + 2 * j;
        Matrix rows = prim.basis() * t.graded_eta_power(k, -i, j).transpose();
        out.iterate_basis[{i, j}][m] = std::move(rows);
      }
    }
  }
  // Certify the Lefschetz decomposition of every graded piece.
  for (int k : sp.degrees()) {
    for (int b = sp.b_min(); b <= sp.b_max(); ++b) {
      const std::size_t dim = t.model().block_dim(k, b);
      Matrix stacked(0, dim);
      for (int i = std::abs(b); i <= reach; i += 2) {
        const int j = (b + i) / 2;
        auto it = out.iterate_basis.find({i, j});
        if (it == out.iterate_basis.end()) continue;
        auto kt = it->second.find(k);
        if (kt == it->second.end() || kt->second.rows() == 0) continue;
        stacked = vstack(stacked, kt->second);
      }
      if (stacked.rows() != dim || rank(stacked) != dim) {
        throw DataError("primitive parts: iterates do not decompose a graded piece");
      }
    }
  }
  return out;
}

UniqueLift unique_lift(const HLTriple& t, int i) {
  return unique_lift(t, primitive_parts(t), i);
}

UniqueLift unique_lift(const HLTriple& t, const PrimitiveDecomposition& prim, int i) {
  const FilteredGradedSpace& sp = t.space();
  UniqueLift out;
  out.i = i;
  auto prim_i = prim.primitive.find(i);
  for (int k : sp.degrees()) {
    const Matrix source_basis = sp.step(k, -i).basis();  // rows span F_{-i} H^k
    const std::size_t unknowns = source_basis.rows();
    if (unknowns == 0) {
      out.lift[k] = Matrix(sp.dim(k), 0);
      out.solution_dim[k] = 0;
      continue;
    }
    // Lift condition: the graded class at level -i is prescribed.
    Matrix lhs = t.model().block(k, -i).proj * source_basis.transpose();
    // Vanishing conditions: eta^s applied to the lift lies in F_{s-1}.
    Matrix iterate = Matrix::identity(sp.dim(k));
    for (int s = 1; s <= sp.b_max(); ++s) {
      iterate = t.eta().block(k + 2 * (s - 1), sp) * iterate;
      if (s <= i) continue;
      const Matrix ann = annihilator(sp.step(k + 2 * s, s - 1));
      if (ann.rows() == 0) continue;
      lhs = vstack(lhs, ann * (iterate * source_basis.transpose()));
    }
    const std::size_t prim_dim =
        (prim_i != prim.primitive.end() && prim_i->second.count(k)) ? prim_i->second.at(k).dim() : 0;
    Matrix rhs(lhs.rows(), prim_dim);
    if (prim_dim != 0) {
      const Matrix p = prim_i->second.at(k).basis().transpose();
      for (std::size_t r = 0; r < p.rows(); ++r)
        for (std::size_t c = 0; c < p.cols(); ++c) rhs.at(r, c) = p.at(r, c);
    }
    LinearSolve sol = solve(lhs, rhs);
    if (!sol.consistent) throw DataError("unique lift: no solution (hard Lefschetz data inconsistent)");
    out.solution_dim[k] = sol.kernel_basis.rows();
    out.lift[k] = source_basis.transpose() * sol.particular;
  }
  return out;
}

bool UniqueLift::unique() const {
  return std::all_of(solution_dim.begin(), solution_dim.end(),
                     [](const auto& kv) { return kv.second == 0; });
}

CanonicalSplitting canonical_splitting(const HLTriple& t) {
  return canonical_splitting(t, primitive_parts(t));
}

CanonicalSplitting canonical_splitting(const HLTriple& t, const PrimitiveDecomposition& prim) {
  const FilteredGradedSpace& sp = t.space();
  const int reach = std::max({-sp.b_min(), sp.b_max(), 0});
  CanonicalSplitting out;
  for (int i = 0; i <= reach; ++i) out.lifts[i] = unique_lift(t, prim, i);
  for (int m : sp.degrees()) {
    const std::size_t n = sp.dim(m);
    Matrix adapted(n, n);   // columns: graded coordinates of the Lefschetz basis
    Matrix values(n, n);    // columns: ambient phi-images of that basis
    std::size_t col = 0;
    for (int b = sp.b_min(); b <= sp.b_max(); ++b) {
      const auto& blk = t.model().block(m, b);
      for (int i = std::abs(b); i <= reach; i += 2) {
        const int j = (b + i) / 2;
        const int k = m - 2 * j;  // degree of the primitive source
        auto prim_i = prim.primitive.find(i);
        if (prim_i == prim.primitive.end() || !prim_i->second.count(k)) continue;
        const Subspace& p = prim_i->second.at(k);
        if (p.dim() == 0) continue;
        const Matrix graded_rows = prim.iterate_basis.at({i, j}).at(m);
        // Ambient iterate applied to the lifted primitive basis.
        Matrix ambient_cols = out.lifts.at(i).lift.at(k);
        for (int step = 0; step < j; ++step) {
          ambient_cols = t.eta().block(k + 2 * step, sp) * ambient_cols;
        }
        for (std::size_t r = 0; r < p.dim(); ++r, ++col) {
          for (std::size_t q = 0; q < blk.dim; ++q) adapted.at(blk.offset + q, col) = graded_rows.at(r, q);
          for (std::size_t q = 0; q < n; ++q) values.at(q, col) = ambient_cols.at(q, r);
        }
      }
    }
    if (col != n) throw DataError("canonical splitting: Lefschetz basis does not fill degree " + std::to_string(m));
    Inverse adapted_inv = inverse(adapted);
    if (!adapted_inv.ok) throw DataError("canonical splitting: Lefschetz basis is degenerate");
    Matrix phi = values * adapted_inv.mat;
    Inverse phi_inv = inverse(phi);
    if (!phi_inv.ok) throw DataError("canonical splitting: phi is singular");
    out.phi[m] = std::move(phi);
    out.phi_inv[m] = phi_inv.mat;
  }
  return out;
}

SplittingCheck verify_splitting(const HLTriple& t, const CanonicalSplitting& s) {
  SplittingCheck check;
  const FilteredGradedSpace& sp = t.space();
  for (int m : sp.degrees()) {
    const Matrix& phi = s.phi.at(m);
    if (!inverse(phi).ok) {
      check.invertible = false;
      check.degree = m;
      return check;
    }
    // phi must carry the direct-sum filtration onto the given one exactly,
    // and induce the identity on every graded piece.
    for (int b = sp.b_min(); b <= sp.b_max(); ++b) {
      const auto& blk = t.model().block(m, b);
      Matrix low(0, sp.dim(m));
      for (int c = sp.b_min(); c <= b; ++c) {
        const auto& cb = t.model().block(m, c);
        Matrix rows(cb.dim, sp.dim(m));
        for (std::size_t r = 0; r < cb.dim; ++r) rows.at(r, cb.offset + r) = 1;
        low = vstack(low, rows);
      }
      if (Subspace::row_span(low * phi.transpose()) != sp.step(m, b)) {
        check.filtered_both_ways = false;
        check.degree = m;
        check.b = b;
        return check;
      }
      const Matrix induced = blk.proj * (phi * t.model().block_embed(m, b));
      if (!induced.is_identity()) {
        check.graded_identity = false;
        check.degree = m;
        check.b = b;
        return check;
      }
    }
  }
  return check;
}

}  // namespace decomp
