#include "decomp/compose.hpp"

#include <algorithm>

#include "decomp/errors.hpp"

namespace decomp {

namespace {

void require_same_degrees(const FilteredGradedSpace& g, const FilteredGradedSpace& h) {
  if (g.degree_dims() != h.degree_dims()) {
    throw DimensionError("filtrations live on different graded spaces");
  }
}

// Image of an ambient subspace under a coordinates map (rows functionals).
Subspace push(const Matrix& proj, const Subspace& s) {
  return Subspace::row_span(s.basis() * proj.transpose());
}

}  // namespace

FilteredGradedSpace induced_filtration_on_graded(const FilteredGradedSpace& g,
                                                 const FilteredGradedSpace& h, int a) {
  require_same_degrees(g, h);
  GradedModel model(g);
  std::map<int, std::size_t> dims;
  std::map<int, std::vector<Subspace>> steps;
  for (int k : g.degrees()) {
    const auto& blk = model.block(k, a);
    dims[k] = blk.dim;
    std::vector<Subspace> row;
    for (int c = h.b_min(); c <= h.b_max(); ++c) {
      row.push_back(push(blk.proj, intersect(h.step(k, c), g.step(k, a))));
    }
    steps[k] = std::move(row);
  }
  return FilteredGradedSpace(h.kind(), h.twist(), h.b_min(), h.b_max(), std::move(dims),
                             std::move(steps));
}

std::optional<InducedMismatch> check_declared_induced(const FilteredGradedSpace& g,
                                                      const FilteredGradedSpace& h, int a,
                                                      const FilteredGradedSpace& declared) {
  const FilteredGradedSpace induced = induced_filtration_on_graded(g, h, a);
  if (declared.degree_dims() != induced.degree_dims()) {
    throw DimensionError("declared filtration has wrong graded dimensions");
  }
  const int lo = std::min(induced.b_min(), a + declared.b_min()) - 1;
  const int hi = std::max(induced.b_max(), a + declared.b_max());
  for (int k : induced.degrees()) {
    for (int c = lo; c <= hi; ++c) {
      if (!(induced.step(k, c) == declared.step(k, c - a))) {
        return InducedMismatch{k, c};
      }
    }
  }
  return std::nullopt;
}

namespace {

const std::map<std::string, std::map<int, Subspace>>* find_steps(const SupportSteps& steps, int c) {
  auto it = steps.find(c);
  return it == steps.end() ? nullptr : &it->second;
}

Subspace step_of(const std::map<int, Subspace>& per_degree, int k, std::size_t ambient) {
  auto it = per_degree.find(k);
  return it == per_degree.end() ? Subspace::zero(ambient) : it->second;
}

}  // namespace

SupportBlockTable support_block_dims(const FilteredGradedSpace& g, const FilteredGradedSpace& h,
                                     int a, const SupportSteps& g_steps, const SupportSteps& h_steps) {
  require_same_degrees(g, h);
  SupportBlockTable table;
  for (int k : g.degrees()) {
    table.graded_dims[k] = g.step(k, a).dim() - g.step(k, a - 1).dim();
  }
  const auto* g_at_a = find_steps(g_steps, a);
  if (g_at_a == nullptr) throw DataError("missing support steps at the graded level");
  for (const auto& [x_label, x_steps] : *g_at_a) {
    for (int k : g.degrees()) {
      const Subspace d = step_of(x_steps, k, g.dim(k));
      if (!g.step(k, a).contains(d) || !d.contains(g.step(k, a - 1))) {
        throw DataError("support step " + x_label + " is not nested in the filtration");
      }
    }
    for (int c = h.b_min(); c <= h.b_max(); ++c) {
      const auto* h_at_c = find_steps(h_steps, c);
      if (h_at_c == nullptr) continue;
      for (const auto& [y_label, y_steps] : *h_at_c) {
        for (int k : g.degrees()) {
          const Subspace d = step_of(x_steps, k, g.dim(k));
          const Subspace n = step_of(y_steps, k, g.dim(k));
          if (!h.step(k, c).contains(n) || !n.contains(h.step(k, c - 1))) {
            throw DataError("support step " + y_label + " is not nested in the filtration");
          }
          // Dimensions are taken inside Gr_{g,a}, so the part below level a
          // is removed from both terms.
          const Subspace& below = g.step(k, a - 1);
          const std::size_t upper = intersect(n, d).dim() - intersect(n, below).dim();
          const std::size_t lower =
              intersect(h.step(k, c - 1), d).dim() - intersect(h.step(k, c - 1), below).dim();
          table.dims[{c, y_label, x_label}][k] = upper - lower;
        }
      }
    }
  }
  for (int k : g.degrees()) {
    std::size_t total = 0;
    for (const auto& [key, per_degree] : table.dims) {
      auto it = per_degree.find(k);
      if (it != per_degree.end()) total += it->second;
    }
    if (total != table.graded_dims[k]) table.sums_match = false;
  }
  return table;
}

IntersectionData intersection_subquotient(const FilteredGradedSpace& g,
                                          const FilteredGradedSpace& h, int a,
                                          const std::map<int, Subspace>& support_step,
                                          const EtaBlocks& eta,
                                          const std::vector<const FilteredGradedSpace*>& extra) {
  require_same_degrees(g, h);
  IntersectionData out;
  for (int k : g.degrees()) {
    const Subspace d = step_of(support_step, k, g.dim(k));
    if (!g.step(k, a).contains(d) || !d.contains(g.step(k, a - 1))) {
      throw DataError("support step is not nested between the filtration steps");
    }
    Subquotient sq = subquotient(d, g.step(k, a - 1));
    out.degree_dims[k] = sq.dim;
    out.lift[k] = std::move(sq.lift);
    out.proj[k] = std::move(sq.proj);
  }
  // Induced h-filtration, reindexed so the piece is centered like a
  // perverse filtration on its own.
  std::map<int, std::vector<Subspace>> steps;
  for (int k : g.degrees()) {
    const Subspace d = step_of(support_step, k, g.dim(k));
    std::vector<Subspace> row;
    for (int c = h.b_min(); c <= h.b_max(); ++c) {
      row.push_back(push(out.proj.at(k), intersect(h.step(k, c), d)));
    }
    steps[k] = std::move(row);
  }
  out.induced = FilteredGradedSpace(FiltrationKind::perverse, h.twist(), h.b_min() - a,
                                    h.b_max() - a, out.degree_dims, std::move(steps));
  // eta must descend: it has to preserve every g-step and the chosen
  // support step (degree shift two).
  for (int k : g.degrees()) {
    const Matrix e = eta.block(k, g);
    for (int b = g.b_min(); b <= g.b_max(); ++b) {
      if (!g.step(k + 2, b).contains(g.step(k, b).apply(e))) {
        throw DataError("eta does not preserve the coarse filtration level");
      }
    }
    const Subspace d = step_of(support_step, k, g.dim(k));
    const Subspace d_next = step_of(support_step, k + 2, g.dim(k + 2));
    if (!d_next.contains(d.apply(e))) {
      throw DataError("eta does not preserve the support step");
    }
    out.eta.blocks[k] = out.proj.count(k + 2) ? out.proj.at(k + 2) * (e * out.lift.at(k).transpose())
                                              : Matrix(0, out.degree_dims.at(k));
  }
  for (const FilteredGradedSpace* f : extra) {
    if (f == nullptr) continue;
    std::map<int, std::vector<Subspace>> extra_steps;
    for (int k : g.degrees()) {
      const Subspace d = step_of(support_step, k, g.dim(k));
      std::vector<Subspace> row;
      for (int b = f->b_min(); b <= f->b_max(); ++b) {
        row.push_back(push(out.proj.at(k), intersect(f->step(k, b), d)));
      }
      extra_steps[k] = std::move(row);
    }
    out.extra.push_back(FilteredGradedSpace(f->kind(), f->twist(), f->b_min(), f->b_max(),
                                            out.degree_dims, std::move(extra_steps)));
  }
  return out;
}

namespace {

struct Context {
  std::vector<int> prefix;
  std::map<int, Subspace> numerator;    // per degree, ambient
  std::map<int, Subspace> denominator;  // per degree, ambient, inside numerator
  std::map<int, Subquotient> coords;
};

}  // namespace

ChainCheckResult multi_composition_check(const ChainData& data) {
  ChainCheckResult result;
  if (data.chain.size() < 2) throw DataError("composition chain needs at least two filtrations");
  for (std::size_t s = 1; s < data.chain.size(); ++s) {
    require_same_degrees(data.chain[0], data.chain[s]);
  }
  const FilteredGradedSpace& ambient = data.chain[0];

  Context root;
  for (int k : ambient.degrees()) {
    root.numerator[k] = Subspace::full(ambient.dim(k));
    root.denominator[k] = Subspace::zero(ambient.dim(k));
    root.coords[k] = subquotient(root.numerator[k], root.denominator[k]);
  }
  std::vector<Context> contexts{std::move(root)};

  for (std::size_t stage = 0; stage < data.chain.size(); ++stage) {
    const FilteredGradedSpace& f = data.chain[stage];
    std::vector<Context> next;
    for (const Context& ctx : contexts) {
      // The piece sits at this absolute level of the previous stage; the
      // declared filtration is indexed relative to that level.
      const int piece_level = ctx.prefix.empty() ? 0 : ctx.prefix.back();
      // Induced filtration of this stage on the context piece.
      std::map<int, std::size_t> dims;
      std::map<int, std::vector<Subspace>> steps;
      for (int k : ambient.degrees()) {
        dims[k] = ctx.coords.at(k).dim;
        std::vector<Subspace> row;
        for (int c = f.b_min(); c <= f.b_max(); ++c) {
          row.push_back(push(ctx.coords.at(k).proj,
                             sum(intersect(f.step(k, c), ctx.numerator.at(k)), ctx.denominator.at(k))));
        }
        steps[k] = std::move(row);
      }
      FilteredGradedSpace induced(f.kind(), f.twist(), f.b_min(), f.b_max(), dims, std::move(steps));
      // Declared filtration for this stage (indices relative to the piece).
      if (stage > 0) {
        auto it = data.declared.find(ctx.prefix);
        if (it != data.declared.end()) {
          const FilteredGradedSpace& declared = it->second;
          if (declared.degree_dims() != induced.degree_dims()) {
            result.ok = false;
            result.what = "declared filtration has wrong graded dimensions";
            result.prefix = ctx.prefix;
            return result;
          }
          const int lo = std::min(induced.b_min(), piece_level + declared.b_min()) - 1;
          const int hi = std::max(induced.b_max(), piece_level + declared.b_max());
          for (int k : ambient.degrees()) {
            for (int c = lo; c <= hi; ++c) {
              if (!(induced.step(k, c) == declared.step(k, c - piece_level))) {
                result.ok = false;
                result.what = "declared filtration differs from the induced one";
                result.prefix = ctx.prefix;
                result.degree = k;
                result.index = c;
                return result;
              }
            }
          }
        }
      }
      // Split the context along this stage's graded levels.
      for (int c = f.b_min(); c <= f.b_max(); ++c) {
        Context child;
        child.prefix = ctx.prefix;
        child.prefix.push_back(c);
        bool nonzero = false;
        for (int k : ambient.degrees()) {
          Subspace num = sum(intersect(f.step(k, c), ctx.numerator.at(k)), ctx.denominator.at(k));
          Subspace den = sum(intersect(f.step(k, c - 1), ctx.numerator.at(k)), ctx.denominator.at(k));
          nonzero = nonzero || num.dim() != den.dim();
          child.coords[k] = subquotient(num, den);
          child.numerator[k] = std::move(num);
          child.denominator[k] = std::move(den);
        }
        if (nonzero) next.push_back(std::move(child));
      }
    }
    contexts = std::move(next);
  }
  for (const Context& ctx : contexts) {
    for (int k : ambient.degrees()) {
      result.leaf_dims[ctx.prefix][k] = ctx.coords.at(k).dim;
    }
  }
  for (int k : ambient.degrees()) {
    std::size_t total = 0;
    for (const auto& [prefix, per_degree] : result.leaf_dims) {
      auto it = per_degree.find(k);
      if (it != per_degree.end()) total += it->second;
    }
    if (total != ambient.dim(k)) {
      result.ok = false;
      result.what = "iterated graded pieces do not fill the space";
      result.degree = k;
      return result;
    }
  }
  return result;
}

}  // namespace decomp
