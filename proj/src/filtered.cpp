#include "decomp/filtered.hpp"

#include <sstream>

#include "decomp/errors.hpp"

namespace decomp {

std::string kind_name(FiltrationKind kind) {
  switch (kind) {
    case FiltrationKind::plain: return "plain";
    case FiltrationKind::perverse: return "perverse";
    case FiltrationKind::weight: return "weight";
    case FiltrationKind::hodge: return "hodge";
    case FiltrationKind::flag: return "flag";
  }
  return "plain";
}

FiltrationKind kind_from_name(const std::string& name) {
  if (name == "plain") return FiltrationKind::plain;
  if (name == "perverse") return FiltrationKind::perverse;
  if (name == "weight") return FiltrationKind::weight;
  if (name == "hodge") return FiltrationKind::hodge;
  if (name == "flag") return FiltrationKind::flag;
  throw SchemaError("unknown filtration kind: '" + name + "'");
}

FilteredGradedSpace::FilteredGradedSpace(FiltrationKind kind, int twist, int b_min, int b_max,
                                         std::map<int, std::size_t> degree_dims,
                                         std::map<int, std::vector<Subspace>> steps)
    : kind_(kind), twist_(twist), b_min_(b_min), b_max_(b_max),
      degree_dims_(std::move(degree_dims)), steps_(std::move(steps)) {
  if (b_max_ < b_min_) throw DimensionError("filtration range is empty");
  const std::size_t len = static_cast<std::size_t>(b_max_ - b_min_ + 1);
  for (const auto& [k, dim] : degree_dims_) {
    auto it = steps_.find(k);
    if (it == steps_.end()) throw DimensionError("missing steps for degree " + std::to_string(k));
    if (it->second.size() != len) throw DimensionError("step count mismatch in degree " + std::to_string(k));
    for (const Subspace& s : it->second) {
      if (s.ambient_dim() != dim) throw DimensionError("step ambient mismatch in degree " + std::to_string(k));
    }
  }
  for (const auto& [k, v] : steps_) {
    if (!degree_dims_.count(k)) throw DimensionError("steps for undeclared degree " + std::to_string(k));
  }
}

FilteredGradedSpace FilteredGradedSpace::empty() {
  return FilteredGradedSpace(FiltrationKind::plain, 0, 0, 0, {}, {});
}

FilteredGradedSpace FilteredGradedSpace::one_step(FiltrationKind kind, int twist,
                                                  const std::map<int, std::size_t>& degree_dims) {
  std::map<int, std::vector<Subspace>> steps;
  for (const auto& [k, dim] : degree_dims) steps[k] = {Subspace::full(dim)};
  return FilteredGradedSpace(kind, twist, 0, 0, degree_dims, std::move(steps));
}

std::size_t FilteredGradedSpace::dim(int k) const {
  auto it = degree_dims_.find(k);
  return it == degree_dims_.end() ? 0 : it->second;
}

std::vector<int> FilteredGradedSpace::degrees() const {
  std::vector<int> out;
  for (const auto& [k, d] : degree_dims_) out.push_back(k);
  return out;
}

const Subspace& FilteredGradedSpace::step(int k, int b) const {
  // Degrees outside the support and indices outside the range clamp to
  // the zero or full subspace of the right ambient dimension.
  static thread_local std::map<std::pair<std::size_t, bool>, Subspace> cache;
  auto it = steps_.find(k);
  if (it == steps_.end() || b < b_min_ || b > b_max_) {
    const std::size_t n = dim(k);
    const bool full = (it != steps_.end()) && b > b_max_;
    auto key = std::make_pair(n, full);
    auto c = cache.find(key);
    if (c == cache.end()) {
      c = cache.emplace(key, full ? Subspace::full(n) : Subspace::zero(n)).first;
    }
    return c->second;
  }
  return it->second[static_cast<std::size_t>(b - b_min_)];
}

FilteredGradedSpace::ValidationReport FilteredGradedSpace::validate() const {
  ValidationReport report;
  for (const auto& [k, steps] : steps_) {
    for (std::size_t s = 0; s + 1 < steps.size(); ++s) {
      if (!steps[s + 1].contains(steps[s])) {
        report.violations.push_back({k, b_min_ + static_cast<int>(s) + 1, "step does not contain its predecessor"});
      }
    }
    if (!steps.empty() && !steps.back().is_full()) {
      report.violations.push_back({k, b_max_, "top step is not the full space"});
    }
  }
  return report;
}

std::string FilteredGradedSpace::ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << "degree " << v.degree << ", index " << v.b << ": " << v.what << "\n";
  }
  return out.str();
}

FilteredGradedSpace FilteredGradedSpace::renumbered(FiltrationKind new_kind,
                                                    const std::map<int, int>& offset_per_degree,
                                                    int default_offset, int new_b_min,
                                                    int new_b_max) const {
  std::map<int, std::vector<Subspace>> steps;
  for (const auto& [k, dim] : degree_dims_) {
    auto off_it = offset_per_degree.find(k);
    const int off = off_it == offset_per_degree.end() ? default_offset : off_it->second;
    std::vector<Subspace> row;
    for (int b = new_b_min; b <= new_b_max; ++b) row.push_back(step(k, b + off));
    steps[k] = std::move(row);
  }
  return FilteredGradedSpace(new_kind, twist_, new_b_min, new_b_max, degree_dims_, std::move(steps));
}

GradedModel::GradedModel(const FilteredGradedSpace& space)
    : b_min_(space.b_min()), b_max_(space.b_max()), degree_dims_(space.degree_dims()) {
  auto validation = space.validate();
  if (!validation.ok()) throw DataError("graded model of invalid filtration:\n" + validation.to_string());
  for (const auto& [k, n] : degree_dims_) {
    std::vector<Block> row;
    std::size_t offset = 0;
    for (int b = b_min_; b <= b_max_; ++b) {
      const Subspace& lo = space.step(k, b - 1);
      const Subspace& hi = space.step(k, b);
      Subquotient sq = subquotient(hi, lo);
      Block blk;
      blk.dim = sq.dim;
      blk.offset = offset;
      blk.lift = std::move(sq.lift);
      blk.proj = std::move(sq.proj);
      offset += blk.dim;
      row.push_back(std::move(blk));
    }
    if (offset != n) throw DataError("graded pieces do not fill degree " + std::to_string(k));
    blocks_[k] = std::move(row);
  }
}

const GradedModel::Block& GradedModel::block(int k, int b) const {
  static const Block empty_block;
  auto it = blocks_.find(k);
  if (it == blocks_.end() || b < b_min_ || b > b_max_) return empty_block;
  return it->second[static_cast<std::size_t>(b - b_min_)];
}

std::size_t GradedModel::total_dim(int k) const {
  auto it = degree_dims_.find(k);
  return it == degree_dims_.end() ? 0 : it->second;
}

Matrix GradedModel::block_embed(int k, int b) const {
  const Block& blk = block(k, b);
  Matrix m(total_dim(k), blk.dim);
  for (std::size_t i = 0; i < blk.dim; ++i) m.at(blk.offset + i, i) = 1;
  return m;
}

Matrix GradedModel::block_restrict(int k, int b) const {
  const Block& blk = block(k, b);
  Matrix m(blk.dim, total_dim(k));
  for (std::size_t i = 0; i < blk.dim; ++i) m.at(i, blk.offset + i) = 1;
  return m;
}

Subspace GradedModel::block_span(int k, int b) const {
  return Subspace::image(block_embed(k, b));
}

FilteredMap::FilteredMap(FilteredGradedSpace source, FilteredGradedSpace target, int degree_shift,
                         int filtration_shift, int twist_shift, std::map<int, Matrix> blocks)
    : source_(std::move(source)), target_(std::move(target)), degree_shift_(degree_shift),
      filtration_shift_(filtration_shift), twist_shift_(twist_shift), blocks_(std::move(blocks)) {
  for (const auto& [k, m] : blocks_) {
    if (m.cols() != source_.dim(k) || m.rows() != target_.dim(k + degree_shift_)) {
      throw DimensionError("map block shape mismatch in degree " + std::to_string(k));
    }
  }
}

Matrix FilteredMap::block(int k) const {
  auto it = blocks_.find(k);
  if (it != blocks_.end()) return it->second;
  return Matrix(target_.dim(k + degree_shift_), source_.dim(k));
}

std::optional<FilteredMap::ShiftViolation> FilteredMap::check_shift() const {
  for (int k : source_.degrees()) {
    const Matrix m = block(k);
    for (int b = source_.b_min(); b <= source_.b_max(); ++b) {
      const Subspace img = source_.step(k, b).apply(m);
      if (!target_.step(k + degree_shift_, b + filtration_shift_).contains(img)) {
        return ShiftViolation{k, b};
      }
    }
  }
  return std::nullopt;
}

FilteredMap::Strictness FilteredMap::strictness() const {
  Strictness out;
  for (int k : source_.degrees()) {
    const Matrix m = block(k);
    const Subspace full_image = Subspace::full(source_.dim(k)).apply(m);
    for (int b = source_.b_min() - 1; b <= source_.b_max(); ++b) {
      const Subspace pushed = source_.step(k, b).apply(m);
      const Subspace cut = intersect(full_image, target_.step(k + degree_shift_, b + filtration_shift_));
      if (pushed == cut) continue;
      out.strict = false;
      out.degree = k;
      out.b = b;
      for (std::size_t i = 0; i < cut.dim(); ++i) {
        if (!pushed.contains(cut.basis().row_vector(i))) {
          out.witness = cut.basis().row_vector(i);
          break;
        }
      }
      return out;
    }
  }
  return out;
}

std::pair<FilteredGradedSpace, FilteredGradedSpace> flag_filtration(
    const std::map<int, std::size_t>& ordinary_dims, const std::map<int, std::size_t>& compact_dims,
    const FlagRestrictionData& data) {
  if (data.restrictions.empty() || data.corestrictions.empty()) {
    throw DataError("flag data must declare at least one index on each side");
  }
  const int lo = data.restrictions.begin()->first;
  const int hi = data.restrictions.rbegin()->first;
  const int clo = data.corestrictions.begin()->first;
  const int chi = data.corestrictions.rbegin()->first;

  std::map<int, std::vector<Subspace>> ord_steps;
  for (const auto& [k, n] : ordinary_dims) {
    std::vector<Subspace> row;
    for (int j = lo; j <= hi; ++j) {
      auto jt = data.restrictions.find(j);
      const Matrix* m = nullptr;
      if (jt != data.restrictions.end()) {
        auto kt = jt->second.find(k);
        if (kt != jt->second.end()) m = &kt->second;
      }
      if (m == nullptr) {
        row.push_back(Subspace::full(n));
      } else {
        if (m->cols() != n) throw DimensionError("flag restriction shape mismatch");
        row.push_back(Subspace::kernel(*m));
      }
    }
    ord_steps[k] = std::move(row);
  }
  std::map<int, std::vector<Subspace>> cpt_steps;
  for (const auto& [k, n] : compact_dims) {
    std::vector<Subspace> row;
    for (int j = clo; j <= chi; ++j) {
      auto jt = data.corestrictions.find(j);
      const Matrix* m = nullptr;
      if (jt != data.corestrictions.end()) {
        auto kt = jt->second.find(k);
        if (kt != jt->second.end()) m = &kt->second;
      }
      if (m == nullptr) {
        row.push_back(Subspace::zero(n));
      } else {
        if (m->rows() != n) throw DimensionError("flag corestriction shape mismatch");
        row.push_back(Subspace::image(*m));
      }
    }
    cpt_steps[k] = std::move(row);
  }
  FilteredGradedSpace ordinary(FiltrationKind::flag, 0, lo, hi, ordinary_dims, std::move(ord_steps));
  FilteredGradedSpace compact(FiltrationKind::flag, 0, clo, chi, compact_dims, std::move(cpt_steps));
  auto vo = ordinary.validate();
  if (!vo.ok()) throw DataError("flag filtration is not nested/exhaustive:\n" + vo.to_string());
  auto vc = compact.validate();
  if (!vc.ok()) throw DataError("compact flag filtration is not nested/exhaustive:\n" + vc.to_string());
  return {std::move(ordinary), std::move(compact)};
}

}  // namespace decomp
