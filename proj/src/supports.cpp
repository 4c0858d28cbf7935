#include "decomp/supports.hpp"

#include <set>
#include <sstream>

#include "decomp/errors.hpp"

namespace decomp {

namespace {

std::string block_name(int b, int j) {
  std::ostringstream out;
  out << "(b=" << b << ", degree=" << j << ")";
  return out.str();
}

}  // namespace

const Matrix* Stratum::find(int b, int j) const {
  auto it = restriction.find({b, j});
  return it == restriction.end() ? nullptr : &it->second;
}

const Matrix* Stratum::find_compact(int b, int j) const {
  auto it = restriction_compact.find({b, j});
  return it == restriction_compact.end() ? nullptr : &it->second;
}

const Matrix* SupportData::find_pairing(int b, int j) const {
  auto it = pairing.find({b, j});
  return it == pairing.end() ? nullptr : &it->second;
}

SupportScenario::SupportScenario(const HLTriple& ordinary, const HLTriple& compact, SupportData data)
    : ordinary_(ordinary), compact_(compact), data_(std::move(data)) {
  if (ordinary_.space().b_min() != compact_.space().b_min() ||
      ordinary_.space().b_max() != compact_.space().b_max()) {
    throw DimensionError("ordinary/compact filtration ranges differ");
  }
  std::set<std::string> labels{data_.dense_label};
  for (const Stratum& s : data_.strata) {
    if (!labels.insert(s.label).second) throw DataError("duplicate stratum label: " + s.label);
    if (s.dim > data_.ambient_dim) throw DataError("stratum exceeds ambient dimension: " + s.label);
  }
}

PairingReport SupportScenario::check_graded_pairing() const {
  PairingReport report;
  const int d2 = 2 * data_.ambient_dim;
  for (int b = ordinary_.space().b_min(); b <= ordinary_.space().b_max(); ++b) {
    for (int j : ordinary_.space().degrees()) {
      const std::size_t n = ordinary_.model().block_dim(j, b);
      const std::size_t n_twin = compact_.model().block_dim(d2 - j, -b);
      const Matrix* p = data_.find_pairing(b, j);
      if (n == 0 && n_twin == 0) continue;
      if (p == nullptr) {
        report.failures.push_back({b, j, "missing pairing block"});
        continue;
      }
      if (p->rows() != n || p->cols() != n_twin) {
        report.failures.push_back({b, j, "pairing block shape mismatch"});
        continue;
      }
      if (n != n_twin) {
        report.failures.push_back({b, j, "graded pieces have different dimensions"});
        continue;
      }
      Rational det = determinant(*p);
      if (sgn(det) == 0) report.failures.push_back({b, j, "pairing block is singular"});
    }
  }
  return report;
}

Subspace SupportScenario::kernel_cut(int b, int j, const std::string& skip_label,
                                     bool compact_side) const {
  const GradedModel& model = compact_side ? compact_.model() : ordinary_.model();
  Subspace cut = Subspace::full(model.block_dim(j, b));
  for (const Stratum& s : data_.strata) {
    if (s.label == skip_label) continue;
    const Matrix* m = compact_side ? s.find_compact(b, j) : s.find(b, j);
    if (m == nullptr) continue;  // zero restriction, no condition
    if (m->cols() != cut.ambient_dim()) {
      throw DimensionError("restriction for stratum " + s.label + " at " + block_name(b, j) +
                           " has wrong width");
    }
    cut = intersect(cut, Subspace::kernel(*m));
  }
  return cut;
}

SummandPair SupportScenario::dense_summand(int b) const {
  SummandPair out;
  for (int j : ordinary_.space().degrees()) out.ordinary[j] = kernel_cut(b, j, "", false);
  for (int j : compact_.space().degrees()) out.compact[j] = kernel_cut(b, j, "", true);
  return out;
}

SummandPair SupportScenario::nondense_summand(int b, const std::string& label) const {
  bool known = false;
  for (const Stratum& s : data_.strata) known = known || s.label == label;
  if (!known) throw DataError("unknown stratum label: " + label);
  const int d2 = 2 * data_.ambient_dim;
  const SummandPair dense_mirror = dense_summand(-b);
  SummandPair out;
  for (int j : ordinary_.space().degrees()) {
    Subspace cut = kernel_cut(b, j, label, false);
    // Orthogonality against the compact dense summand of the mirror block.
    auto twin = dense_mirror.compact.find(d2 - j);
    const std::size_t twin_dim = compact_.model().block_dim(d2 - j, -b);
    if (twin != dense_mirror.compact.end() && twin->second.dim() != 0 && twin_dim != 0) {
      const Matrix* p = data_.find_pairing(b, j);
      if (p == nullptr) throw DataError("missing pairing block at " + block_name(b, j));
      cut = intersect(cut, orthogonal_complement(twin->second, p->transpose()));
    }
    out.ordinary[j] = std::move(cut);
  }
  for (int j : compact_.space().degrees()) {
    Subspace cut = kernel_cut(b, j, label, true);
    auto twin = dense_mirror.ordinary.find(d2 - j);
    const std::size_t twin_dim = ordinary_.model().block_dim(d2 - j, -b);
    if (twin != dense_mirror.ordinary.end() && twin->second.dim() != 0 && twin_dim != 0) {
      const Matrix* p = data_.find_pairing(-b, d2 - j);
      if (p == nullptr) throw DataError("missing pairing block at " + block_name(-b, d2 - j));
      cut = intersect(cut, orthogonal_complement(twin->second, *p));
    }
    out.compact[j] = std::move(cut);
  }
  return out;
}

SupportDecomposition SupportScenario::assemble() const {
  SupportDecomposition out;
  const int d2 = 2 * data_.ambient_dim;
  std::map<int, SummandPair> by_level;
  for (int b = ordinary_.space().b_min(); b <= ordinary_.space().b_max(); ++b) {
    auto& dense = by_level[b];
    dense = dense_summand(b);
    for (int j : ordinary_.space().degrees()) {
      out.ordinary[{b, j}].push_back({data_.dense_label, dense.ordinary.at(j)});
    }
    for (int j : compact_.space().degrees()) {
      out.compact[{b, j}].push_back({data_.dense_label, dense.compact.at(j)});
    }
    for (const Stratum& s : data_.strata) {
      SummandPair part = nondense_summand(b, s.label);
      for (int j : ordinary_.space().degrees()) {
        out.ordinary[{b, j}].push_back({s.label, part.ordinary.at(j)});
      }
      for (int j : compact_.space().degrees()) {
        out.compact[{b, j}].push_back({s.label, part.compact.at(j)});
      }
    }
  }
  // Direct-sum certification on both sides.
  auto certify = [](const GradedModel& model,
                    const std::map<std::pair<int, int>, std::vector<std::pair<std::string, Subspace>>>& side) {
    for (const auto& [key, summands] : side) {
      const std::size_t dim = model.block_dim(key.second, key.first);
      std::size_t total = 0;
      Matrix stacked(0, dim);
      for (const auto& [label, space] : summands) {
        total += space.dim();
        stacked = vstack(stacked, space.basis());
      }
      if (total != dim || rank(stacked) != dim) {
        throw DataError("support summands do not decompose the graded piece at " +
                        block_name(key.first, key.second));
      }
    }
  };
  certify(ordinary_.model(), out.ordinary);
  certify(compact_.model(), out.compact);
  // Distinct labels must pair to zero.
  for (const auto& [key, summands] : out.ordinary) {
    const auto [b, j] = key;
    auto twin = out.compact.find({-b, d2 - j});
    if (twin == out.compact.end()) continue;
    const Matrix* p = data_.find_pairing(b, j);
    for (const auto& [label, space] : summands) {
      if (space.dim() == 0) continue;
      for (const auto& [twin_label, twin_space] : twin->second) {
        if (twin_label == label || twin_space.dim() == 0) continue;
        if (p == nullptr) throw DataError("missing pairing block at " + block_name(b, j));
        if (!(space.basis() * (*p * twin_space.basis().transpose())).is_zero()) {
          throw DataError("summands " + label + " and " + twin_label +
                          " are not orthogonal at " + block_name(b, j));
        }
      }
    }
  }
  return out;
}

}  // namespace decomp
