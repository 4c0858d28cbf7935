#include "decomp/generate.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>
#include <vector>

#include "decomp/compose.hpp"
#include "decomp/errors.hpp"

namespace decomp {

namespace {

// splitmix64: tiny, seedable, platform-independent.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  int pick(const std::vector<int>& v) { return v[static_cast<std::size_t>(range(0, static_cast<int>(v.size()) - 1))]; }
  std::string pick_label(const std::vector<std::string>& v) {
    return v[static_cast<std::size_t>(range(0, static_cast<int>(v.size()) - 1))];
  }
};

// One basis vector of the split model.  A string of weight w contributes
// slots pos = 0..w; a doubled string also spans h_pos = 0..h_weight.
struct Slot {
  int string_id = 0;
  int weight = 0;
  int pos = 0;
  int h_weight = 0;
  int h_pos = 0;
  int degree = 0;
  int level = 0;    // coarse (perverse) level
  int h_level = 0;  // absolute level of the second filtration
  int e_level = 0;  // absolute level of the third filtration
  int hodge = 0;
  std::string label;    // support label
  std::string h_label;  // second-filtration support label
};

struct Side {
  std::vector<Slot> slots;
  std::map<int, std::size_t> dims;
  std::map<int, std::vector<std::size_t>> by_degree;  // sorted slot ids
  std::map<std::size_t, std::size_t> pos_in_degree;
  std::map<std::tuple<int, int, int>, std::size_t> locate;  // (id, pos, h_pos)
};

Side build_side(std::vector<Slot> slots) {
  Side side;
  side.slots = std::move(slots);
  for (std::size_t s = 0; s < side.slots.size(); ++s) {
    side.by_degree[side.slots[s].degree].push_back(s);
  }
  for (auto& [k, ids] : side.by_degree) {
    std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
      const Slot& x = side.slots[a];
      const Slot& y = side.slots[b];
      return std::tie(x.level, x.h_level, x.string_id, x.pos, x.h_pos) <
             std::tie(y.level, y.h_level, y.string_id, y.pos, y.h_pos);
    });
    side.dims[k] = ids.size();
    for (std::size_t c = 0; c < ids.size(); ++c) side.pos_in_degree[ids[c]] = c;
  }
  for (std::size_t s = 0; s < side.slots.size(); ++s) {
    const Slot& sl = side.slots[s];
    side.locate[{sl.string_id, sl.pos, sl.h_pos}] = s;
  }
  return side;
}

using SlotPred = std::function<bool(const Slot&)>;

// Coordinate span of the slots satisfying the predicate, inside degree k.
Subspace slot_span(const Side& side, int k, const SlotPred& pred) {
  auto it = side.by_degree.find(k);
  const std::size_t n = it == side.by_degree.end() ? 0 : it->second.size();
  std::vector<std::size_t> cols;
  if (it != side.by_degree.end()) {
    for (std::size_t c = 0; c < it->second.size(); ++c) {
      if (pred(side.slots[it->second[c]])) cols.push_back(c);
    }
  }
  Matrix rows(cols.size(), n);
  for (std::size_t r = 0; r < cols.size(); ++r) rows.at(r, cols[r]) = 1;
  return Subspace::row_span(rows);
}

// Slot ids of one graded block, in canonical (degree-sorted) order.
std::vector<std::size_t> block_slots(const Side& side, int k, int b) {
  std::vector<std::size_t> out;
  auto it = side.by_degree.find(k);
  if (it == side.by_degree.end()) return out;
  for (std::size_t id : it->second) {
    if (side.slots[id].level == b) out.push_back(id);
  }
  return out;
}

// Per-degree change of presentation hiding the split basis.
struct Transport {
  std::map<int, Matrix> fwd;
  std::map<int, Matrix> inv;
};

Transport sample_transport(Rng& rng, const std::map<int, std::size_t>& dims) {
  Transport t;
  for (const auto& [k, n] : dims) {
    Matrix m = Matrix::identity(n);
    if (n == 1) {
      m.at(0, 0) = rng.pick({1, -1, 2});
    } else {
      const int ops = static_cast<int>(n) + 2;
      for (int o = 0; o < ops; ++o) {
        const std::size_t a = static_cast<std::size_t>(rng.range(0, static_cast<int>(n) - 1));
        std::size_t b = static_cast<std::size_t>(rng.range(0, static_cast<int>(n) - 2));
        if (b >= a) ++b;
        const int coeff = rng.pick({-2, -1, 1, 2});
        for (std::size_t c = 0; c < n; ++c) {
          Rational delta = coeff * m.at(a, c);
          m.at(b, c) = m.at(b, c) + delta;
        }
      }
    }
    Inverse inv_m = inverse(m);
    t.fwd[k] = std::move(m);
    t.inv[k] = std::move(inv_m.mat);
  }
  return t;
}

// Filtration by a per-slot level attribute, pushed through the transport.
FilteredGradedSpace make_space(const Side& side, const Transport& t, FiltrationKind kind, int twist,
                               int lo, int hi, const std::function<int(const Slot&)>& level_of) {
  std::map<int, std::vector<Subspace>> steps;
  for (const auto& [k, n] : side.dims) {
    (void)n;
    std::vector<Subspace> row;
    for (int b = lo; b <= hi; ++b) {
      Subspace span = slot_span(side, k, [&](const Slot& s) { return level_of(s) <= b; });
      row.push_back(span.apply(t.fwd.at(k)));
    }
    steps[k] = std::move(row);
  }
  return FilteredGradedSpace(kind, twist, lo, hi, side.dims, std::move(steps));
}

// The string operator (moving pos or h_pos by one), conjugated through
// the transport.  A dropped entry plants a hard Lefschetz failure.
std::map<int, Matrix> make_eta(const Side& side, const Transport& t, bool h_direction,
                               const std::set<std::pair<int, int>>& dropped) {
  std::map<int, Matrix> out;
  for (const auto& [k, ids] : side.by_degree) {
    auto next_it = side.by_degree.find(k + 2);
    const std::size_t rows = next_it == side.by_degree.end() ? 0 : next_it->second.size();
    Matrix m(rows, ids.size());
    bool nonzero = false;
    for (std::size_t c = 0; c < ids.size(); ++c) {
      const Slot& s = side.slots[ids[c]];
      if (h_direction ? (s.h_pos >= s.h_weight) : (s.pos >= s.weight)) continue;
      const int at = h_direction ? s.h_pos : s.pos;
      if (dropped.count({s.string_id, at}) != 0) continue;
      const int npos = s.pos + (h_direction ? 0 : 1);
      const int nh = s.h_pos + (h_direction ? 1 : 0);
      const std::size_t target = side.locate.at({s.string_id, npos, nh});
      m.at(side.pos_in_degree.at(target), c) = 1;
      nonzero = true;
    }
    if (!nonzero) continue;
    out[k] = t.fwd.at(k + 2) * (m * t.inv.at(k));
  }
  return out;
}

// Change of canonical block coordinates induced by the transport:
// split block coordinates -> block coordinates of the transported model.
std::map<std::pair<int, int>, Matrix> graded_changes(const Side& side,
                                                     const FilteredGradedSpace& space,
                                                     const Transport& t) {
  GradedModel model(space);
  std::map<std::pair<int, int>, Matrix> out;
  for (const auto& [k, ids] : side.by_degree) {
    for (int b = space.b_min(); b <= space.b_max(); ++b) {
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c < ids.size(); ++c) {
        if (side.slots[ids[c]].level == b) cols.push_back(c);
      }
      if (cols.empty()) continue;
      Matrix embed(ids.size(), cols.size());
      for (std::size_t q = 0; q < cols.size(); ++q) embed.at(cols[q], q) = 1;
      out[{b, k}] = model.block(k, b).proj * (t.fwd.at(k) * embed);
    }
  }
  return out;
}

// Diagonal operator scaling every string, conjugated through the transport.
std::map<int, Matrix> make_symmetry(const Side& side, const Transport& t,
                                    const std::map<int, Rational>& scalar_by_string) {
  std::map<int, Matrix> out;
  for (const auto& [k, ids] : side.by_degree) {
    Matrix m(ids.size(), ids.size());
    for (std::size_t c = 0; c < ids.size(); ++c) {
      m.at(c, c) = scalar_by_string.at(side.slots[ids[c]].string_id);
    }
    out[k] = t.fwd.at(k) * (m * t.inv.at(k));
  }
  return out;
}

// Flag data reproducing the given filtration at index b + offset.
FlagRestrictionData flag_from_steps(const FilteredGradedSpace& ordinary,
                                    const FilteredGradedSpace& compact, int off, int off_c) {
  FlagRestrictionData data;
  for (int j = ordinary.b_min() + off; j <= ordinary.b_max() + off; ++j) {
    auto& per_degree = data.restrictions[j];
    for (int k : ordinary.degrees()) {
      const Subspace& step = ordinary.step(k, j - off);
      if (step.is_full()) continue;
      const Matrix ann = orthogonal_complement(step, Matrix::identity(step.ambient_dim())).basis();
      per_degree[k] = ann;
    }
  }
  for (int j = compact.b_min() + off_c; j <= compact.b_max() + off_c; ++j) {
    auto& per_degree = data.corestrictions[j];
    for (int k : compact.degrees()) {
      const Subspace& step = compact.step(k, j - off_c);
      if (step.is_zero()) continue;
      per_degree[k] = step.basis().transpose();
    }
  }
  return data;
}

// Reindexes a filtration: new step b equals old step b + shift.
FilteredGradedSpace reindexed(const FilteredGradedSpace& f, int shift) {
  std::map<int, std::vector<Subspace>> steps;
  for (int k : f.degrees()) {
    std::vector<Subspace> row;
    for (int b = f.b_min() - shift; b <= f.b_max() - shift; ++b) row.push_back(f.step(k, b + shift));
    steps[k] = std::move(row);
  }
  return FilteredGradedSpace(f.kind(), f.twist(), f.b_min() - shift, f.b_max() - shift,
                             f.degree_dims(), std::move(steps));
}

struct ModelConfig {
  int weight_bound = 1;
  int ambient = 2;  // supports: dimension d, mirror degree 2d - k
  std::vector<std::string> strata;
  std::string dense = "U";
  std::vector<std::string> h_labels;
};

// Certificate counts from the slot table alone.
void fill_certificate_counts(PlantedCertificate& cert, const Side& ord, bool with_supports) {
  // Primitive classes sit at pos = 0, in their slot's own degree.
  for (const Slot& s : ord.slots) {
    if (s.pos == 0) cert.primitive_dims[s.weight][s.degree] += 1;
  }
  for (const Slot& s : ord.slots) {
    const std::string label = with_supports ? s.label : "full";
    BlockKey perv;
    perv.b = s.level;
    cert.family_dims[FamilyKind::perversity][s.degree][perv] += 1;
    BlockKey supp = perv;
    supp.label = label;
    cert.family_dims[FamilyKind::support][s.degree][supp] += 1;
    BlockKey prim;
    prim.b = s.level;
    prim.i = s.weight;
    prim.j = s.pos;
    cert.family_dims[FamilyKind::primitive][s.degree][prim] += 1;
    BlockKey both = prim;
    both.label = label;
    cert.family_dims[FamilyKind::both][s.degree][both] += 1;
  }
}

// Support data of one vertex: restrictions and pairing in the vertex's
// canonical block coordinates.
SupportData make_supports(const ModelConfig& cfg, const Side& ord, const Side& cpt,
                          const std::map<std::pair<int, int>, Matrix>& g_ord,
                          const std::map<std::pair<int, int>, Matrix>& g_cpt,
                          PlantedCertificate* cert) {
  SupportData data;
  data.ambient_dim = cfg.ambient;
  data.dense_label = cfg.dense;
  for (const std::string& z : cfg.strata) {
    Stratum s;
    s.label = z;
    s.dim = cfg.ambient - 1;
    data.strata.push_back(std::move(s));
  }
  const int d2 = 2 * cfg.ambient;
  auto inv_of = [](const Matrix& g) { return inverse(g).mat; };
  for (const auto& [key, g] : g_ord) {
    const auto [b, k] = key;
    const std::vector<std::size_t> rows = block_slots(ord, k, b);
    const std::vector<std::size_t> twin = block_slots(cpt, d2 - k, -b);
    const Matrix g_inv = inv_of(g);
    // Pairing: slot vs the mirrored slot of the same string.
    Matrix p(rows.size(), twin.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Slot& s = ord.slots[rows[r]];
      for (std::size_t c = 0; c < twin.size(); ++c) {
        const Slot& m = cpt.slots[twin[c]];
        if (m.string_id == s.string_id && m.pos == s.weight - s.pos) p.at(r, c) = 1;
      }
    }
    const Matrix gc_inv = inv_of(g_cpt.at({-b, d2 - k}));
    data.pairing[{b, k}] = g_inv.transpose() * (p * gc_inv);
    // Restrictions: project onto the coordinates of each stratum's slots.
    for (Stratum& stratum : data.strata) {
      std::vector<std::size_t> mine;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (ord.slots[rows[r]].label == stratum.label) mine.push_back(r);
      }
      if (!mine.empty()) {
        Matrix rmat(mine.size(), rows.size());
        for (std::size_t q = 0; q < mine.size(); ++q) rmat.at(q, mine[q]) = 1;
        stratum.restriction[{b, k}] = rmat * g_inv;
      }
    }
    if (cert != nullptr) {
      std::vector<std::string> labels{cfg.dense};
      labels.insert(labels.end(), cfg.strata.begin(), cfg.strata.end());
      for (const std::string& label : labels) {
        Matrix span(0, rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (ord.slots[rows[r]].label != label) continue;
          Matrix unit(1, rows.size());
          unit.at(0, r) = 1;
          span = vstack(span, unit);
        }
        cert->support_summands[{b, k}][label] = Subspace::row_span(span).apply(g);
      }
    }
  }
  for (const auto& [key, g] : g_cpt) {
    const auto [b, k] = key;
    const std::vector<std::size_t> rows = block_slots(cpt, k, b);
    const Matrix g_inv = inv_of(g);
    for (Stratum& stratum : data.strata) {
      std::vector<std::size_t> mine;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (cpt.slots[rows[r]].label == stratum.label) mine.push_back(r);
      }
      if (!mine.empty()) {
        Matrix rmat(mine.size(), rows.size());
        for (std::size_t q = 0; q < mine.size(); ++q) rmat.at(q, mine[q]) = 1;
        stratum.restriction_compact[{b, k}] = rmat * g_inv;
      }
    }
    if (cert != nullptr) {
      std::vector<std::string> labels{cfg.dense};
      labels.insert(labels.end(), cfg.strata.begin(), cfg.strata.end());
      for (const std::string& label : labels) {
        Matrix span(0, rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (cpt.slots[rows[r]].label != label) continue;
          Matrix unit(1, rows.size());
          unit.at(0, r) = 1;
          span = vstack(span, unit);
        }
        cert->support_summands_compact[{b, k}][label] = Subspace::row_span(span).apply(g);
      }
    }
  }
  return data;
}

// The comparison map from compact to ordinary support: identity on the
// strings whose degree span is symmetric, zero elsewhere.
std::map<int, Matrix> make_comap(const Side& ord, const Side& cpt, const Transport& t_ord,
                                 const Transport& t_cpt, const std::set<int>& middle_strings) {
  std::map<int, Matrix> out;
  for (const auto& [k, cpt_ids] : cpt.by_degree) {
    auto ord_it = ord.by_degree.find(k);
    if (ord_it == ord.by_degree.end()) continue;
    Matrix m(ord_it->second.size(), cpt_ids.size());
    bool nonzero = false;
    for (std::size_t c = 0; c < cpt_ids.size(); ++c) {
      const Slot& s = cpt.slots[cpt_ids[c]];
      if (middle_strings.count(s.string_id) == 0) continue;
      auto target = ord.locate.find({s.string_id, s.pos, s.h_pos});
      if (target == ord.locate.end()) continue;
      m.at(ord.pos_in_degree.at(target->second), c) = 1;
      nonzero = true;
    }
    if (!nonzero) continue;
    out[k] = t_ord.fwd.at(k) * (m * t_cpt.inv.at(k));
  }
  return out;
}

GeneratedFixture generate_simple(Rng& rng, const FixtureSpec& spec) {
  const bool with_supports = spec.profile != "hl-only";
  const bool diagram = spec.profile == "diagram";
  ModelConfig cfg;
  cfg.weight_bound = std::max(0, spec.max_weight);
  cfg.ambient = cfg.weight_bound + 1;
  if (with_supports) cfg.strata = {"Z1", "Z2"};
  const int w = cfg.weight_bound;
  const int d = cfg.ambient;

  struct Planted {
    int weight;
    int base;
    std::string label;
  };
  std::vector<Planted> strings;
  std::vector<std::string> labels{cfg.dense};
  labels.insert(labels.end(), cfg.strata.begin(), cfg.strata.end());
  strings.push_back({w, d - w, cfg.dense});  // symmetric string, carries the comap
  for (int i = 0; i <= w; ++i) {
    const int count = rng.range(1, std::max(1, spec.spread));
    for (int c = 0; c < count; ++c) {
      strings.push_back({i, rng.range(0, 2 * (d - i)), rng.pick_label(labels)});
    }
  }

  std::set<std::pair<int, int>> dropped;
  if (spec.corrupt && !diagram) {
    if (w < 1) throw SchemaError("corruption needs a string of positive weight");
    dropped.insert({0, rng.range(0, w - 1)});
  }

  std::vector<Slot> ord_slots;
  std::vector<Slot> cpt_slots;
  std::set<int> middle_strings;
  for (std::size_t id = 0; id < strings.size(); ++id) {
    const Planted& p = strings[id];
    if (p.base == d - p.weight) middle_strings.insert(static_cast<int>(id));
    for (int j = 0; j <= p.weight; ++j) {
      Slot s;
      s.string_id = static_cast<int>(id);
      s.weight = p.weight;
      s.pos = j;
      s.degree = p.base + 2 * j;
      s.level = -p.weight + 2 * j;
      s.hodge = rng.range(0, 1);
      s.label = p.label;
      ord_slots.push_back(s);
      if (with_supports) {
        Slot c = s;
        c.degree = (2 * d - p.base - 2 * p.weight) + 2 * j;
        c.hodge = 0;
        cpt_slots.push_back(c);
      }
    }
  }
  const Side ord = build_side(std::move(ord_slots));
  const Side cpt = build_side(std::move(cpt_slots));

  std::map<int, Rational> scalar_by_string;
  for (std::size_t id = 0; id < strings.size(); ++id) {
    scalar_by_string[static_cast<int>(id)] = rng.pick({1, 2, 3, -1});
  }
  const int flag_off = rng.range(-1, 1);
  const int flag_off_c = rng.range(-1, 1);

  // A corrupted comparison is certain to surface only when a second path
  // between its endpoints exists, so corrupted diagrams get a triangle.
  const int vertices = diagram ? (spec.corrupt ? rng.range(3, 4) : rng.range(2, 4)) : 1;
  std::vector<Transport> t_ord;
  std::vector<Transport> t_cpt;
  for (int v = 0; v < vertices; ++v) {
    t_ord.push_back(sample_transport(rng, ord.dims));
    if (with_supports) t_cpt.push_back(sample_transport(rng, cpt.dims));
  }

  GeneratedFixture out;
  fill_certificate_counts(out.certificate, ord, with_supports);

  int degree_lo = 0;
  int degree_hi = 0;
  if (!ord.dims.empty()) {
    degree_lo = ord.dims.begin()->first;
    degree_hi = ord.dims.rbegin()->first;
  }

  for (int v = 0; v < vertices; ++v) {
    Realization r;
    r.label = "V" + std::to_string(v);
    r.space = make_space(ord, t_ord[v], FiltrationKind::perverse, 0, -w, w,
                         [](const Slot& s) { return s.level; });
    r.eta.blocks = make_eta(ord, t_ord[v], false, dropped);
    r.hodge = make_space(ord, t_ord[v], FiltrationKind::hodge, 0, 0, 1,
                         [](const Slot& s) { return s.hodge; });
    r.weight = make_space(ord, t_ord[v], FiltrationKind::weight, 0, degree_lo, degree_hi,
                          [](const Slot& s) { return s.degree; });
    Symmetry gamma;
    gamma.label = "gamma";
    gamma.blocks = make_symmetry(ord, t_ord[v], scalar_by_string);
    r.symmetries.push_back(std::move(gamma));
    if (with_supports) {
      r.compact_space = make_space(cpt, t_cpt[v], FiltrationKind::perverse, 0, -w, w,
                                   [](const Slot& s) { return s.level; });
      EtaBlocks compact_eta;
      compact_eta.blocks = make_eta(cpt, t_cpt[v], false, {});
      r.compact_eta = std::move(compact_eta);
      const auto g_ord = graded_changes(ord, r.space, t_ord[v]);
      const auto g_cpt = graded_changes(cpt, *r.compact_space, t_cpt[v]);
      r.supports = make_supports(cfg, ord, cpt, g_ord, g_cpt,
                                 v == 0 ? &out.certificate : nullptr);
      r.comap = make_comap(ord, cpt, t_ord[v], t_cpt[v], middle_strings);
      FlagData flag;
      flag.restrictions = flag_from_steps(r.space, *r.compact_space, flag_off, flag_off_c);
      flag.default_offset = flag_off;
      flag.default_offset_compact = flag_off_c;
      flag.offsets[degree_lo] = flag_off;  // one explicit entry, rest default
      r.flag = std::move(flag);
    }
    out.scenario.star.realizations.push_back(std::move(r));
  }

  for (int v = 1; v < vertices; ++v) {
    Comparison c;
    c.source = "V" + std::to_string(v - 1);
    c.target = "V" + std::to_string(v);
    for (const auto& [k, n] : ord.dims) {
      (void)n;
      c.blocks[k] = t_ord[v].fwd.at(k) * t_ord[v - 1].inv.at(k);
    }
    if (with_supports) {
      for (const auto& [k, n] : cpt.dims) {
        (void)n;
        c.blocks_compact[k] = t_cpt[v].fwd.at(k) * t_cpt[v - 1].inv.at(k);
      }
    }
    out.scenario.star.comparisons.push_back(std::move(c));
  }
  if (vertices >= 3) {
    Comparison c;
    c.source = "V0";
    c.target = "V2";
    for (const auto& [k, n] : ord.dims) {
      (void)n;
      c.blocks[k] = t_ord[2].fwd.at(k) * t_ord[0].inv.at(k);
    }
    if (with_supports) {
      for (const auto& [k, n] : cpt.dims) {
        (void)n;
        c.blocks_compact[k] = t_cpt[2].fwd.at(k) * t_cpt[0].inv.at(k);
      }
    }
    out.scenario.star.comparisons.push_back(std::move(c));
  }
  out.scenario.star.rational_vertex = "V0";

  if (spec.corrupt && diagram) {
    if (out.scenario.star.comparisons.empty()) throw SchemaError("no comparison to corrupt");
    auto& blocks = out.scenario.star.comparisons.front().blocks;
    auto& m = blocks.begin()->second;
    const std::size_t i = static_cast<std::size_t>(rng.range(0, static_cast<int>(m.rows()) - 1));
    const std::size_t j = static_cast<std::size_t>(rng.range(0, static_cast<int>(m.cols()) - 1));
    m.at(i, j) = m.at(i, j) + 1;
  }
  return out;
}

GeneratedFixture generate_composition(Rng& rng, const FixtureSpec& spec) {
  const int w = std::max(1, spec.max_weight);
  ModelConfig cfg;
  cfg.weight_bound = w;
  cfg.strata = {"Z1"};
  cfg.h_labels = {"Y0", "Y1"};
  std::vector<std::string> x_labels{cfg.dense};
  x_labels.insert(x_labels.end(), cfg.strata.begin(), cfg.strata.end());

  struct Planted {
    int weight;
    int h_weight;
    int base;
    std::string label;
    std::string h_label;
  };
  std::vector<Planted> strings;
  // The dense piece at coarse level zero must carry a nontrivial second
  // filtration: it feeds the intersection subquotient.
  strings.push_back({0, rng.range(1, w), 0, cfg.dense, rng.pick_label(cfg.h_labels)});
  // A full-weight string keeps the coarse operator nontrivial.
  strings.push_back({w, rng.range(0, w), 2 * rng.range(0, 1), rng.pick_label(x_labels),
                     rng.pick_label(cfg.h_labels)});
  const int extra = std::max(1, spec.spread);
  for (int c = 0; c < extra; ++c) {
    strings.push_back({rng.range(0, w), rng.range(0, w), 2 * rng.range(0, spec.spread),
                       rng.pick_label(x_labels), rng.pick_label(cfg.h_labels)});
  }

  std::set<std::pair<int, int>> dropped;
  if (spec.corrupt) dropped.insert({1, rng.range(0, w - 1)});

  std::vector<Slot> slots;
  for (std::size_t id = 0; id < strings.size(); ++id) {
    const Planted& p = strings[id];
    for (int jg = 0; jg <= p.weight; ++jg) {
      for (int jh = 0; jh <= p.h_weight; ++jh) {
        Slot s;
        s.string_id = static_cast<int>(id);
        s.weight = p.weight;
        s.pos = jg;
        s.h_weight = p.h_weight;
        s.h_pos = jh;
        s.degree = p.base + 2 * jg + 2 * jh;
        s.level = -p.weight + 2 * jg;
        s.h_level = s.level + (-p.h_weight + 2 * jh);
        s.e_level = s.h_level + rng.range(0, 1);
        s.hodge = rng.range(0, 1);
        s.label = p.label;
        s.h_label = p.h_label;
        slots.push_back(s);
      }
    }
  }
  const Side ord = build_side(std::move(slots));

  int h_lo = 0, h_hi = 0, e_lo = 0, e_hi = 0;
  for (const Slot& s : ord.slots) {
    h_lo = std::min(h_lo, s.h_level);
    h_hi = std::max(h_hi, s.h_level);
    e_lo = std::min(e_lo, s.e_level);
    e_hi = std::max(e_hi, s.e_level);
  }

  std::map<int, Rational> scalar_by_string;
  for (std::size_t id = 0; id < strings.size(); ++id) {
    scalar_by_string[static_cast<int>(id)] = rng.pick({1, 2, 3, -1});
  }
  const bool third = rng.range(0, 1) == 1;
  const Transport t = sample_transport(rng, ord.dims);

  GeneratedFixture out;
  fill_certificate_counts(out.certificate, ord, false);

  int degree_lo = ord.dims.begin()->first;
  int degree_hi = ord.dims.rbegin()->first;

  Realization r;
  r.label = "V0";
  r.space = make_space(ord, t, FiltrationKind::perverse, 0, -w, w,
                       [](const Slot& s) { return s.level; });
  r.eta.blocks = make_eta(ord, t, false, dropped);
  r.hodge = make_space(ord, t, FiltrationKind::hodge, 0, 0, 1,
                       [](const Slot& s) { return s.hodge; });
  r.weight = make_space(ord, t, FiltrationKind::weight, 0, degree_lo, degree_hi,
                        [](const Slot& s) { return s.degree; });
  Symmetry gamma;
  gamma.label = "gamma";
  gamma.blocks = make_symmetry(ord, t, scalar_by_string);
  r.symmetries.push_back(std::move(gamma));

  ComposeBundle bundle;
  const FilteredGradedSpace h_space = make_space(ord, t, FiltrationKind::perverse, 0, h_lo, h_hi,
                                                 [](const Slot& s) { return s.h_level; });
  bundle.later.push_back(h_space);
  FilteredGradedSpace e_space;
  if (third) {
    e_space = make_space(ord, t, FiltrationKind::perverse, 0, e_lo, e_hi,
                         [](const Slot& s) { return s.e_level; });
    bundle.later.push_back(e_space);
  }
  bundle.eta.blocks = make_eta(ord, t, true, {});
  bundle.dense_label = cfg.dense;

  // Declared graded filtrations, stated relative to each piece.
  for (int a = -w; a <= w; ++a) {
    bool nonzero = false;
    for (int k : r.space.degrees()) {
      nonzero = nonzero || r.space.step(k, a).dim() != r.space.step(k, a - 1).dim();
    }
    if (!nonzero) continue;
    bundle.declared[{a}] = reindexed(induced_filtration_on_graded(r.space, h_space, a), a);
    if (!third) continue;
    for (int c = h_lo; c <= h_hi; ++c) {
      std::map<int, std::size_t> dims;
      std::map<int, std::vector<Subspace>> steps;
      bool piece_nonzero = false;
      for (int k : r.space.degrees()) {
        const Subspace num = sum(intersect(h_space.step(k, c), r.space.step(k, a)),
                                 r.space.step(k, a - 1));
        const Subspace den = sum(intersect(h_space.step(k, c - 1), r.space.step(k, a)),
                                 r.space.step(k, a - 1));
        Subquotient sq = subquotient(num, den);
        dims[k] = sq.dim;
        piece_nonzero = piece_nonzero || sq.dim != 0;
        std::vector<Subspace> row;
        for (int e = e_lo; e <= e_hi; ++e) {
          const Subspace cut = sum(intersect(e_space.step(k, e), num), den);
          row.push_back(cut.apply(sq.proj));
        }
        steps[k] = std::move(row);
      }
      if (!piece_nonzero) continue;
      bundle.declared[{a, c}] = FilteredGradedSpace(FiltrationKind::perverse, 0, e_lo - c,
                                                    e_hi - c, std::move(dims), std::move(steps));
    }
  }

  // Support-refined steps of both filtrations.  Levels without slots are
  // omitted; every label is declared at the levels that are present.
  for (int a = -w; a <= w; ++a) {
    bool any = false;
    for (const Slot& s : ord.slots) any = any || s.level == a;
    if (!any) continue;
    auto& at_level = bundle.g_support_steps[a];
    for (const std::string& x : x_labels) {
      auto& per_degree = at_level[x];
      for (int k : r.space.degrees()) {
        Subspace span = slot_span(ord, k, [&](const Slot& s) {
          return s.level < a || (s.level == a && s.label == x);
        });
        if (span.dim() != 0) per_degree[k] = span.apply(t.fwd.at(k));
      }
    }
  }
  for (int c = h_lo; c <= h_hi; ++c) {
    auto& at_level = bundle.h_support_steps[c];
    for (const std::string& y : cfg.h_labels) {
      auto& per_degree = at_level[y];
      for (int k : r.space.degrees()) {
        Subspace span = slot_span(ord, k, [&](const Slot& s) {
          return s.h_level < c || (s.h_level == c && s.h_label == y);
        });
        if (span.dim() != 0) per_degree[k] = span.apply(t.fwd.at(k));
      }
    }
  }
  r.compose = std::move(bundle);

  out.scenario.star.realizations.push_back(std::move(r));
  out.scenario.star.rational_vertex = "V0";
  return out;
}

}  // namespace

GeneratedFixture generate_fixture(const FixtureSpec& spec) {
  if (spec.max_weight < 0 || spec.max_weight > 4) {
    throw SchemaError("max_weight must lie in [0, 4]");
  }
  if (spec.spread < 1 || spec.spread > 4) {
    throw SchemaError("spread must lie in [1, 4]");
  }
  Rng rng(spec.seed);
  if (spec.profile == "hl-only" || spec.profile == "supports" || spec.profile == "diagram") {
    return generate_simple(rng, spec);
  }
  if (spec.profile == "composition") {
    return generate_composition(rng, spec);
  }
  throw SchemaError("unknown profile: '" + spec.profile + "'");
}

}  // namespace decomp
