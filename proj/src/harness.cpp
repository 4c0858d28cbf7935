#include "decomp/harness.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "decomp/errors.hpp"

namespace decomp {

const Realization* DiagramStar::find(const std::string& label) const {
  for (const Realization& r : realizations) {
    if (r.label == label) return &r;
  }
  return nullptr;
}

namespace {

Matrix comparison_block(const std::map<int, Matrix>& blocks, int k, std::size_t rows,
                        std::size_t cols) {
  auto it = blocks.find(k);
  if (it != blocks.end()) return it->second;
  return Matrix(rows, cols);
}

std::vector<BlockKey> key_union(const ProjectorFamily& a, const ProjectorFamily& b) {
  std::vector<BlockKey> keys;
  for (const auto& [key, blocks] : a.projectors) keys.push_back(key);
  for (const auto& [key, blocks] : b.projectors) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

constexpr FamilyKind kAllKinds[] = {FamilyKind::perversity, FamilyKind::support,
                                    FamilyKind::primitive, FamilyKind::both};

// Strictness of an invertible comparison: it must map every declared
// step onto the matching step exactly.
bool carries_steps(const FilteredGradedSpace& src, const FilteredGradedSpace& tgt, int k,
                   const Matrix& c) {
  for (int b = std::min(src.b_min(), tgt.b_min()); b <= std::max(src.b_max(), tgt.b_max()); ++b) {
    if (!(src.step(k, b).apply(c) == tgt.step(k, b))) return false;
  }
  return true;
}

}  // namespace

DiagramReport check_diagram(const DiagramStar& star, const BundleMap& bundles) {
  DiagramReport report;
  for (const Comparison& c : star.comparisons) {
    const Realization* src = star.find(c.source);
    const Realization* tgt = star.find(c.target);
    if (src == nullptr || tgt == nullptr) {
      report.failures.push_back({c.source, c.target, "unknown endpoint", "", "", 0});
      continue;
    }
    auto check_side = [&](const FilteredGradedSpace& src_space, const FilteredGradedSpace& tgt_space,
                          const std::map<int, Matrix>& blocks,
                          const std::map<FamilyKind, ProjectorFamily>& src_fams,
                          const std::map<FamilyKind, ProjectorFamily>& tgt_fams,
                          const std::string& tag) {
      for (int k : src_space.degrees()) {
        const Matrix block = comparison_block(blocks, k, tgt_space.dim(k), src_space.dim(k));
        if (block.rows() != tgt_space.dim(k) || block.cols() != src_space.dim(k) ||
            !inverse(block).ok) {
          report.failures.push_back({c.source, c.target, tag + "invertible", "", "", k});
          continue;
        }
        if (!carries_steps(src_space, tgt_space, k, block)) {
          report.failures.push_back({c.source, c.target, tag + "strict", "", "", k});
        }
      }
      for (FamilyKind kind : kAllKinds) {
        auto sf = src_fams.find(kind);
        auto tf = tgt_fams.find(kind);
        if (sf == src_fams.end() || tf == tgt_fams.end()) continue;
        for (const BlockKey& key : key_union(sf->second, tf->second)) {
          for (int k : src_space.degrees()) {
            const Matrix block = comparison_block(blocks, k, tgt_space.dim(k), src_space.dim(k));
            if (!(block * sf->second.block(key, k) == tf->second.block(key, k) * block)) {
              report.failures.push_back(
                  {c.source, c.target, tag + "commutes", family_name(kind), key.to_string(kind), k});
            }
          }
        }
      }
    };
    auto sb = bundles.find(c.source);
    auto tb = bundles.find(c.target);
    if (sb == bundles.end() || tb == bundles.end()) {
      report.failures.push_back({c.source, c.target, "missing projector bundle", "", "", 0});
      continue;
    }
    check_side(src->space, tgt->space, c.blocks, sb->second.ordinary, tb->second.ordinary, "");
    if (src->has_compact() != tgt->has_compact()) {
      report.failures.push_back({c.source, c.target, "compact sides disagree", "", "", 0});
    } else if (src->has_compact()) {
      check_side(*src->compact_space, *tgt->compact_space, c.blocks_compact, sb->second.compact,
                 tb->second.compact, "compact/");
    }
  }
  return report;
}

namespace {

struct Transport {
  std::map<int, Matrix> forward;   // from the root vertex to here
  std::map<int, Matrix> backward;  // inverse blocks
};

bool invert_blocks(const std::map<int, Matrix>& blocks, std::map<int, Matrix>& out) {
  for (const auto& [k, m] : blocks) {
    Inverse inv = inverse(m);
    if (!inv.ok) return false;
    out[k] = inv.mat;
  }
  return true;
}

}  // namespace

RationalityReport check_rationality(const DiagramStar& star, const BundleMap& bundles) {
  RationalityReport report;
  const Realization* root = star.find(star.rational_vertex);
  if (root == nullptr) {
    report.failures.push_back({star.rational_vertex, "distinguished vertex not present", "", "", 0});
    return report;
  }
  auto root_bundle = bundles.find(root->label);
  if (root_bundle == bundles.end()) {
    report.failures.push_back({root->label, "distinguished vertex has no projectors", "", "", 0});
    return report;
  }

  // Breadth-first transport along comparisons, both directions.
  std::map<std::string, Transport> transports;
  Transport identity;
  for (int k : root->space.degrees()) {
    identity.forward[k] = Matrix::identity(root->space.dim(k));
    identity.backward[k] = Matrix::identity(root->space.dim(k));
  }
  transports[root->label] = identity;
  std::deque<std::string> queue{root->label};
  while (!queue.empty()) {
    const std::string here = queue.front();
    queue.pop_front();
    for (const Comparison& c : star.comparisons) {
      std::string next;
      bool forward_edge = false;
      if (c.source == here && !transports.count(c.target)) {
        next = c.target;
        forward_edge = true;
      } else if (c.target == here && !transports.count(c.source)) {
        next = c.source;
      } else {
        continue;
      }
      std::map<int, Matrix> edge = c.blocks;
      if (!forward_edge) {
        std::map<int, Matrix> inv;
        if (!invert_blocks(c.blocks, inv)) {
          report.failures.push_back({c.source + "->" + c.target, "comparison not invertible", "", "", 0});
          continue;
        }
        edge = std::move(inv);
      }
      Transport t;
      const Transport& base = transports.at(here);
      bool shapes_ok = true;
      for (const auto& [k, f] : base.forward) {
        auto et = edge.find(k);
        if (et == edge.end() || et->second.cols() != f.rows()) {
          shapes_ok = false;
          break;
        }
        t.forward[k] = et->second * f;
      }
      if (!shapes_ok || !invert_blocks(t.forward, t.backward)) {
        report.failures.push_back({c.source + "->" + c.target, "transport not invertible", "", "", 0});
        continue;
      }
      transports[next] = std::move(t);
      queue.push_back(next);
    }
  }

  for (const Realization& r : star.realizations) {
    if (!transports.count(r.label)) {
      report.failures.push_back({r.label, "not connected to the distinguished vertex", "", "", 0});
    }
  }
  if (!report.failures.empty()) return report;

  // Local projectors must equal the transported distinguished ones.
  for (const Realization& r : star.realizations) {
    auto vb = bundles.find(r.label);
    if (vb == bundles.end()) {
      report.failures.push_back({r.label, "missing projector bundle", "", "", 0});
      continue;
    }
    const Transport& t = transports.at(r.label);
    for (FamilyKind kind : kAllKinds) {
      auto rf = root_bundle->second.ordinary.find(kind);
      auto lf = vb->second.ordinary.find(kind);
      if (rf == root_bundle->second.ordinary.end() || lf == vb->second.ordinary.end()) continue;
      for (const BlockKey& key : key_union(rf->second, lf->second)) {
        for (int k : root->space.degrees()) {
          const Matrix transported =
              t.forward.at(k) * (rf->second.block(key, k) * t.backward.at(k));
          if (!(transported == lf->second.block(key, k))) {
            report.failures.push_back(
                {r.label, "local projector differs from transport", family_name(kind),
                 key.to_string(kind), k});
          }
        }
      }
    }
  }

  // Path independence: every comparison must equal the composite
  // transport between its endpoints.
  for (const Comparison& c : star.comparisons) {
    const Transport& ta = transports.at(c.source);
    const Transport& tb = transports.at(c.target);
    const Realization* src = star.find(c.source);
    for (int k : src->space.degrees()) {
      const Matrix expected = tb.forward.at(k) * ta.backward.at(k);
      auto it = c.blocks.find(k);
      const Matrix given = it == c.blocks.end()
                               ? Matrix(expected.rows(), expected.cols())
                               : it->second;
      if (!(given == expected)) {
        report.failures.push_back(
            {c.source + "->" + c.target, "transport depends on the path", "", "", k});
      }
    }
  }
  return report;
}

EquivarianceReport check_equivariance(const Realization& realization, const ProjectorBundle& bundle) {
  EquivarianceReport report;
  for (const Symmetry& s : realization.symmetries) {
    for (const auto& [kind, family] : bundle.ordinary) {
      for (const auto& [key, blocks] : family.projectors) {
        for (const auto& [k, p] : blocks) {
          auto it = s.blocks.find(k);
          const Matrix gamma =
              it == s.blocks.end() ? Matrix(p.rows(), p.cols()) : it->second;
          if (!(gamma * p == p * gamma)) {
            report.failures.push_back(
                {s.label, realization.label, "does not commute", family_name(kind),
                 key.to_string(kind), k});
          }
        }
      }
    }
  }
  return report;
}

bool DiagramRun::ok() const {
  if (!diagram.ok() || !rationality.ok()) return false;
  return std::all_of(vertices.begin(), vertices.end(),
                     [](const PipelineResult& r) { return r.ok; });
}

DiagramRun run_diagram(const DiagramStar& star) {
  DiagramRun run;
  BundleMap bundles;
  for (const Realization& r : star.realizations) {
    PipelineResult result = run_pipeline(r);
    if (result.bundle) bundles[r.label] = *result.bundle;
    run.vertices.push_back(std::move(result));
  }
  run.diagram = check_diagram(star, bundles);
  run.rationality = check_rationality(star, bundles);
  return run;
}

}  // namespace decomp
