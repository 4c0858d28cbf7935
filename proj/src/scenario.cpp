#include "decomp/scenario.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "decomp/errors.hpp"

namespace decomp {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

const json& need(const json& node, const std::string& key, const std::string& where) {
  auto it = node.find(key);
  if (it == node.end()) schema_error(where, "missing key '" + key + "'");
  return *it;
}

int to_int(const json& node, const std::string& where) {
  if (!node.is_number_integer()) schema_error(where, "expected an integer");
  return node.get<int>();
}

int key_to_int(const std::string& key, const std::string& where) {
  try {
    std::size_t used = 0;
    int value = std::stoi(key, &used);
    if (used != key.size()) throw std::invalid_argument(key);
    return value;
  } catch (const std::exception&) {
    schema_error(where, "key '" + key + "' is not an integer");
  }
}

std::string to_label(const json& node, const std::string& where) {
  if (!node.is_string()) schema_error(where, "expected a string");
  return node.get<std::string>();
}

Matrix matrix_from_json(const json& node, const std::string& where) {
  if (!node.is_object()) schema_error(where, "expected a matrix object");
  const std::size_t rows = need(node, "rows", where).get<std::size_t>();
  const std::size_t cols = need(node, "cols", where).get<std::size_t>();
  const json& entries = need(node, "entries", where);
  if (!entries.is_array() || entries.size() != rows) schema_error(where, "bad entry row count");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = entries[i];
    if (!row.is_array() || row.size() != cols) schema_error(where, "bad entry column count");
    for (std::size_t j = 0; j < cols; ++j) {
      if (!row[j].is_string()) schema_error(where, "matrix entries are rational strings");
      m.at(i, j) = rational_from_string(row[j].get<std::string>());
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_string(m.at(i, j)));
    entries.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Subspace subspace_from_json(const json& node, std::size_t ambient, const std::string& where) {
  if (!node.is_array()) schema_error(where, "expected a list of basis rows");
  Matrix rows(node.size(), ambient);
  for (std::size_t i = 0; i < node.size(); ++i) {
    const json& row = node[i];
    if (!row.is_array() || row.size() != ambient) schema_error(where, "basis row has wrong length");
    for (std::size_t j = 0; j < ambient; ++j) {
      if (!row[j].is_string()) schema_error(where, "basis entries are rational strings");
      rows.at(i, j) = rational_from_string(row[j].get<std::string>());
    }
  }
  return Subspace::row_span(rows);
}

json subspace_to_json(const Subspace& s) {
  json rows = json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < s.ambient_dim(); ++j) {
      row.push_back(rational_to_string(s.basis().at(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

FilteredGradedSpace space_from_json(const json& node, const std::string& where) {
  if (!node.is_object()) schema_error(where, "expected a filtration object");
  const FiltrationKind kind = kind_from_name(to_label(need(node, "kind", where), where));
  const int twist = node.contains("twist") ? to_int(node["twist"], where) : 0;
  const json& range = need(node, "range", where);
  if (!range.is_array() || range.size() != 2) schema_error(where, "range must be [min, max]");
  const int b_min = to_int(range[0], where);
  const int b_max = to_int(range[1], where);
  std::map<int, std::size_t> dims;
  for (const auto& [key, value] : need(node, "degrees", where).items()) {
    dims[key_to_int(key, where)] = value.get<std::size_t>();
  }
  std::map<int, std::vector<Subspace>> steps;
  const json& steps_node = need(node, "steps", where);
  for (const auto& [k, n] : dims) {
    const std::string k_str = std::to_string(k);
    const json& per_degree = need(steps_node, k_str, where + ".steps");
    std::vector<Subspace> row;
    for (int b = b_min; b <= b_max; ++b) {
      const json& basis = need(per_degree, std::to_string(b), where + ".steps." + k_str);
      row.push_back(subspace_from_json(basis, n, where + ".steps." + k_str));
    }
    steps[k] = std::move(row);
  }
  try {
    return FilteredGradedSpace(kind, twist, b_min, b_max, std::move(dims), std::move(steps));
  } catch (const DimensionError& e) {
    schema_error(where, e.what());
  }
}

json space_to_json(const FilteredGradedSpace& space) {
  json degrees = json::object();
  json steps = json::object();
  for (const auto& [k, n] : space.degree_dims()) {
    degrees[std::to_string(k)] = n;
    json per_degree = json::object();
    for (int b = space.b_min(); b <= space.b_max(); ++b) {
      per_degree[std::to_string(b)] = subspace_to_json(space.step(k, b));
    }
    steps[std::to_string(k)] = std::move(per_degree);
  }
  return json{{"kind", kind_name(space.kind())}, {"twist", space.twist()},
              {"range", json::array({space.b_min(), space.b_max()})},
              {"degrees", std::move(degrees)}, {"steps", std::move(steps)}};
}

std::map<int, Matrix> degree_matrices_from_json(const json& node, const std::string& where) {
  if (!node.is_object()) schema_error(where, "expected an object of matrices by degree");
  std::map<int, Matrix> out;
  for (const auto& [key, value] : node.items()) {
    out[key_to_int(key, where)] = matrix_from_json(value, where + "." + key);
  }
  return out;
}

json degree_matrices_to_json(const std::map<int, Matrix>& blocks) {
  json out = json::object();
  for (const auto& [k, m] : blocks) out[std::to_string(k)] = matrix_to_json(m);
  return out;
}

std::map<std::pair<int, int>, Matrix> indexed_matrices_from_json(const json& node,
                                                                 const std::string& where) {
  std::map<std::pair<int, int>, Matrix> out;
  if (!node.is_object()) schema_error(where, "expected an object of matrices");
  for (const auto& [b_key, per_degree] : node.items()) {
    const int b = key_to_int(b_key, where);
    if (!per_degree.is_object()) schema_error(where, "expected an object per index");
    for (const auto& [j_key, m] : per_degree.items()) {
      out[{b, key_to_int(j_key, where)}] = matrix_from_json(m, where + "." + b_key + "." + j_key);
    }
  }
  return out;
}

json indexed_matrices_to_json(const std::map<std::pair<int, int>, Matrix>& blocks) {
  json out = json::object();
  for (const auto& [key, m] : blocks) {
    out[std::to_string(key.first)][std::to_string(key.second)] = matrix_to_json(m);
  }
  return out;
}

std::map<int, int> offsets_from_json(const json& node, const std::string& where) {
  std::map<int, int> out;
  if (!node.is_object()) schema_error(where, "expected an object of integers");
  for (const auto& [key, value] : node.items()) {
    out[key_to_int(key, where)] = to_int(value, where);
  }
  return out;
}

json offsets_to_json(const std::map<int, int>& offsets) {
  json out = json::object();
  for (const auto& [k, v] : offsets) out[std::to_string(k)] = v;
  return out;
}

SupportSteps support_steps_from_json(const json& node, const FilteredGradedSpace& space,
                                     const std::string& where) {
  SupportSteps out;
  if (!node.is_object()) schema_error(where, "expected support steps");
  for (const auto& [a_key, by_label] : node.items()) {
    const int a = key_to_int(a_key, where);
    if (!by_label.is_object()) schema_error(where, "expected labels per level");
    auto& level = out[a];
    for (const auto& [label, by_degree] : by_label.items()) {
      if (!by_degree.is_object()) schema_error(where, "expected degrees per label");
      auto& per_degree = level[label];
      for (const auto& [k_key, basis] : by_degree.items()) {
        const int k = key_to_int(k_key, where);
        per_degree[k] = subspace_from_json(basis, space.dim(k), where + "." + a_key + "." + label);
      }
    }
  }
  return out;
}

json support_steps_to_json(const SupportSteps& steps) {
  json out = json::object();
  for (const auto& [a, by_label] : steps) {
    json labels = json::object();
    for (const auto& [label, by_degree] : by_label) {
      json degrees = json::object();
      for (const auto& [k, s] : by_degree) degrees[std::to_string(k)] = subspace_to_json(s);
      labels[label] = std::move(degrees);
    }
    out[std::to_string(a)] = std::move(labels);
  }
  return out;
}

Realization realization_from_json(const json& node, const std::string& where) {
  Realization r;
  r.label = to_label(need(node, "label", where), where);
  r.space = space_from_json(need(node, "space", where), where + ".space");
  if (node.contains("eta")) {
    r.eta.blocks = degree_matrices_from_json(node["eta"], where + ".eta");
  }
  if (node.contains("compact")) {
    const json& c = node["compact"];
    r.compact_space = space_from_json(need(c, "space", where + ".compact"), where + ".compact.space");
    if (c.contains("eta")) {
      EtaBlocks eta;
      eta.blocks = degree_matrices_from_json(c["eta"], where + ".compact.eta");
      r.compact_eta = std::move(eta);
    }
  }
  if (node.contains("supports")) {
    const json& s = node["supports"];
    SupportData data;
    data.ambient_dim = to_int(need(s, "ambient_dim", where + ".supports"), where + ".supports");
    data.dense_label = to_label(need(s, "dense", where + ".supports"), where + ".supports");
    if (s.contains("strata")) {
      if (!s["strata"].is_array()) schema_error(where + ".supports", "strata must be a list");
      for (const json& st : s["strata"]) {
        Stratum stratum;
        stratum.label = to_label(need(st, "label", where + ".supports.strata"), where);
        stratum.dim = to_int(need(st, "dim", where + ".supports.strata"), where);
        if (st.contains("restriction")) {
          stratum.restriction = indexed_matrices_from_json(st["restriction"], where + ".restriction");
        }
        if (st.contains("restriction_compact")) {
          stratum.restriction_compact =
              indexed_matrices_from_json(st["restriction_compact"], where + ".restriction_compact");
        }
        data.strata.push_back(std::move(stratum));
      }
    }
    data.pairing = indexed_matrices_from_json(need(s, "pairing", where + ".supports"),
                                              where + ".supports.pairing");
    r.supports = std::move(data);
  }
  if (node.contains("hodge")) r.hodge = space_from_json(node["hodge"], where + ".hodge");
  if (node.contains("weight")) r.weight = space_from_json(node["weight"], where + ".weight");
  if (node.contains("symmetries")) {
    if (!node["symmetries"].is_array()) schema_error(where, "symmetries must be a list");
    for (const json& s : node["symmetries"]) {
      Symmetry sym;
      sym.label = to_label(need(s, "label", where + ".symmetries"), where);
      sym.blocks = degree_matrices_from_json(need(s, "blocks", where + ".symmetries"),
                                             where + ".symmetries");
      r.symmetries.push_back(std::move(sym));
    }
  }
  if (node.contains("comap")) {
    r.comap = degree_matrices_from_json(node["comap"], where + ".comap");
  }
  if (node.contains("flag")) {
    const json& f = node["flag"];
    FlagData flag;
    for (const auto& [j_key, per_degree] : need(f, "restrictions", where + ".flag").items()) {
      flag.restrictions.restrictions[key_to_int(j_key, where)] =
          degree_matrices_from_json(per_degree, where + ".flag.restrictions");
    }
    if (f.contains("corestrictions")) {
      for (const auto& [j_key, per_degree] : f["corestrictions"].items()) {
        flag.restrictions.corestrictions[key_to_int(j_key, where)] =
            degree_matrices_from_json(per_degree, where + ".flag.corestrictions");
      }
    }
    if (f.contains("offsets")) flag.offsets = offsets_from_json(f["offsets"], where + ".flag");
    if (f.contains("default_offset")) flag.default_offset = to_int(f["default_offset"], where);
    if (f.contains("offsets_compact")) {
      flag.offsets_compact = offsets_from_json(f["offsets_compact"], where + ".flag");
    }
    if (f.contains("default_offset_compact")) {
      flag.default_offset_compact = to_int(f["default_offset_compact"], where);
    }
    r.flag = std::move(flag);
  }
  if (node.contains("compose")) {
    const json& c = node["compose"];
    ComposeBundle compose;
    if (c.contains("later")) {
      if (!c["later"].is_array()) schema_error(where + ".compose", "later must be a list");
      for (const json& f : c["later"]) {
        compose.later.push_back(space_from_json(f, where + ".compose.later"));
      }
    }
    if (c.contains("declared")) {
      if (!c["declared"].is_array()) schema_error(where + ".compose", "declared must be a list");
      for (const json& d : c["declared"]) {
        std::vector<int> prefix;
        for (const json& v : need(d, "prefix", where + ".compose.declared")) {
          prefix.push_back(to_int(v, where + ".compose.declared"));
        }
        compose.declared[prefix] = space_from_json(need(d, "filtration", where + ".compose.declared"),
                                                   where + ".compose.declared");
      }
    }
    if (c.contains("g_support_steps")) {
      compose.g_support_steps =
          support_steps_from_json(c["g_support_steps"], r.space, where + ".compose.g_support_steps");
    }
    if (c.contains("h_support_steps")) {
      compose.h_support_steps =
          support_steps_from_json(c["h_support_steps"], r.space, where + ".compose.h_support_steps");
    }
    if (c.contains("dense_label")) {
      compose.dense_label = to_label(c["dense_label"], where + ".compose");
    }
    if (c.contains("eta")) {
      compose.eta.blocks = degree_matrices_from_json(c["eta"], where + ".compose.eta");
    }
    r.compose = std::move(compose);
  }
  return r;
}

json realization_to_json(const Realization& r) {
  json node;
  node["label"] = r.label;
  node["space"] = space_to_json(r.space);
  if (!r.eta.blocks.empty()) node["eta"] = degree_matrices_to_json(r.eta.blocks);
  if (r.compact_space) {
    json c;
    c["space"] = space_to_json(*r.compact_space);
    if (r.compact_eta && !r.compact_eta->blocks.empty()) {
      c["eta"] = degree_matrices_to_json(r.compact_eta->blocks);
    }
    node["compact"] = std::move(c);
  }
  if (r.supports) {
    json s;
    s["ambient_dim"] = r.supports->ambient_dim;
    s["dense"] = r.supports->dense_label;
    json strata = json::array();
    for (const Stratum& st : r.supports->strata) {
      json sj;
      sj["label"] = st.label;
      sj["dim"] = st.dim;
      if (!st.restriction.empty()) sj["restriction"] = indexed_matrices_to_json(st.restriction);
      if (!st.restriction_compact.empty()) {
        sj["restriction_compact"] = indexed_matrices_to_json(st.restriction_compact);
      }
      strata.push_back(std::move(sj));
    }
    s["strata"] = std::move(strata);
    s["pairing"] = indexed_matrices_to_json(r.supports->pairing);
    node["supports"] = std::move(s);
  }
  if (r.hodge) node["hodge"] = space_to_json(*r.hodge);
  if (r.weight) node["weight"] = space_to_json(*r.weight);
  if (!r.symmetries.empty()) {
    json list = json::array();
    for (const Symmetry& s : r.symmetries) {
      list.push_back(json{{"label", s.label}, {"blocks", degree_matrices_to_json(s.blocks)}});
    }
    node["symmetries"] = std::move(list);
  }
  if (!r.comap.empty()) node["comap"] = degree_matrices_to_json(r.comap);
  if (r.flag) {
    json f;
    json restrictions = json::object();
    for (const auto& [j, per_degree] : r.flag->restrictions.restrictions) {
      restrictions[std::to_string(j)] = degree_matrices_to_json(per_degree);
    }
    f["restrictions"] = std::move(restrictions);
    if (!r.flag->restrictions.corestrictions.empty()) {
      json corestrictions = json::object();
      for (const auto& [j, per_degree] : r.flag->restrictions.corestrictions) {
        corestrictions[std::to_string(j)] = degree_matrices_to_json(per_degree);
      }
      f["corestrictions"] = std::move(corestrictions);
    }
    if (!r.flag->offsets.empty()) f["offsets"] = offsets_to_json(r.flag->offsets);
    f["default_offset"] = r.flag->default_offset;
    if (!r.flag->offsets_compact.empty()) {
      f["offsets_compact"] = offsets_to_json(r.flag->offsets_compact);
    }
    f["default_offset_compact"] = r.flag->default_offset_compact;
    node["flag"] = std::move(f);
  }
  if (r.compose) {
    json c;
    if (!r.compose->later.empty()) {
      json later = json::array();
      for (const FilteredGradedSpace& f : r.compose->later) later.push_back(space_to_json(f));
      c["later"] = std::move(later);
    }
    if (!r.compose->declared.empty()) {
      json declared = json::array();
      for (const auto& [prefix, f] : r.compose->declared) {
        declared.push_back(json{{"prefix", prefix}, {"filtration", space_to_json(f)}});
      }
      c["declared"] = std::move(declared);
    }
    if (!r.compose->g_support_steps.empty()) {
      c["g_support_steps"] = support_steps_to_json(r.compose->g_support_steps);
    }
    if (!r.compose->h_support_steps.empty()) {
      c["h_support_steps"] = support_steps_to_json(r.compose->h_support_steps);
    }
    if (!r.compose->dense_label.empty()) c["dense_label"] = r.compose->dense_label;
    if (!r.compose->eta.blocks.empty()) {
      c["eta"] = degree_matrices_to_json(r.compose->eta.blocks);
    }
    node["compose"] = std::move(c);
  }
  return node;
}

}  // namespace

ScenarioFile scenario_from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw SchemaError("scenario: top level must be an object");
  if (to_label(need(root, "format", "scenario"), "scenario") != "decomp-scenario") {
    throw SchemaError("scenario: unknown format tag");
  }
  if (to_int(need(root, "version", "scenario"), "scenario") != 1) {
    throw SchemaError("scenario: unsupported version");
  }
  ScenarioFile out;
  const json& realizations = need(root, "realizations", "scenario");
  if (!realizations.is_array() || realizations.empty()) {
    throw SchemaError("scenario: needs at least one realization");
  }
  for (std::size_t i = 0; i < realizations.size(); ++i) {
    out.star.realizations.push_back(
        realization_from_json(realizations[i], "realizations[" + std::to_string(i) + "]"));
  }
  if (root.contains("comparisons")) {
    if (!root["comparisons"].is_array()) throw SchemaError("scenario: comparisons must be a list");
    for (const json& c : root["comparisons"]) {
      Comparison cmp;
      cmp.source = to_label(need(c, "source", "comparisons"), "comparisons");
      cmp.target = to_label(need(c, "target", "comparisons"), "comparisons");
      cmp.blocks = degree_matrices_from_json(need(c, "blocks", "comparisons"), "comparisons.blocks");
      if (c.contains("blocks_compact")) {
        cmp.blocks_compact = degree_matrices_from_json(c["blocks_compact"], "comparisons.blocks_compact");
      }
      out.star.comparisons.push_back(std::move(cmp));
    }
  }
  out.star.rational_vertex = root.contains("rational_vertex")
                                 ? to_label(root["rational_vertex"], "scenario")
                                 : out.star.realizations.front().label;
  return out;
}

std::string scenario_to_json_text(const ScenarioFile& scenario) {
  json root;
  root["format"] = "decomp-scenario";
  root["version"] = 1;
  root["rational_vertex"] = scenario.star.rational_vertex;
  json realizations = json::array();
  for (const Realization& r : scenario.star.realizations) {
    realizations.push_back(realization_to_json(r));
  }
  root["realizations"] = std::move(realizations);
  if (!scenario.star.comparisons.empty()) {
    json comparisons = json::array();
    for (const Comparison& c : scenario.star.comparisons) {
      json node;
      node["source"] = c.source;
      node["target"] = c.target;
      node["blocks"] = degree_matrices_to_json(c.blocks);
      if (!c.blocks_compact.empty()) {
        node["blocks_compact"] = degree_matrices_to_json(c.blocks_compact);
      }
      comparisons.push_back(std::move(node));
    }
    root["comparisons"] = std::move(comparisons);
  }
  return root.dump(2) + "\n";
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return scenario_from_json_text(buffer.str());
}

void save_scenario(const ScenarioFile& scenario, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write scenario file: " + path);
  out << scenario_to_json_text(scenario);
}

ValidationOutcome validate_scenario(const ScenarioFile& scenario) {
  ValidationOutcome outcome;
  auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
    outcome.checks.push_back({name, ok, detail});
    outcome.ok = outcome.ok && ok;
  };
  for (const Realization& r : scenario.star.realizations) {
    const std::string prefix = r.label + "/";
    auto validation = r.space.validate();
    add(prefix + "filtration/valid", validation.ok(), validation.to_string());
    if (!validation.ok()) continue;
    try {
      HLTriple triple(r.space, r.eta);
      add(prefix + "eta/shape", true);
      bool shift_ok = true;
      for (int k : triple.space().degrees()) {
        const Matrix e = r.eta.block(k, r.space);
        for (int b = r.space.b_min(); b <= r.space.b_max(); ++b) {
          shift_ok = shift_ok && r.space.step(k + 2, b + 2).contains(r.space.step(k, b).apply(e));
        }
      }
      add(prefix + "eta/shift", shift_ok);
    } catch (const Error& e) {
      add(prefix + "eta/shape", false, e.what());
    }
    if (r.compact_space) {
      auto cv = r.compact_space->validate();
      add(prefix + "compact/filtration/valid", cv.ok(), cv.to_string());
    }
    for (const FilteredGradedSpace* f :
         {r.hodge ? &*r.hodge : nullptr, r.weight ? &*r.weight : nullptr}) {
      if (f == nullptr) continue;
      auto fv = f->validate();
      add(prefix + "filtration/" + kind_name(f->kind()) + "/valid", fv.ok(), fv.to_string());
      if (f->degree_dims() != r.space.degree_dims()) {
        add(prefix + "filtration/" + kind_name(f->kind()) + "/degrees", false,
            "degree dimensions differ from the main space");
      }
    }
    if (r.supports) {
      if (!r.compact_space) {
        add(prefix + "supports/compact-present", false, "support data needs a compact side");
      } else {
        try {
          HLTriple ordinary(r.space, r.eta);
          HLTriple compact(*r.compact_space, r.compact_eta.value_or(EtaBlocks{}));
          SupportScenario support(ordinary, compact, *r.supports);
          PairingReport pairing = support.check_graded_pairing();
          std::ostringstream detail;
          for (const auto& f : pairing.failures) {
            detail << "(b=" << f.b << ", degree=" << f.j << "): " << f.what << "; ";
          }
          add(prefix + "pairing/nondegenerate", pairing.ok(), detail.str());
        } catch (const Error& e) {
          add(prefix + "supports/consistent", false, e.what());
        }
      }
    }
    if (r.flag) {
      try {
        flag_filtration(r.space.degree_dims(),
                        r.compact_space ? r.compact_space->degree_dims() : std::map<int, std::size_t>{},
                        r.flag->restrictions);
        add(prefix + "flag/nested", true);
      } catch (const Error& e) {
        add(prefix + "flag/nested", false, e.what());
      }
    }
  }
  for (const Comparison& c : scenario.star.comparisons) {
    const std::string prefix = c.source + "->" + c.target + "/";
    const Realization* src = scenario.star.find(c.source);
    const Realization* tgt = scenario.star.find(c.target);
    if (src == nullptr || tgt == nullptr) {
      add(prefix + "endpoints", false, "unknown realization label");
      continue;
    }
    bool invertible = true;
    bool strict = true;
    for (int k : src->space.degrees()) {
      auto it = c.blocks.find(k);
      if (it == c.blocks.end() || it->second.rows() != tgt->space.dim(k) ||
          it->second.cols() != src->space.dim(k) || !inverse(it->second).ok) {
        invertible = false;
        continue;
      }
      for (int b = src->space.b_min(); b <= src->space.b_max(); ++b) {
        strict = strict && src->space.step(k, b).apply(it->second) == tgt->space.step(k, b);
      }
    }
    add(prefix + "invertible", invertible);
    add(prefix + "strict", strict);
  }
  if (!scenario.star.rational_vertex.empty() &&
      scenario.star.find(scenario.star.rational_vertex) == nullptr) {
    add("rational-vertex/present", false, "unknown label: " + scenario.star.rational_vertex);
  }
  return outcome;
}

}  // namespace decomp
