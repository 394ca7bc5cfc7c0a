#include "opbar/json_io.hpp"

#include <functional>

namespace opbar {

namespace {

Rat rat_field(const Json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where + ": weights are \"num/den\" strings");
  auto r = rat_from_string(j.get<std::string>());
  if (!r) throw SchemaError(where + ": malformed rational '" + j.get<std::string>() + "'");
  return *r;
}

std::string edge_key(const Tree& t, EdgeId e) {
  if (e == t.root_edge()) return "root";
  return e.leaf ? "l" + std::to_string(e.id) : "v" + std::to_string(e.id);
}

EdgeId edge_from_key(const Tree& t, const std::string& key) {
  if (key == "root") return t.root_edge();
  if (key.size() < 2 || (key[0] != 'v' && key[0] != 'l'))
    throw SchemaError("unknown edge key '" + key + "'");
  int id;
  try {
    id = std::stoi(key.substr(1));
  } catch (...) {
    throw SchemaError("unknown edge key '" + key + "'");
  }
  return key[0] == 'l' ? EdgeId::leaf_edge(id) : EdgeId::vertex_edge(id);
}

}  // namespace

Json tree_to_json(const Tree& t) {
  if (t.is_empty()) return Json{{"leaf", t.empty_leaf_label()}};
  std::function<Json(int)> enc = [&](int v) {
    Json kids = Json::array();
    for (const Child& c : t.children(v))
      kids.push_back(c.leaf ? Json{{"leaf", c.id}} : enc(c.id));
    return Json{{"children", kids}};
  };
  return enc(0);
}

Tree tree_from_json(const Json& j) {
  std::function<TreeBuilder(const Json&)> dec = [&](const Json& n) -> TreeBuilder {
    if (!n.is_object()) throw SchemaError("tree nodes are objects");
    if (n.contains("leaf")) {
      if (!n["leaf"].is_number_integer()) throw SchemaError("leaf labels are integers");
      return TreeBuilder::leaf(n["leaf"].get<int>());
    }
    if (!n.contains("children") || !n["children"].is_array())
      throw SchemaError("tree vertices need a children array");
    TreeBuilder b = TreeBuilder::node({});
    for (const Json& c : n["children"]) b.children.push_back(dec(c));
    return b;
  };
  try {
    return Tree(dec(j));
  } catch (const std::invalid_argument& ex) {
    throw SchemaError(std::string("invalid tree: ") + ex.what());
  }
}

Json raw_point_to_json(const Operad& q, const RawBarPoint& raw) {
  Json weights = Json::object(), labels = Json::object();
  for (const auto& [e, w] : raw.weights) weights[edge_key(raw.tree, e)] = rat_to_string(w);
  for (int v = 0; v < raw.tree.n_vertices(); ++v)
    labels["v" + std::to_string(v)] = q.elem_name(raw.labels[v]);
  return Json{{"tree", tree_to_json(raw.tree)}, {"weights", weights}, {"labels", labels}};
}

RawBarPoint raw_point_from_json(const Operad& q, const Json& j) {
  if (!j.is_object() || !j.contains("tree")) throw SchemaError("point needs a tree");
  RawBarPoint raw;
  raw.tree = tree_from_json(j["tree"]);
  if (!j.contains("weights") || !j["weights"].is_object())
    throw SchemaError("point needs a weights object");
  for (const auto& [key, val] : j["weights"].items())
    raw.weights[edge_from_key(raw.tree, key)] = rat_field(val, "weights." + key);
  raw.labels.resize(raw.tree.n_vertices());
  Json labels = j.value("labels", Json::object());
  for (int v = 0; v < raw.tree.n_vertices(); ++v) {
    std::string key = "v" + std::to_string(v);
    if (!labels.contains(key)) throw SchemaError("missing label for vertex " + key);
    const Json& name = labels[key];
    if (!name.is_string()) throw SchemaError("labels are element names");
    auto e = q.find_elem(raw.tree.arity(v), name.get<std::string>());
    if (!e)
      throw SchemaError("unknown element '" + name.get<std::string>() + "' at arity " +
                        std::to_string(raw.tree.arity(v)));
    raw.labels[v] = *e;
  }
  auto bad = validate_raw(q, raw);
  if (!bad.empty()) throw SchemaError("invalid point: " + bad.front());
  return raw;
}

Json point_to_json(const Operad& q, const BarPoint& p) {
  if (p.is_basepoint()) return Json{{"basepoint", true}, {"leaf_labels", p.label_set()}};
  return raw_point_to_json(q, RawBarPoint{p.tree(), p.weights(), p.labels()});
}

BarPoint point_from_json(const Operad& q, const Json& j) {
  if (j.is_object() && j.value("basepoint", false)) {
    std::vector<int> ls = j.value("leaf_labels", std::vector<int>{});
    return BarPoint::basepoint(q, std::move(ls));
  }
  return normalize(q, raw_point_from_json(q, j));
}

Json word_to_json(const BarWord& w) {
  Json out{{"variant", variant_name(w.variant())}};
  Json weights = Json::array();
  for (const Rat& t : w.weights()) weights.push_back(rat_to_string(t));
  out["weights"] = std::move(weights);
  Json labels = Json::array();
  for (int g : w.labels()) labels.push_back(w.group().elem_name(g));
  out["labels"] = std::move(labels);
  if (w.has_left()) out["left"] = w.group().elem_name(w.left_module());
  if (w.has_right()) out["right"] = w.group().elem_name(w.right_module());
  return out;
}

BarWord word_from_json(const GroupPtr& g, const Json& j) {
  if (!j.is_object() || !j.contains("variant")) throw SchemaError("word needs a variant");
  std::string vn = j["variant"].get<std::string>();
  WordVariant v;
  if (vn == "BG") v = WordVariant::BG;
  else if (vn == "EG") v = WordVariant::EG;
  else if (vn == "EGt") v = WordVariant::EGt;
  else if (vn == "BGGG") v = WordVariant::BGGG;
  else throw SchemaError("unknown word variant '" + vn + "'");
  std::vector<Rat> ws;
  for (const Json& t : j.value("weights", Json::array())) ws.push_back(rat_field(t, "weights"));
  std::vector<int> ls;
  for (const Json& l : j.value("labels", Json::array())) {
    auto idx = g->find(l.get<std::string>());
    if (!idx) throw SchemaError("unknown group element '" + l.get<std::string>() + "'");
    ls.push_back(*idx);
  }
  auto module = [&](const char* key) -> int {
    if (!j.contains(key)) throw SchemaError(std::string("word needs a ") + key + " module");
    auto idx = g->find(j[key].get<std::string>());
    if (!idx) throw SchemaError("unknown group element in module position");
    return *idx;
  };
  bool hl = v == WordVariant::EGt || v == WordVariant::BGGG;
  bool hr = v == WordVariant::EG || v == WordVariant::BGGG;
  try {
    return BarWord(v, g, std::move(ws), std::move(ls), hl ? module("left") : -1,
                   hr ? module("right") : -1);
  } catch (const std::invalid_argument& ex) {
    throw SchemaError(std::string("invalid word: ") + ex.what());
  }
}

Json equivariant_to_json(const SemidirectOperad& q, const EquivariantPoint& x) {
  if (x.is_basepoint()) return Json{{"basepoint", true}, {"leaf_labels", x.label_set()}};
  return Json{{"zeta", word_to_json(x.zeta())},
              {"psi", point_to_json(*q.base_operad(), x.psi())}};
}

EquivariantPoint equivariant_from_json(const SemidirectOperad& q, const Json& j) {
  const Operad& P = *q.base_operad();
  if (j.is_object() && j.value("basepoint", false)) {
    std::vector<int> ls = j.value("leaf_labels", std::vector<int>{});
    return EquivariantPoint::basepoint(P, q.twist_group(), std::move(ls));
  }
  if (!j.contains("zeta") || !j.contains("psi"))
    throw SchemaError("equivariant point needs zeta and psi");
  BarWord zeta = word_from_json(q.twist_group(), j["zeta"]);
  if (zeta.variant() != WordVariant::EG)
    throw SchemaError("the word factor of an equivariant point lives in EG");
  return EquivariantPoint::make(P, zeta, point_from_json(P, j["psi"]));
}

Json group_to_json(const Group& g) {
  Json elems = Json::array();
  for (int a = 0; a < g.order(); ++a) elems.push_back(g.elem_name(a));
  Json mult = Json::array();
  for (int a = 0; a < g.order(); ++a) {
    Json row = Json::array();
    for (int b = 0; b < g.order(); ++b) row.push_back(g.mult(a, b));
    mult.push_back(std::move(row));
  }
  return Json{{"name", g.name()}, {"elements", elems}, {"mult", mult}};
}

GroupPtr group_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("mult"))
    throw SchemaError("group needs elements and a mult table");
  std::vector<std::string> names;
  for (const Json& n : j["elements"]) names.push_back(n.get<std::string>());
  std::vector<std::vector<int>> mult;
  for (const Json& row : j["mult"]) {
    std::vector<int> r;
    for (const Json& v : row) r.push_back(v.get<int>());
    mult.push_back(std::move(r));
  }
  try {
    auto g = std::make_shared<Group>(j.value("name", std::string("group")), std::move(names),
                                     std::move(mult));
    auto bad = g->check_axioms();
    if (!bad.empty()) throw SchemaError("group tables: " + bad.front());
    return g;
  } catch (const std::invalid_argument& ex) {
    throw SchemaError(std::string("group tables: ") + ex.what());
  }
}

Json operad_to_json(const TableOperad& q) {
  const TableOperad::Data& d = q.data();
  Json out{{"name", d.name},
           {"max_arity", d.max_arity},
           {"unit", d.elem_names[1][d.unit_id]},
           {"strongly_augmented", d.strongly_augmented},
           {"reduced", d.reduced}};
  out["elements"] = d.elem_names;
  Json aug = Json::array();
  for (bool b : d.augment_unit) aug.push_back(b);
  out["augment_unit"] = std::move(aug);
  Json compose = Json::array();
  for (const auto& [key, table] : d.compose) {
    auto [n, i, m] = key;
    compose.push_back(Json{{"n", n}, {"i", i}, {"m", m}, {"table", table}});
  }
  out["compose"] = std::move(compose);
  Json sym = Json::array();
  for (const auto& [n, tables] : d.sym)
    for (std::size_t k = 0; k < tables.size(); ++k)
      sym.push_back(Json{{"n", n}, {"swap", k + 1}, {"table", tables[k]}});
  out["sym"] = std::move(sym);
  if (!d.act.empty()) {
    Json act = Json::array();
    for (const auto& [key, table] : d.act)
      act.push_back(Json{{"g", key.first}, {"n", key.second}, {"table", table}});
    out["act"] = std::move(act);
    out["group"] = group_to_json(*d.grp);
  }
  return out;
}

OperadPtr operad_from_json(const Json& j, int axiom_arity) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("max_arity"))
    throw SchemaError("operad needs elements and max_arity");
  TableOperad::Data d;
  d.name = j.value("name", std::string("table"));
  d.max_arity = j["max_arity"].get<int>();
  d.elem_names = j["elements"].get<std::vector<std::vector<std::string>>>();
  if (j.contains("group")) d.grp = group_from_json(j["group"]);
  if (d.elem_names.size() > 1) {
    std::string unit = j.value("unit", std::string("1"));
    auto& names1 = d.elem_names[1];
    d.unit_id = -1;
    for (std::size_t i = 0; i < names1.size(); ++i)
      if (names1[i] == unit) d.unit_id = static_cast<std::int64_t>(i);
    if (d.unit_id < 0) throw SchemaError("unit '" + unit + "' is not an arity-1 element");
  }
  d.strongly_augmented = j.value("strongly_augmented", true);
  d.reduced = j.value("reduced", false);
  if (j.contains("augment_unit"))
    for (const Json& b : j["augment_unit"]) d.augment_unit.push_back(b.get<bool>());
  else
    d.augment_unit.assign(d.elem_names.size() > 1 ? d.elem_names[1].size() : 0, true);
  if (!d.augment_unit.empty()) d.augment_unit[0] = false;
  for (const Json& entry : j.value("compose", Json::array())) {
    auto key = std::make_tuple(entry["n"].get<int>(), entry["i"].get<int>(),
                               entry["m"].get<int>());
    d.compose[key] = entry["table"].get<std::vector<std::vector<std::int64_t>>>();
  }
  for (const Json& entry : j.value("sym", Json::array())) {
    int n = entry["n"].get<int>();
    std::size_t k = entry["swap"].get<std::size_t>();
    auto& tabs = d.sym[n];
    if (tabs.size() < k) tabs.resize(k);
    tabs[k - 1] = entry["table"].get<std::vector<std::int64_t>>();
  }
  for (const Json& entry : j.value("act", Json::array()))
    d.act[{entry["g"].get<int>(), entry["n"].get<int>()}] =
        entry["table"].get<std::vector<std::int64_t>>();
  try {
    auto op = std::make_shared<TableOperad>(std::move(d));
    if (axiom_arity < 0) return op;  // caller takes responsibility for checking
    auto bad = check_operad_axioms(*op, axiom_arity);
    if (!bad.empty())
      throw SchemaError("operad tables violate the axioms: " + bad.front() +
                        (bad.size() > 1 ? " (+" + std::to_string(bad.size() - 1) + " more)" : ""));
    return op;
  } catch (const std::invalid_argument& ex) {
    throw SchemaError(std::string("operad tables: ") + ex.what());
  }
}

}  // namespace opbar
