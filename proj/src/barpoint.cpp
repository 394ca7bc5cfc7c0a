#include "opbar/barpoint.hpp"

#include "arena_internal.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace opbar {

std::vector<std::string> validate_raw(const Operad& q, const RawBarPoint& raw) {
  std::vector<std::string> bad = check_weighting(raw.tree, raw.weights);
  if (static_cast<int>(raw.labels.size()) != raw.tree.n_vertices())
    bad.push_back("need one label per vertex");
  else
    for (int v = 0; v < raw.tree.n_vertices(); ++v) {
      if (raw.labels[v].arity != raw.tree.arity(v))
        bad.push_back("label arity mismatch at vertex " + std::to_string(v));
      else if (raw.labels[v].id < 0 ||
               (q.enumerable() && raw.labels[v].id >= q.size(raw.labels[v].arity)))
        bad.push_back("unknown label at vertex " + std::to_string(v));
    }
  return bad;
}

namespace {

using internal::Arena;
using internal::RwNode;
using internal::arena_from_raw;
using internal::arena_export;
using internal::reachable_nodes;

// Weight of the root branch, or nullopt on a one-leaf tree (where the lone
// branch always has weight 1).
std::optional<Rat> root_branch_weight(const Arena& a) {
  int cur = a.root;
  if (a.nodes[cur].leaf) return std::nullopt;
  Rat sum = a.nodes[cur].w;
  while (a.is_vertex(cur) && a.arity(cur) == 1) {
    cur = a.nodes[cur].kids[0];
    sum += a.nodes[cur].w;
  }
  if (a.nodes[cur].leaf) return std::nullopt;
  return sum;
}

// Weight of the leaf branch above leaf_id, or nullopt on a one-leaf tree.
std::optional<Rat> leaf_branch_weight(const Arena& a, int leaf_id) {
  Rat sum = a.nodes[leaf_id].w;
  int cur = a.nodes[leaf_id].parent;
  while (cur >= 0 && a.arity(cur) == 1) {
    sum += a.nodes[cur].w;
    cur = a.nodes[cur].parent;
  }
  if (cur < 0) return std::nullopt;
  return sum;
}

enum RuleKind {
  kBaseLabel = 0,   // a basepoint label anywhere
  kZeroBranch = 1,  // a zero-weight leaf or root branch
  kZeroInternal = 2,
  kZeroEnd = 3,  // zero root or leaf edge next to a unary vertex
  kUnitVertex = 4,
};

struct Site {
  RuleKind rule;
  int node;
};

std::vector<Site> collect_sites(const Operad& q, const Arena& a, const std::vector<int>& order) {
  std::vector<Site> sites;
  for (int id : order) {
    const RwNode& n = a.nodes[id];
    if (!n.leaf && n.label.is_base()) sites.push_back({kBaseLabel, id});
  }
  auto rb = root_branch_weight(a);
  if (rb && is_zero(*rb)) sites.push_back({kZeroBranch, a.root});
  for (int id : order)
    if (a.nodes[id].leaf) {
      auto lb = leaf_branch_weight(a, id);
      if (lb && is_zero(*lb)) sites.push_back({kZeroBranch, id});
    }
  for (int id : order) {
    const RwNode& n = a.nodes[id];
    if (!n.leaf && n.parent >= 0 && is_zero(n.w)) sites.push_back({kZeroInternal, id});
  }
  // Zero root/leaf edge under/over an unstable vertex, on a nonzero branch.
  // A one-leaf tree reports no branch weight; its lone branch always weighs
  // 1, so the end faces still apply there.
  {
    const RwNode& r = a.nodes[a.root];
    if (!r.leaf && a.arity(a.root) == 1 && is_zero(r.w) && (!rb || !is_zero(*rb)))
      sites.push_back({kZeroEnd, a.root});
  }
  for (int id : order) {
    const RwNode& n = a.nodes[id];
    if (n.leaf && is_zero(n.w) && n.parent >= 0 && a.arity(n.parent) == 1) {
      auto lb = leaf_branch_weight(a, id);
      if (!lb || !is_zero(*lb)) sites.push_back({kZeroEnd, id});
    }
  }
  for (int id : order) {
    const RwNode& n = a.nodes[id];
    if (!n.leaf && a.arity(id) == 1 && n.label == q.unit()) sites.push_back({kUnitVertex, id});
  }
  return sites;
}

// Applies one rewrite; returns false when the point collapsed to the
// basepoint.
bool apply_site(const Operad& q, Arena& a, const Site& s) {
  switch (s.rule) {
    case kBaseLabel:
    case kZeroBranch:
      return false;
    case kZeroInternal: {
      int v = s.node, u = a.nodes[v].parent;
      int slot = a.slot_of(u, v);
      a.nodes[u].label = q.compose(a.nodes[u].label, slot + 1, a.nodes[v].label);
      auto& uk = a.nodes[u].kids;
      std::vector<int> nk;
      for (int k : uk) {
        if (k != v) nk.push_back(k);
        else
          for (int vk : a.nodes[v].kids) {
            nk.push_back(vk);
            a.nodes[vk].parent = u;
          }
      }
      uk = std::move(nk);
      return true;
    }
    case kZeroEnd: {
      const RwNode& n = a.nodes[s.node];
      if (n.leaf) {
        int u = n.parent;
        if (a.nodes[u].label.is_base() || !q.augments_to_unit(a.nodes[u].label)) return false;
        a.nodes[s.node].w = a.nodes[u].w;
        a.replace_kid(a.nodes[u].parent, u, s.node);
        return true;
      }
      if (n.label.is_base() || !q.augments_to_unit(n.label)) return false;
      int kid = n.kids[0];
      a.replace_kid(-1, s.node, kid);
      return true;
    }
    case kUnitVertex: {
      int v = s.node, kid = a.nodes[v].kids[0];
      a.nodes[kid].w += a.nodes[v].w;
      a.replace_kid(a.nodes[v].parent, v, kid);
      return true;
    }
  }
  return true;
}

}  // namespace

BarPoint normalize(const Operad& q, const RawBarPoint& raw, std::mt19937_64* rng) {
  auto bad = validate_raw(q, raw);
  if (!bad.empty()) throw std::invalid_argument("invalid raw point: " + bad.front());
  std::vector<int> label_set = raw.tree.labels();

  Arena a = arena_from_raw(raw);
  while (true) {
    auto order = reachable_nodes(a);
    auto sites = collect_sites(q, a, order);
    if (sites.empty()) break;
    const Site* chosen;
    if (rng) {
      chosen = &sites[static_cast<std::size_t>((*rng)() % sites.size())];
    } else {
      // default priority: basepoint collapse, composition across zero
      // internal edges, end faces, unit vertices
      chosen = &sites[0];
      for (const Site& s : sites)
        if (s.rule < chosen->rule) chosen = &s;
    }
    if (!apply_site(q, a, *chosen)) return BarPoint::basepoint(q, std::move(label_set));
  }

  RawBarPoint canon = arena_export(a, q);
  BarPoint p;
  p.base_ = false;
  p.operad_name_ = q.name();
  p.label_set_ = std::move(label_set);
  p.tree_ = std::move(canon.tree);
  p.weights_ = std::move(canon.weights);
  p.labels_ = std::move(canon.labels);
  return p;
}

BarPoint BarPoint::basepoint(const Operad& q, std::vector<int> label_set) {
  BarPoint p;
  p.base_ = true;
  p.operad_name_ = q.name();
  std::sort(label_set.begin(), label_set.end());
  p.label_set_ = std::move(label_set);
  return p;
}

BarPoint BarPoint::from_parts(const Operad& q, Tree t, Weighting w, std::vector<Elem> labels) {
  return normalize(q, RawBarPoint{std::move(t), std::move(w), std::move(labels)});
}

const Tree& BarPoint::tree() const {
  if (base_) throw std::logic_error("basepoint has no tree");
  return tree_;
}
const Weighting& BarPoint::weights() const {
  if (base_) throw std::logic_error("basepoint has no weights");
  return weights_;
}
const std::vector<Elem>& BarPoint::labels() const {
  if (base_) throw std::logic_error("basepoint has no labels");
  return labels_;
}

std::string BarPoint::str(const Operad& q) const {
  if (base_) return "*";
  std::string s = tree_.str() + " w{";
  bool first = true;
  for (const auto& [e, r] : weights_) {
    if (!first) s += ",";
    first = false;
    s += e.str() + ":" + rat_to_string(r);
  }
  s += "} l{";
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (v) s += ",";
    s += q.elem_name(labels_[v]);
  }
  return s + "}";
}

bool equals(const BarPoint& p, const BarPoint& q) {
  if (p.operad_name() != q.operad_name())
    throw std::invalid_argument("comparing points over different operads");
  if (p.is_basepoint() || q.is_basepoint()) return p.is_basepoint() == q.is_basepoint();
  return p.label_set() == q.label_set() && p.tree() == q.tree() && p.weights() == q.weights() &&
         p.labels() == q.labels();
}

std::vector<BranchInfo> branch_set(const BarPoint& p) {
  if (p.is_basepoint()) return {};
  return stable_view(p.tree()).branches;
}

BarPoint relabel_point(const Operad& q, const BarPoint& p, const std::map<int, int>& m) {
  if (p.is_basepoint()) {
    std::vector<int> ls;
    for (int l : p.label_set()) ls.push_back(m.at(l));
    return BarPoint::basepoint(q, std::move(ls));
  }
  RawBarPoint raw{p.tree(), p.weights(), p.labels()};
  Arena a = arena_from_raw(raw);
  for (auto& n : a.nodes)
    if (n.leaf) n.leaf_label = m.at(n.leaf_label);
  RawBarPoint out = arena_export(a, q);
  return normalize(q, out);
}

BarPoint sym_act(const Operad& q, const Permutation& pi, const BarPoint& p) {
  if (pi.degree() != p.arity()) throw std::invalid_argument("permutation degree mismatch");
  std::map<int, int> m;
  for (int l : p.label_set()) m[l] = pi(l);
  return relabel_point(q, p, m);
}

BarPoint g_act(const Operad& q, int g, const BarPoint& p) {
  if (g < 0 || g >= q.group()->order()) throw std::invalid_argument("unknown group element");
  if (p.is_basepoint()) return p;
  std::vector<Elem> labels = p.labels();
  for (Elem& e : labels) e = q.act(g, e);
  return BarPoint::from_parts(q, p.tree(), p.weights(), std::move(labels));
}

// ---------------------------------------------------------------------------

MarkingView to_marking_view(const Operad& q, const BarPoint& p) {
  (void)q;
  MarkingView v;
  v.label_set = p.label_set();
  if (p.is_basepoint()) {
    v.base = true;
    return v;
  }
  StableView sv = stable_view(p.tree());
  v.stable = sv.stable;
  v.stable_w = stable_weights(p.tree(), sv, p.weights());
  for (int ov : sv.stable_to_orig) v.stable_labels.push_back(p.label(ov));
  for (const BranchInfo& b : sv.branches) {
    Rat total = v.stable_w.at(b.stable_edge);
    BranchWord w;
    for (EdgeId e : b.edges) w.weights.push_back(p.weights().at(e) / total);
    for (int uv : b.unary_vertices) w.labels.push_back(p.label(uv));
    v.words[b.stable_edge] = std::move(w);
  }
  return v;
}

BarPoint from_marking_view(const Operad& q, const MarkingView& v) {
  if (v.base) return BarPoint::basepoint(q, v.label_set);
  std::map<EdgeId, BranchChain> chains;
  for (const auto& [e, w] : v.words) {
    Rat total = v.stable_w.at(e);
    BranchChain c;
    for (const Rat& t : w.weights) c.weights.push_back(t * total);
    c.labels = w.labels;
    chains[e] = std::move(c);
  }
  return normalize(q, assemble_from_stable(q, v.stable, v.stable_labels, chains));
}

RawBarPoint assemble_from_stable(const Operad& q, const Tree& stable,
                                 const std::vector<Elem>& stable_labels,
                                 const std::map<EdgeId, BranchChain>& chains) {
  (void)q;
  Arena a;
  auto chain_of = [&](EdgeId e) -> const BranchChain& {
    auto it = chains.find(e);
    if (it == chains.end()) throw std::invalid_argument("missing chain for edge " + e.str());
    if (it->second.weights.size() != it->second.labels.size() + 1)
      throw std::invalid_argument("chain needs m+1 weights for m labels");
    return it->second;
  };

  // Creates the chain hanging below top_id along stable edge e; returns the
  // bottom node of the chain.
  auto grow_chain = [&](EdgeId e, int top_id) -> int {
    const BranchChain& c = chain_of(e);
    int below = top_id;
    a.nodes[top_id].w = c.weights.back();
    for (int i = static_cast<int>(c.labels.size()) - 1; i >= 0; --i) {
      RwNode u;
      u.label = c.labels[i];
      u.w = c.weights[i];
      u.kids = {below};
      int uid = static_cast<int>(a.nodes.size());
      a.nodes.push_back(u);
      a.nodes[below].parent = uid;
      below = uid;
    }
    return below;
  };

  // Builds the subtree above stable edge e including its chain; returns the
  // bottom-most node (what the parent should adopt as a kid).
  std::function<int(EdgeId)> build_above = [&](EdgeId e) -> int {
    int top;
    if (e.leaf) {
      RwNode n;
      n.leaf = true;
      n.leaf_label = e.id;
      top = static_cast<int>(a.nodes.size());
      a.nodes.push_back(n);
    } else {
      RwNode n;
      n.label = stable_labels.at(e.id);
      top = static_cast<int>(a.nodes.size());
      a.nodes.push_back(n);
      std::vector<int> kids;
      for (const Child& ch : stable.children(e.id)) {
        EdgeId kid_edge = ch.leaf ? EdgeId::leaf_edge(ch.id) : EdgeId::vertex_edge(ch.id);
        int kid_bottom = build_above(kid_edge);
        kids.push_back(kid_bottom);
        a.nodes[kid_bottom].parent = top;
      }
      a.nodes[top].kids = std::move(kids);
    }
    return grow_chain(e, top);
  };

  a.root = build_above(stable.is_empty() ? EdgeId::leaf_edge(stable.empty_leaf_label())
                                         : stable.root_edge());
  a.nodes[a.root].parent = -1;
  return arena_export(a, q);
}

RawBarPoint standard_representative(const SemidirectOperad& q, const BarPoint& p) {
  if (p.is_basepoint()) throw std::invalid_argument("the basepoint has no standard form");
  if (p.operad_name() != q.name()) throw std::invalid_argument("point is not over this operad");
  RawBarPoint raw{p.tree(), p.weights(), p.labels()};
  Arena a = arena_from_raw(raw);
  int n_orig = static_cast<int>(a.nodes.size());
  for (int id = 0; id < n_orig; ++id) {
    if (a.nodes[id].leaf || a.nodes[id].kids.size() < 2) continue;
    Elem pp = q.p_part(a.nodes[id].label);
    std::vector<int> gs = q.g_coords(a.nodes[id].label);
    std::vector<int> idgs(gs.size(), q.twist_group()->identity());
    a.nodes[id].label = q.make_elem(pp, idgs);
    for (std::size_t slot = 0; slot < a.nodes[id].kids.size(); ++slot) {
      int kid = a.nodes[id].kids[slot];
      RwNode u;
      u.label = q.unary(gs[slot]);
      u.w = Rat(0);
      u.parent = id;
      u.kids = {kid};
      int uid = static_cast<int>(a.nodes.size());
      a.nodes.push_back(u);
      a.nodes[kid].parent = uid;
      a.nodes[id].kids[slot] = uid;
    }
  }
  return arena_export(a, q);
}

}  // namespace opbar
