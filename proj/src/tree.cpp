#include "opbar/tree.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace opbar {

namespace {

// Validating pass over a builder: distinct positive leaf labels, no arity-0
// vertices. Returns the min leaf label of the subtree.
int validate_builder(const TreeBuilder& b, std::set<int>& seen) {
  if (b.is_leaf) {
    if (b.label <= 0) throw std::invalid_argument("leaf labels must be positive");
    if (!seen.insert(b.label).second)
      throw std::invalid_argument("duplicate leaf label " + std::to_string(b.label));
    return b.label;
  }
  if (b.children.empty()) throw std::invalid_argument("arity-0 vertex");
  int m = 0;
  for (const auto& c : b.children) {
    int cm = validate_builder(c, seen);
    m = m == 0 ? cm : std::min(m, cm);
  }
  return m;
}

int builder_min_leaf(const TreeBuilder& b) {
  if (b.is_leaf) return b.label;
  int m = 0;
  for (const auto& c : b.children) {
    int cm = builder_min_leaf(c);
    m = m == 0 ? cm : std::min(m, cm);
  }
  return m;
}

void sort_builder(TreeBuilder& b) {
  if (b.is_leaf) return;
  for (auto& c : b.children) sort_builder(c);
  // Sibling min-leaf keys are distinct (leaf sets are disjoint), so this
  // order is unambiguous.
  std::sort(b.children.begin(), b.children.end(),
            [](const TreeBuilder& x, const TreeBuilder& y) {
              return builder_min_leaf(x) < builder_min_leaf(y);
            });
}

TreeBuilder export_subtree(const Tree& t, int v) {
  TreeBuilder b = TreeBuilder::node({});
  for (const Child& c : t.children(v))
    b.children.push_back(c.leaf ? TreeBuilder::leaf(c.id) : export_subtree(t, c.id));
  return b;
}

TreeBuilder export_builder(const Tree& t) {
  if (t.is_empty()) return TreeBuilder::leaf(t.empty_leaf_label());
  return export_subtree(t, 0);
}

}  // namespace

Tree::Tree(const TreeBuilder& b) {
  std::set<int> seen;
  validate_builder(b, seen);
  if (b.is_leaf) {
    empty_label_ = b.label;
    index();
    return;
  }
  TreeBuilder sorted = b;
  sort_builder(sorted);
  // Preorder allocation.
  std::function<int(const TreeBuilder&)> alloc = [&](const TreeBuilder& n) {
    int v = static_cast<int>(kids_.size());
    kids_.emplace_back();
    kids_[v].reserve(n.children.size());
    for (const auto& c : n.children) {
      if (c.is_leaf) kids_[v].push_back({true, c.label});
      else kids_[v].push_back({false, 0});  // patched below
    }
    for (std::size_t i = 0; i < n.children.size(); ++i)
      if (!n.children[i].is_leaf) kids_[v][i].id = alloc(n.children[i]);
    return v;
  };
  alloc(sorted);
  index();
}

void Tree::index() {
  parent_.assign(kids_.size(), -1);
  min_leaf_.assign(kids_.size(), 0);
  leaf_parent_.clear();
  for (int v = static_cast<int>(kids_.size()) - 1; v >= 0; --v) {
    int m = 0;
    for (const Child& c : kids_[v]) {
      int cm;
      if (c.leaf) {
        leaf_parent_[c.id] = v;
        cm = c.id;
      } else {
        parent_[c.id] = v;
        cm = min_leaf_[c.id];
      }
      m = m == 0 ? cm : std::min(m, cm);
    }
    min_leaf_[v] = m;
  }
}

Tree Tree::empty(int leaf_label) { return Tree(TreeBuilder::leaf(leaf_label)); }

Tree Tree::corolla(int n_leaves) {
  std::vector<TreeBuilder> ch;
  for (int i = 1; i <= n_leaves; ++i) ch.push_back(TreeBuilder::leaf(i));
  return Tree(TreeBuilder::node(std::move(ch)));
}

std::vector<int> Tree::labels() const {
  if (is_empty()) return {empty_label_};
  std::vector<int> out;
  out.reserve(leaf_parent_.size());
  for (const auto& [l, v] : leaf_parent_) out.push_back(l);
  return out;  // map iteration is already sorted
}

int Tree::leaf_parent(int label) const {
  if (is_empty()) {
    if (label != empty_label_) throw std::invalid_argument("unknown leaf label");
    return -1;
  }
  auto it = leaf_parent_.find(label);
  if (it == leaf_parent_.end()) throw std::invalid_argument("unknown leaf label");
  return it->second;
}

std::vector<EdgeId> Tree::edges() const {
  if (is_empty()) return {root_edge()};
  std::vector<EdgeId> out;
  std::function<void(int)> walk = [&](int v) {
    out.push_back(EdgeId::vertex_edge(v));
    for (const Child& c : kids_[v]) {
      if (c.leaf) out.push_back(EdgeId::leaf_edge(c.id));
      else walk(c.id);
    }
  };
  walk(0);
  return out;
}

int Tree::vertex_below(EdgeId e) const {
  if (e.leaf) return leaf_parent(e.id);
  if (e.id < 0 || e.id >= n_vertices()) throw std::invalid_argument("unknown vertex");
  return parent_[e.id];
}

Tree Tree::relabel(const std::map<int, int>& leaf_map) const {
  std::function<TreeBuilder(const TreeBuilder&)> map_b = [&](const TreeBuilder& b) {
    if (b.is_leaf) {
      auto it = leaf_map.find(b.label);
      if (it == leaf_map.end()) throw std::invalid_argument("relabel: missing label");
      return TreeBuilder::leaf(it->second);
    }
    TreeBuilder n = TreeBuilder::node({});
    for (const auto& c : b.children) n.children.push_back(map_b(c));
    return n;
  };
  return Tree(map_b(export_builder(*this)));
}

std::string Tree::str() const {
  std::function<std::string(const TreeBuilder&)> render = [&](const TreeBuilder& b) {
    if (b.is_leaf) return std::to_string(b.label);
    std::string s = "(";
    for (std::size_t i = 0; i < b.children.size(); ++i) {
      if (i) s += ',';
      s += render(b.children[i]);
    }
    return s + ")";
  };
  return render(export_builder(*this));
}

Tree graft(const Tree& ta, int a, const Tree& tb) {
  auto la = ta.labels();
  if (std::find(la.begin(), la.end(), a) == la.end())
    throw std::invalid_argument("graft: unknown leaf label " + std::to_string(a));
  for (int l : tb.labels())
    if (l != a && std::find(la.begin(), la.end(), l) != la.end())
      throw std::invalid_argument("graft: label sets not disjoint");
  std::function<TreeBuilder(const TreeBuilder&)> splice = [&](const TreeBuilder& b) {
    if (b.is_leaf) return b.label == a ? export_builder(tb) : b;
    TreeBuilder n = TreeBuilder::node({});
    for (const auto& c : b.children) n.children.push_back(splice(c));
    return n;
  };
  return Tree(splice(export_builder(ta)));
}

std::optional<Degraft> degraft_at(const Tree& t, const std::vector<int>& A, int a,
                                  const std::vector<int>& B) {
  for (int v = 0; v < t.n_vertices(); ++v)
    if (!t.is_stable_vertex(v)) throw std::invalid_argument("degraft_at: tree not stable");
  std::set<int> sa(A.begin(), A.end()), sb(B.begin(), B.end());
  if (!sa.count(a)) throw std::invalid_argument("degraft_at: a not in A");
  if (sa.empty() || sb.empty()) throw std::invalid_argument("degraft_at: empty label set");
  for (int x : sb)
    if (sa.count(x)) throw std::invalid_argument("degraft_at: A and B intersect");
  std::set<int> expect = sa;
  expect.erase(a);
  expect.insert(sb.begin(), sb.end());
  auto lbl = t.labels();
  if (std::set<int>(lbl.begin(), lbl.end()) != expect)
    throw std::invalid_argument("degraft_at: tree is not labeled by A u_a B");

  if (sb == expect) {
    // Split at the root edge: the A factor is the empty tree on {a}.
    return Degraft{Tree::empty(a), t, t.root_edge()};
  }
  if (sb.size() == 1) {
    int b = *sb.begin();
    return Degraft{t.relabel([&] {
                     std::map<int, int> m;
                     for (int l : lbl) m[l] = (l == b) ? a : l;
                     return m;
                   }()),
                   Tree::empty(b), EdgeId::leaf_edge(b)};
  }
  // Interior split: the unique vertex whose leaf set is exactly B, if any.
  std::vector<std::set<int>> below(t.n_vertices());
  for (int v = t.n_vertices() - 1; v >= 0; --v)
    for (const Child& c : t.children(v)) {
      if (c.leaf) below[v].insert(c.id);
      else below[v].insert(below[c.id].begin(), below[c.id].end());
    }
  for (int v = 1; v < t.n_vertices(); ++v) {
    if (below[v] != sb) continue;
    std::function<TreeBuilder(int)> rebuild = [&](int u) {
      TreeBuilder n = TreeBuilder::node({});
      for (const Child& c : t.children(u)) {
        if (c.leaf) n.children.push_back(TreeBuilder::leaf(c.id));
        else if (c.id == v) n.children.push_back(TreeBuilder::leaf(a));
        else n.children.push_back(rebuild(c.id));
      }
      return n;
    };
    return Degraft{Tree(rebuild(0)), Tree(export_subtree(t, v)), EdgeId::vertex_edge(v)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::vector<std::string> check_weighting(const Tree& t, const Weighting& w) {
  std::vector<std::string> bad;
  auto es = t.edges();
  std::set<EdgeId> eset(es.begin(), es.end());
  for (EdgeId e : es) {
    auto it = w.find(e);
    if (it == w.end()) {
      bad.push_back("missing weight on edge " + e.str());
      continue;
    }
    if (!in_unit_interval(it->second))
      bad.push_back("weight outside [0,1] on edge " + e.str());
  }
  for (const auto& [e, r] : w)
    if (!eset.count(e)) bad.push_back("weight on nonexistent edge " + e.str());
  if (!bad.empty()) return bad;
  for (int l : t.labels()) {
    Rat sum = w.at(EdgeId::leaf_edge(l));
    if (!t.is_empty())
      for (int v = t.leaf_parent(l); v >= 0; v = t.parent(v)) sum += w.at(EdgeId::vertex_edge(v));
    if (sum != Rat(1))
      bad.push_back("path through leaf " + std::to_string(l) + " sums to " + rat_to_string(sum));
  }
  return bad;
}

Rat altitude(const Tree& t, const Weighting& w, int v) {
  Rat sum(0);
  for (int u = v; u >= 0; u = t.parent(u)) sum += w.at(EdgeId::vertex_edge(u));
  return sum;
}

Rat lower_altitude(const Tree& t, const Weighting& w, EdgeId e) {
  int v = t.vertex_below(e);
  return v < 0 ? Rat(0) : altitude(t, w, v);
}

Rat upper_altitude(const Tree& t, const Weighting& w, EdgeId e) {
  if (e.leaf) return Rat(1);
  return altitude(t, w, e.id);
}

Activity activity(const Tree& t, const Weighting& w, EdgeId e, const Rat& s) {
  if (!in_unit_interval(s)) throw std::invalid_argument("activity: s outside [0,1]");
  if (upper_altitude(t, w, e) <= s) return Activity::NoLongerActive;
  if (s <= lower_altitude(t, w, e)) return Activity::NotYetActive;
  return Activity::Active;
}

// ---------------------------------------------------------------------------

const BranchInfo& StableView::branch(EdgeId stable_edge) const {
  for (const auto& b : branches)
    if (b.stable_edge == stable_edge) return b;
  throw std::invalid_argument("no branch with stable edge " + stable_edge.str());
}

StableView stable_view(const Tree& t) {
  StableView out;
  if (t.is_empty()) {
    out.stable = t;
    BranchInfo b;
    b.stable_edge = EdgeId::leaf_edge(t.empty_leaf_label());
    b.is_root = true;
    b.leaf_label = t.empty_leaf_label();
    b.edges = {b.stable_edge};
    out.branches.push_back(std::move(b));
    return out;
  }

  // Chase a chain upward from `start` until a stable vertex or leaf.
  struct ChainEnd {
    bool at_leaf;
    int id;  // leaf label or original vertex index
  };
  auto chase = [&](EdgeId start, BranchInfo& b) -> ChainEnd {
    EdgeId e = start;
    b.edges.push_back(e);
    while (true) {
      if (e.leaf) return {true, e.id};
      int v = e.id;
      if (t.is_stable_vertex(v)) return {false, v};
      b.unary_vertices.push_back(v);
      const Child& c = t.children(v)[0];
      e = c.leaf ? EdgeId::leaf_edge(c.id) : EdgeId::vertex_edge(c.id);
      b.edges.push_back(e);
    }
  };

  // Discovery order matches the canonical preorder of the stable tree, since
  // sibling min-leaf order is inherited from t.
  std::vector<BranchInfo> branches;
  std::function<TreeBuilder(EdgeId, int)> descend = [&](EdgeId start,
                                                        int stable_below) -> TreeBuilder {
    BranchInfo b;
    b.stable_below = stable_below;
    b.is_root = (start == t.root_edge());
    ChainEnd end = chase(start, b);
    std::size_t slot = branches.size();
    branches.push_back(std::move(b));
    if (end.at_leaf) {
      branches[slot].leaf_label = end.id;
      branches[slot].stable_edge = EdgeId::leaf_edge(end.id);
      return TreeBuilder::leaf(end.id);
    }
    int v = end.id;
    int stable_idx = static_cast<int>(out.stable_to_orig.size());
    out.stable_to_orig.push_back(v);
    out.orig_to_stable[v] = stable_idx;
    branches[slot].stable_edge = EdgeId::vertex_edge(stable_idx);
    TreeBuilder n = TreeBuilder::node({});
    for (const Child& c : t.children(v))
      n.children.push_back(descend(c.leaf ? EdgeId::leaf_edge(c.id) : EdgeId::vertex_edge(c.id), v));
    return n;
  };

  TreeBuilder sb = descend(t.root_edge(), -1);
  out.stable = Tree(sb);
  out.branches = std::move(branches);
  if (out.stable.is_empty()) {
    // One-leaf tree: the unique branch is both root and leaf.
    out.branches[0].is_root = true;
  }
  return out;
}

Weighting stable_weights(const Tree& t, const StableView& v, const Weighting& w) {
  (void)t;
  Weighting out;
  for (const auto& b : v.branches) {
    Rat sum(0);
    for (EdgeId e : b.edges) sum += w.at(e);
    out[b.stable_edge] = sum;
  }
  return out;
}

}  // namespace opbar
