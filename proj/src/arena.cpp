#include "arena_internal.hpp"

namespace opbar::internal {

Arena arena_from_raw(const RawBarPoint& raw) {
  Arena a;
  const Tree& t = raw.tree;
  if (t.is_empty()) {
    RwNode n;
    n.leaf = true;
    n.leaf_label = t.empty_leaf_label();
    n.w = raw.weights.at(EdgeId::leaf_edge(n.leaf_label));
    a.nodes.push_back(n);
    a.root = 0;
    return a;
  }
  for (int v = 0; v < t.n_vertices(); ++v) {
    RwNode n;
    n.label = raw.labels[v];
    n.w = raw.weights.at(EdgeId::vertex_edge(v));
    n.parent = t.parent(v);
    a.nodes.push_back(n);
  }
  for (int v = 0; v < t.n_vertices(); ++v)
    for (const Child& c : t.children(v)) {
      if (c.leaf) {
        RwNode n;
        n.leaf = true;
        n.leaf_label = c.id;
        n.w = raw.weights.at(EdgeId::leaf_edge(c.id));
        n.parent = v;
        a.nodes[v].kids.push_back(static_cast<int>(a.nodes.size()));
        a.nodes.push_back(n);
      } else {
        a.nodes[v].kids.push_back(c.id);
      }
    }
  a.root = 0;
  return a;
}

namespace {
int arena_min_leaf(const Arena& a, int id, std::vector<int>& memo) {
  if (memo[id]) return memo[id];
  int m;
  if (a.nodes[id].leaf) m = a.nodes[id].leaf_label;
  else {
    m = 0;
    for (int k : a.nodes[id].kids) {
      int km = arena_min_leaf(a, k, memo);
      m = m == 0 ? km : std::min(m, km);
    }
  }
  return memo[id] = m;
}
}  // namespace

RawBarPoint arena_export(Arena& a, const Operad& q) {
  std::vector<int> memo(a.nodes.size(), 0);
  std::function<void(int)> sort_kids = [&](int id) {
    auto& ks = a.nodes[id].kids;
    std::vector<int> order(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return arena_min_leaf(a, ks[x], memo) < arena_min_leaf(a, ks[y], memo);
    });
    bool moved = false;
    std::vector<int> img(ks.size());
    std::vector<int> sorted(ks.size());
    for (std::size_t np = 0; np < order.size(); ++np) {
      img[order[np]] = static_cast<int>(np) + 1;  // old slot -> new slot
      sorted[np] = ks[order[np]];
      moved = moved || order[np] != static_cast<int>(np);
    }
    if (moved && !a.nodes[id].label.is_base())
      a.nodes[id].label = q.sym(Permutation(img), a.nodes[id].label);
    ks = std::move(sorted);
    for (int k : ks)
      if (!a.nodes[k].leaf) sort_kids(k);
  };
  RawBarPoint out;
  if (a.nodes[a.root].leaf) {
    out.tree = Tree::empty(a.nodes[a.root].leaf_label);
    out.weights[out.tree.root_edge()] = a.nodes[a.root].w;
    return out;
  }
  sort_kids(a.root);
  std::function<TreeBuilder(int)> build = [&](int id) -> TreeBuilder {
    if (a.nodes[id].leaf) return TreeBuilder::leaf(a.nodes[id].leaf_label);
    TreeBuilder b = TreeBuilder::node({});
    for (int k : a.nodes[id].kids) b.children.push_back(build(k));
    return b;
  };
  out.tree = Tree(build(a.root));
  int next = 0;
  out.labels.resize(out.tree.n_vertices());
  std::function<void(int)> emit = [&](int id) {
    const RwNode& n = a.nodes[id];
    if (n.leaf) {
      out.weights[EdgeId::leaf_edge(n.leaf_label)] = n.w;
      return;
    }
    int v = next++;
    out.labels[v] = n.label;
    out.weights[EdgeId::vertex_edge(v)] = n.w;
    for (int k : n.kids) emit(k);
  };
  emit(a.root);
  return out;
}

std::vector<int> reachable_nodes(const Arena& a) {
  std::vector<int> out;
  std::function<void(int)> walk = [&](int id) {
    out.push_back(id);
    for (int k : a.nodes[id].kids) walk(k);
  };
  walk(a.root);
  return out;
}

}  // namespace opbar::internal
