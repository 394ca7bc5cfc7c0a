#pragma once

// Internal mutable tree arena shared by the rewriting engine and the
// degrafting surgery. Node identity is stable across edits; kids stay in
// slot order; each node carries the weight of its lower edge.

#include "opbar/barpoint.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

namespace opbar::internal {

struct RwNode {
  bool leaf = false;
  int leaf_label = 0;
  Elem label;
  Rat w;
  int parent = -1;
  std::vector<int> kids;
};

struct Arena {
  std::vector<RwNode> nodes;
  int root = -1;

  bool is_vertex(int id) const { return !nodes[id].leaf; }
  int arity(int id) const { return static_cast<int>(nodes[id].kids.size()); }
  int slot_of(int parent, int kid) const {
    const auto& ks = nodes[parent].kids;
    for (std::size_t i = 0; i < ks.size(); ++i)
      if (ks[i] == kid) return static_cast<int>(i);
    throw std::logic_error("kid not found");
  }
  void replace_kid(int parent, int old_kid, int new_kid) {
    if (parent < 0) {
      root = new_kid;
      nodes[new_kid].parent = -1;
      return;
    }
    nodes[parent].kids[slot_of(parent, old_kid)] = new_kid;
    nodes[new_kid].parent = parent;
  }
  int find_leaf(int label) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].leaf && nodes[i].leaf_label == label) return static_cast<int>(i);
    throw std::logic_error("no leaf with label " + std::to_string(label));
  }
  // Node whose lower edge is e, in the indexing of the source raw point:
  // vertices keep their tree indices.
  int node_of_edge(EdgeId e) const { return e.leaf ? find_leaf(e.id) : e.id; }
};

// Vertices take indices 0..V-1 as in the tree; leaves are appended after.
Arena arena_from_raw(const RawBarPoint& raw);

// Canonically ordered export; a preorder walk of the sorted arena matches
// the resulting tree's vertex numbering, so weights and labels transfer.
// Sorting a vertex's kids permutes its slots, so the label rides along
// through the symmetric action.
RawBarPoint arena_export(Arena& a, const Operad& q);

std::vector<int> reachable_nodes(const Arena& a);

}  // namespace opbar::internal
