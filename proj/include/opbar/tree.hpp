#pragma once

#include "opbar/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace opbar {

/// Edges are named by their upper endpoint: the edge below vertex v is
/// vertex_edge(v), the edge above leaf l is leaf_edge(l). The root edge is
/// the edge below the root vertex, vertex_edge(0) — except on the empty
/// tree, whose single edge is named by its leaf.
struct EdgeId {
  bool leaf = false;
  int id = 0;

  static EdgeId vertex_edge(int v) { return {false, v}; }
  static EdgeId leaf_edge(int label) { return {true, label}; }

  auto operator<=>(const EdgeId&) const = default;
  std::string str() const { return (leaf ? "l" : "v") + std::to_string(id); }
};

/// A child slot of a vertex: either a leaf (id = label) or another vertex
/// (id = vertex index). Slot order is structural: slot i of a vertex is
/// input i of its operad label.
struct Child {
  bool leaf = false;
  int id = 0;
  auto operator<=>(const Child&) const = default;
};

/// Recursive builder used to describe a tree before canonicalization.
struct TreeBuilder {
  bool is_leaf = false;
  int label = 0;
  std::vector<TreeBuilder> children;

  static TreeBuilder leaf(int label) { return {true, label, {}}; }
  static TreeBuilder node(std::vector<TreeBuilder> ch) { return {false, 0, std::move(ch)}; }
};

/// Leaf-labeled rooted tree with no arity-0 vertices. Values are immutable
/// and canonical: vertices are numbered in preorder with the children of
/// every vertex sorted by minimal descendant leaf label, so structural
/// equality decides isomorphism of labeled trees. Leaf labels are distinct
/// positive integers (arbitrary finite label sets are allowed; bar points
/// at arity n use {1..n}).
///
/// The empty tree — one edge, no vertices — is represented with an empty
/// vertex list and the label of its unique leaf.
class Tree {
 public:
  Tree() = default;  // empty tree with leaf label 1
  explicit Tree(const TreeBuilder& b);

  static Tree empty(int leaf_label = 1);
  static Tree corolla(int n_leaves);  // one vertex, leaves 1..n

  bool is_empty() const { return kids_.empty(); }
  int n_vertices() const { return static_cast<int>(kids_.size()); }
  int n_leaves() const { return static_cast<int>(leaf_parent_.size() + (is_empty() ? 1 : 0)); }
  int empty_leaf_label() const { return empty_label_; }

  /// Sorted leaf label set.
  std::vector<int> labels() const;

  const std::vector<Child>& children(int v) const { return kids_.at(v); }
  int arity(int v) const { return static_cast<int>(kids_.at(v).size()); }
  bool is_stable_vertex(int v) const { return arity(v) >= 2; }
  int parent(int v) const { return parent_.at(v); }  // -1 for the root vertex
  int leaf_parent(int label) const;                  // -1 on the empty tree

  /// Every edge: the root edge first, then the rest in preorder.
  std::vector<EdgeId> edges() const;
  EdgeId root_edge() const {
    return is_empty() ? EdgeId::leaf_edge(empty_label_) : EdgeId::vertex_edge(0);
  }
  /// Vertex below an edge, or -1 when the edge is the root edge.
  int vertex_below(EdgeId e) const;

  int min_leaf(int v) const { return min_leaf_.at(v); }

  Tree relabel(const std::map<int, int>& leaf_map) const;

  /// Canonical one-line rendering, e.g. "(1,(2,3))"; doubles as a total
  /// order key for interning.
  std::string str() const;

  bool operator==(const Tree& o) const {
    return kids_ == o.kids_ && (!is_empty() || empty_label_ == o.empty_label_);
  }
  bool operator<(const Tree& o) const { return str() < o.str(); }

 private:
  void index();
  std::vector<std::vector<Child>> kids_;
  int empty_label_ = 1;
  // derived:
  std::vector<int> parent_;
  std::vector<int> min_leaf_;
  std::map<int, int> leaf_parent_;
};

/// Grafts tB onto leaf a of tA; label sets must be disjoint apart from a.
/// Grafting the empty tree just renames leaf a.
Tree graft(const Tree& ta, int a, const Tree& tb);

struct Degraft {
  Tree ta, tb;
  EdgeId split_edge;  // edge of t whose upper part became tb
};

/// The unique splitting t = ta ∘_a tb with tb labeled by B, if one exists.
/// t must be stable. B = all labels splits at the root edge (ta empty);
/// B = {b} splits at b's leaf edge (tb empty).
std::optional<Degraft> degraft_at(const Tree& t, const std::vector<int>& A, int a,
                                  const std::vector<int>& B);

// ---------------------------------------------------------------------------
// Weightings

/// Edge weights; a weighted tree is a (Tree, Weighting) pair satisfying the
/// path condition: every leaf-to-root path sums to exactly 1.
using Weighting = std::map<EdgeId, Rat>;

/// Empty result means valid; otherwise one message per violation.
std::vector<std::string> check_weighting(const Tree& t, const Weighting& w);

/// Sum of the weights on the edges below v, including v's own lower edge.
Rat altitude(const Tree& t, const Weighting& w, int v);

/// Altitude of the lower endpoint of e (0 at the root edge).
Rat lower_altitude(const Tree& t, const Weighting& w, EdgeId e);
/// Altitude of the upper endpoint of e (1 at a leaf edge, by convention).
Rat upper_altitude(const Tree& t, const Weighting& w, EdgeId e);

enum class Activity { NotYetActive, Active, NoLongerActive };

/// Three-way classification of an edge against the time parameter s:
/// not yet active while s <= lower altitude, active strictly in between,
/// no longer active once the upper altitude is <= s. Requires 0 <= s <= 1.
Activity activity(const Tree& t, const Weighting& w, EdgeId e, const Rat& s);

// ---------------------------------------------------------------------------
// Stable structure

/// A branch: an edge of the underlying stable tree, together with the chain
/// of original edges and unary vertices it comprises (root side first).
struct BranchInfo {
  EdgeId stable_edge;             // named in the stable tree's numbering
  bool is_root = false;           // contains the original root edge
  std::optional<int> leaf_label;  // set when the branch ends at a leaf
  std::vector<EdgeId> edges;      // original edges, root side first
  std::vector<int> unary_vertices;  // between those edges, root side first
  int stable_below = -1;  // original vertex index below, -1 for the root branch
  bool internal() const { return !is_root && !leaf_label; }
};

/// Underlying stable tree of t plus the branch decomposition. On a one-leaf
/// tree the stable tree is empty and the single branch is simultaneously the
/// root branch and a leaf branch.
struct StableView {
  Tree stable;
  std::vector<BranchInfo> branches;      // ordered: root branch first, then preorder
  std::vector<int> stable_to_orig;       // stable vertex index -> original vertex index
  std::map<int, int> orig_to_stable;     // inverse on stable vertices

  const BranchInfo& branch(EdgeId stable_edge) const;
  const BranchInfo& root_branch() const { return branches.front(); }
};

StableView stable_view(const Tree& t);

inline Tree underlying_stable_tree(const Tree& t) { return stable_view(t).stable; }

/// Branch sums of an original weighting, keyed by stable edge.
Weighting stable_weights(const Tree& t, const StableView& v, const Weighting& w);

}  // namespace opbar
