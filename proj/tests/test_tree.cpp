#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "opbar/tree.hpp"

using namespace opbar;

namespace {
TreeBuilder L(int x) { return TreeBuilder::leaf(x); }
TreeBuilder N(std::vector<TreeBuilder> ch) { return TreeBuilder::node(std::move(ch)); }

// A unary chain of `k` vertices over one leaf.
Tree chain(int k, int label = 1) {
  TreeBuilder b = L(label);
  for (int i = 0; i < k; ++i) b = N({b});
  return Tree(b);
}
}  // namespace

TEST_CASE("canonical form sorts children by minimal leaf") {
  Tree a(N({L(3), N({L(1), L(2)})}));
  Tree b(N({N({L(2), L(1)}), L(3)}));
  CHECK(a == b);
  CHECK(a.str() == "((1,2),3)");
  CHECK(a.n_vertices() == 2);
  CHECK(a.n_leaves() == 3);
}

TEST_CASE("empty tree") {
  Tree e = Tree::empty(1);
  CHECK(e.is_empty());
  CHECK(e.n_vertices() == 0);
  CHECK(e.n_leaves() == 1);
  CHECK(e.root_edge() == EdgeId::leaf_edge(1));
  CHECK(e.edges().size() == 1);
  CHECK_THROWS(Tree(N({})));  // arity-0 vertex
}

TEST_CASE("underlying stable tree") {
  // A corolla is already stable.
  Tree c3 = Tree::corolla(3);
  CHECK(underlying_stable_tree(c3) == c3);

  // A unary chain over one leaf flattens to the empty tree.
  CHECK(underlying_stable_tree(chain(4)) == Tree::empty(1));

  // A 2-corolla with one unary vertex inserted on leaf 1's edge.
  Tree t(N({N({L(1)}), L(2)}));
  CHECK(underlying_stable_tree(t) == Tree::corolla(2));
}

TEST_CASE("stable view is idempotent") {
  Tree t(N({N({N({L(1)}), L(3)}), N({L(2)})}));
  Tree s = underlying_stable_tree(t);
  CHECK(underlying_stable_tree(s) == s);
}

TEST_CASE("branch counts") {
  CHECK(stable_view(Tree::corolla(2)).branches.size() == 3);
  CHECK(stable_view(chain(3)).branches.size() == 1);
  // Binary tree with 3 leaves: two stable vertices, 5 branches (one internal).
  Tree t(N({L(1), N({L(2), L(3)})}));
  auto v = stable_view(t);
  CHECK(v.branches.size() == 5);
  int internal = 0;
  for (const auto& b : v.branches) internal += b.internal();
  CHECK(internal == 1);
}

TEST_CASE("one-leaf tree has a single branch that is both root and leaf") {
  auto v = stable_view(chain(2, 7));
  REQUIRE(v.branches.size() == 1);
  CHECK(v.branches[0].is_root);
  CHECK(v.branches[0].leaf_label == 7);
  CHECK(v.branches[0].edges.size() == 3);
  CHECK(v.stable.is_empty());
}

TEST_CASE("graft basics") {
  // graft(2-corolla, 2, 2-corolla on {2,3}) is the 3-leaf binary tree.
  Tree c2 = Tree::corolla(2);
  Tree c2b(N({L(2), L(3)}));
  CHECK(graft(c2, 2, c2b) == Tree(N({L(1), N({L(2), L(3)})})));

  // Grafting the empty tree renames the leaf.
  CHECK(graft(c2, 2, Tree::empty(9)) == Tree(N({L(1), L(9)})));
  CHECK(graft(Tree::empty(5), 5, c2) == c2);

  // 3-corolla onto 3-corolla at leaf 1: 5 leaves, one internal edge.
  Tree c3 = Tree::corolla(3);
  Tree c3b(N({L(1), L(4), L(5)}));
  Tree g = graft(Tree(N({L(1), L(2), L(3)})).relabel({{1, 1}, {2, 2}, {3, 3}}), 1,
                 Tree(N({L(4), L(5), L(6)})));
  CHECK(g.n_leaves() == 5);
  CHECK(stable_view(g).branches.size() == 7);  // 6 external + 1 internal

  CHECK_THROWS(graft(c2, 7, c2b));                    // unknown leaf
  CHECK_THROWS(graft(c2, 2, Tree(N({L(1), L(4)}))));  // label clash
}

TEST_CASE("degraft inverts graft") {
  Tree ta(N({L(1), L(9)}));
  Tree tb(N({L(2), L(3)}));
  Tree t = graft(ta, 9, tb);
  auto d = degraft_at(t, {1, 9}, 9, {2, 3});
  REQUIRE(d.has_value());
  CHECK(d->ta == ta);
  CHECK(d->tb == tb);

  // A corolla admits no interior splitting.
  CHECK(!degraft_at(Tree::corolla(3), {9, 1}, 9, {2, 3}).has_value());

  // Root split: A = {a}.
  auto r = degraft_at(t, {9}, 9, {1, 2, 3});
  REQUIRE(r.has_value());
  CHECK(r->ta == Tree::empty(9));
  CHECK(r->tb == t);
  CHECK(r->split_edge == t.root_edge());

  // Leaf split: B = {b}.
  auto l = degraft_at(t, {1, 9, 3}, 9, {2});
  REQUIRE(l.has_value());
  CHECK(l->tb == Tree::empty(2));
  CHECK(l->ta == Tree(N({L(1), N({L(9), L(3)})})));
}

TEST_CASE("weighting validity") {
  Tree t = Tree::corolla(2);
  Weighting w{{EdgeId::vertex_edge(0), rat(1, 2)},
              {EdgeId::leaf_edge(1), rat(1, 2)},
              {EdgeId::leaf_edge(2), rat(1, 2)}};
  CHECK(check_weighting(t, w).empty());
  w[EdgeId::leaf_edge(2)] = rat(1, 3);
  CHECK(!check_weighting(t, w).empty());

  Weighting we{{EdgeId::leaf_edge(1), rat(1)}};
  CHECK(check_weighting(Tree::empty(1), we).empty());
}

TEST_CASE("altitude and activity") {
  // Root vertex altitude equals the root edge weight.
  Tree t(N({L(1), N({L(2), L(3)})}));
  Weighting w{{EdgeId::vertex_edge(0), rat(1, 4)}, {EdgeId::vertex_edge(1), rat(1, 2)},
              {EdgeId::leaf_edge(1), rat(3, 4)},   {EdgeId::leaf_edge(2), rat(1, 4)},
              {EdgeId::leaf_edge(3), rat(1, 4)}};
  REQUIRE(check_weighting(t, w).empty());
  CHECK(altitude(t, w, 0) == rat(1, 4));
  CHECK(altitude(t, w, 1) == rat(3, 4));

  // Root edge of weight 1/2 is no longer active at s = 1/2.
  Tree c1(N({L(1)}));
  Weighting wc{{EdgeId::vertex_edge(0), rat(1, 2)}, {EdgeId::leaf_edge(1), rat(1, 2)}};
  CHECK(activity(c1, wc, EdgeId::vertex_edge(0), rat(1, 2)) == Activity::NoLongerActive);

  // Interior edge with altitudes 1/4 and 3/4 is active at 1/2.
  CHECK(lower_altitude(t, w, EdgeId::vertex_edge(1)) == rat(1, 4));
  CHECK(upper_altitude(t, w, EdgeId::vertex_edge(1)) == rat(3, 4));
  CHECK(activity(t, w, EdgeId::vertex_edge(1), rat(1, 2)) == Activity::Active);
  CHECK(activity(t, w, EdgeId::vertex_edge(1), rat(1, 8)) == Activity::NotYetActive);
  CHECK(activity(t, w, EdgeId::vertex_edge(1), rat(7, 8)) == Activity::NoLongerActive);
  CHECK_THROWS(activity(t, w, EdgeId::vertex_edge(1), rat(9, 8)));

  // Monotone through the three states as s grows.
  int state = 0;
  for (int k = 0; k <= 8; ++k) {
    Activity a = activity(t, w, EdgeId::vertex_edge(1), rat(k, 8));
    int as = a == Activity::NotYetActive ? 0 : (a == Activity::Active ? 1 : 2);
    CHECK(as >= state);
    state = as;
  }
}

TEST_CASE("stable weights add branch chains") {
  // chain of two unary vertices between root and a 2-corolla
  Tree t(N({N({N({L(1), L(2)})})}));
  Weighting w{{EdgeId::vertex_edge(0), rat(1, 8)}, {EdgeId::vertex_edge(1), rat(1, 8)},
              {EdgeId::vertex_edge(2), rat(1, 4)}, {EdgeId::leaf_edge(1), rat(1, 2)},
              {EdgeId::leaf_edge(2), rat(1, 2)}};
  REQUIRE(check_weighting(t, w).empty());
  auto v = stable_view(t);
  auto sw = stable_weights(t, v, w);
  CHECK(sw.at(v.stable.root_edge()) == rat(1, 2));
  CHECK(sw.at(EdgeId::leaf_edge(1)) == rat(1, 2));
}
