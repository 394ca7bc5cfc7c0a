#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "opbar/barpoint.hpp"

#include <random>

using namespace opbar;

namespace {
TreeBuilder L(int x) { return TreeBuilder::leaf(x); }
TreeBuilder N(std::vector<TreeBuilder> ch) { return TreeBuilder::node(std::move(ch)); }

Weighting w_of(const Tree& t, std::vector<std::pair<EdgeId, Rat>> entries) {
  Weighting w;
  (void)t;
  for (auto& [e, r] : entries) w[e] = r;
  return w;
}

// Small random raw generator over com |x z2 for the confluence corpus:
// random 2- or 3-leaf shapes with optional unary chain vertices and a bias
// toward zero weights and identity labels.
struct MiniGen {
  std::mt19937_64 rng;
  std::shared_ptr<const SemidirectOperad> q;
  GroupPtr z2 = builtin_group("z2");
  explicit MiniGen(unsigned seed) : rng(seed) {
    q = make_semidirect(make_com_operad(builtin_group("z2")), builtin_group("z2"));
  }
  int pick(int m) { return static_cast<int>(rng() % m); }

  RawBarPoint sample() {
    // base stable shape: 2-corolla or 3-leaf binary
    bool binary3 = pick(2) == 0;
    TreeBuilder shape = binary3 ? N({L(1), N({L(2), L(3)})}) : N({L(1), L(2)});
    // insert unary vertices on some edges by wrapping leaves / the root
    std::function<TreeBuilder(const TreeBuilder&)> deco = [&](const TreeBuilder& b) {
      TreeBuilder out = b;
      if (!b.is_leaf) {
        out.children.clear();
        for (const auto& c : b.children) out.children.push_back(deco(c));
      }
      for (int i = 0, reps = pick(3); i < reps; ++i) out = N({out});
      return out;
    };
    TreeBuilder built = deco(shape);
    Tree t(built);
    // labels: stable get (c; gs), unary get (unit; g) with e bias
    std::vector<Elem> labels;
    for (int v = 0; v < t.n_vertices(); ++v) {
      int ar = t.arity(v);
      if (ar == 1) {
        labels.push_back(q->unary(pick(2)));
      } else {
        std::vector<int> gs;
        for (int k = 0; k < ar; ++k) gs.push_back(pick(2));
        labels.push_back(q->make_elem(q->base_operad()->find_elem(ar, "c" + std::to_string(ar)).value(), gs));
      }
    }
    // weights via altitudes in eighths, zero-biased increments
    Weighting w;
    std::vector<int> alt8(t.n_vertices());
    for (int v = 0; v < t.n_vertices(); ++v) {
      int below = t.parent(v) < 0 ? 0 : alt8[t.parent(v)];
      int step = pick(2) == 0 ? 0 : pick(8 - below + 1);
      alt8[v] = below + step;
      w[EdgeId::vertex_edge(v)] = rat(step, 8);
    }
    for (int l : t.labels()) w[EdgeId::leaf_edge(l)] = rat(8 - alt8[t.leaf_parent(l)], 8);
    return RawBarPoint{t, w, labels};
  }
};
}  // namespace

TEST_CASE("zero internal edge composes labels") {
  auto com = make_com_operad();
  Elem c2 = com->find_elem(2, "c2").value();
  // two stacked c2's joined by a zero-weight internal edge
  Tree t(N({L(1), N({L(2), L(3)})}));
  Weighting w = w_of(t, {{EdgeId::vertex_edge(0), rat(1, 2)},
                         {EdgeId::vertex_edge(1), rat(0)},
                         {EdgeId::leaf_edge(1), rat(1, 2)},
                         {EdgeId::leaf_edge(2), rat(1, 2)},
                         {EdgeId::leaf_edge(3), rat(1, 2)}});
  BarPoint p = normalize(*com, {t, w, {c2, c2}});
  REQUIRE(!p.is_basepoint());
  CHECK(p.tree() == Tree::corolla(3));
  CHECK(p.label(0) == com->find_elem(3, "c3").value());
  // agreement with whole-tree evaluation
  CHECK(p.label(0) == evaluate_tree_composition(*com, t, {c2, c2}));
}

TEST_CASE("unit-labeled unary vertex dissolves") {
  auto com = make_com_operad();
  Elem c2 = com->find_elem(2, "c2").value();
  // unary unit vertex splitting leaf 1's edge as 1/3 + 2/3 of its weight
  Tree t(N({N({L(1)}), L(2)}));
  Weighting w = w_of(t, {{EdgeId::vertex_edge(0), rat(1, 4)},
                         {EdgeId::vertex_edge(1), rat(1, 4)},
                         {EdgeId::leaf_edge(1), rat(1, 2)},
                         {EdgeId::leaf_edge(2), rat(3, 4)}});
  BarPoint p = normalize(*com, {t, w, {c2, com->unit()}});
  REQUIRE(!p.is_basepoint());
  CHECK(p.tree() == Tree::corolla(2));
  CHECK(p.weights().at(EdgeId::leaf_edge(1)) == rat(3, 4));
}

TEST_CASE("zero branches and basepoint labels collapse the point") {
  auto com = make_com_operad();
  Elem c2 = com->find_elem(2, "c2").value();
  Tree t = Tree::corolla(2);
  // leaf branch of weight zero
  BarPoint p = normalize(*com, {t, w_of(t, {{EdgeId::vertex_edge(0), rat(1)},
                                            {EdgeId::leaf_edge(1), rat(0)},
                                            {EdgeId::leaf_edge(2), rat(0)}}),
                                {c2}});
  CHECK(p.is_basepoint());
  // basepoint label
  BarPoint p2 = normalize(*com, {t, w_of(t, {{EdgeId::vertex_edge(0), rat(1, 2)},
                                             {EdgeId::leaf_edge(1), rat(1, 2)},
                                             {EdgeId::leaf_edge(2), rat(1, 2)}}),
                                 {com->base(2)}});
  CHECK(p2.is_basepoint());
  // but a one-leaf chain never collapses through its branch
  Tree c1(N({L(1)}));
  BarPoint p3 = normalize(*com, {c1, w_of(c1, {{EdgeId::vertex_edge(0), rat(1)},
                                               {EdgeId::leaf_edge(1), rat(0)}}),
                                 {com->unit()}});
  CHECK(!p3.is_basepoint());
  CHECK(p3.tree().is_empty());
}

TEST_CASE("zero end edges apply the augmentation over a semidirect product") {
  auto z2 = builtin_group("z2");
  auto q = make_semidirect(make_com_operad(z2), z2);
  // root edge 0 under a unary g vertex: g is dropped
  Tree t(N({N({L(1), L(2)})}));
  Weighting w = w_of(t, {{EdgeId::vertex_edge(0), rat(0)},
                         {EdgeId::vertex_edge(1), rat(1, 2)},
                         {EdgeId::leaf_edge(1), rat(1, 2)},
                         {EdgeId::leaf_edge(2), rat(1, 2)}});
  Elem c2ee = q->find_elem(2, "(c2;0,0)").value();
  BarPoint p = normalize(*q, {t, w, {q->unary(1), c2ee}});
  REQUIRE(!p.is_basepoint());
  CHECK(p.tree() == Tree::corolla(2));
  CHECK(p.label(0) == c2ee);
}

TEST_CASE("equality is canonical-form equality") {
  auto com = make_com_operad();
  Elem c2 = com->find_elem(2, "c2").value();
  Tree t = Tree::corolla(2);
  auto mk = [&](Rat r0) {
    return normalize(*com, {t, w_of(t, {{EdgeId::vertex_edge(0), r0},
                                        {EdgeId::leaf_edge(1), Rat(1) - r0},
                                        {EdgeId::leaf_edge(2), Rat(1) - r0}}),
                            {c2}});
  };
  CHECK(equals(mk(rat(1, 2)), mk(rat(1, 2))));
  CHECK(!equals(mk(rat(1, 2)), mk(rat(1, 3))));
  CHECK(equals(BarPoint::basepoint(*com, {1, 2}), BarPoint::basepoint(*com, {1, 2})));
  auto ass = make_ass_operad();
  CHECK_THROWS(equals(mk(rat(1, 2)), BarPoint::basepoint(*ass, {1, 2})));
}

TEST_CASE("branch sets") {
  auto com = make_com_operad();
  Elem c2 = com->find_elem(2, "c2").value();
  CHECK(branch_set(BarPoint::basepoint(*com, {1, 2})).empty());
  Tree t = Tree::corolla(2);
  BarPoint p = normalize(*com, {t, w_of(t, {{EdgeId::vertex_edge(0), rat(1, 2)},
                                            {EdgeId::leaf_edge(1), rat(1, 2)},
                                            {EdgeId::leaf_edge(2), rat(1, 2)}}),
                                {c2}});
  CHECK(branch_set(p).size() == 3);

  // an internal branch contracted to zero during normalization is absent
  Tree t2(N({L(1), N({L(2), L(3)})}));
  BarPoint p2 = normalize(*com, {t2, w_of(t2, {{EdgeId::vertex_edge(0), rat(1, 2)},
                                               {EdgeId::vertex_edge(1), rat(0)},
                                               {EdgeId::leaf_edge(1), rat(1, 2)},
                                               {EdgeId::leaf_edge(2), rat(1, 2)},
                                               {EdgeId::leaf_edge(3), rat(1, 2)}}),
                                 {c2, c2}});
  CHECK(branch_set(p2).size() == 4);  // root + three leaves on the corolla
}

TEST_CASE("marking view scales branch words to total one") {
  auto z2 = builtin_group("z2");
  auto q = make_semidirect(make_com_operad(z2), z2);
  // leaf 1's branch of weight 1/2 carrying one unary g at split 1/4 + 1/4
  Tree t(N({N({L(1)}), L(2)}));
  Weighting w = w_of(t, {{EdgeId::vertex_edge(0), rat(1, 2)},
                         {EdgeId::vertex_edge(1), rat(1, 4)},
                         {EdgeId::leaf_edge(1), rat(1, 4)},
                         {EdgeId::leaf_edge(2), rat(1, 2)}});
  Elem c2ee = q->find_elem(2, "(c2;0,0)").value();
  BarPoint p = normalize(*q, {t, w, {c2ee, q->unary(1)}});
  MarkingView v = to_marking_view(*q, p);
  BranchWord bw = v.words.at(EdgeId::leaf_edge(1));
  CHECK(bw.weights == std::vector<Rat>{rat(1, 2), rat(1, 2)});
  REQUIRE(bw.labels.size() == 1);
  CHECK(q->unary_group_elem(bw.labels[0]) == 1);
  // stable-only points have all-empty words
  for (const auto& [e, word] : to_marking_view(*q, normalize(*q, {Tree::corolla(2),
        w_of(t, {{EdgeId::vertex_edge(0), rat(1, 2)},
                 {EdgeId::leaf_edge(1), rat(1, 2)},
                 {EdgeId::leaf_edge(2), rat(1, 2)}}), {c2ee}})).words)
    CHECK(word.empty_word());
}

TEST_CASE("marking view round trips") {
  MiniGen gen(101);
  for (int i = 0; i < 200; ++i) {
    RawBarPoint raw = gen.sample();
    BarPoint p = normalize(*gen.q, raw);
    BarPoint back = from_marking_view(*gen.q, to_marking_view(*gen.q, p));
    CHECK(equals(back, p));
  }
}

TEST_CASE("standard representative") {
  auto z2 = builtin_group("z2");
  auto q = make_semidirect(make_com_operad(z2), z2);
  Tree t = Tree::corolla(2);
  Elem cg = q->find_elem(2, "(c2;0,1)").value();
  BarPoint p = normalize(*q, {t, w_of(t, {{EdgeId::vertex_edge(0), rat(1, 2)},
                                          {EdgeId::leaf_edge(1), rat(1, 2)},
                                          {EdgeId::leaf_edge(2), rat(1, 2)}}),
                              {cg}});
  RawBarPoint sr = standard_representative(*q, p);
  // stable label is now decorated by identities; the decorations moved to
  // unary vertices over zero-weight lower edges
  CHECK(sr.tree.n_vertices() == 3);
  int stable = -1;
  for (int v = 0; v < sr.tree.n_vertices(); ++v)
    if (sr.tree.arity(v) == 2) stable = v;
  REQUIRE(stable >= 0);
  CHECK(sr.labels[stable] == q->find_elem(2, "(c2;0,0)").value());
  for (int v = 0; v < sr.tree.n_vertices(); ++v)
    if (v != stable) {
      CHECK(sr.tree.arity(v) == 1);
      CHECK(sr.weights.at(EdgeId::vertex_edge(v)) == Rat(0));
    }
  // round trip and idempotence up to normalization
  CHECK(equals(normalize(*q, sr), p));
  RawBarPoint sr2 = standard_representative(*q, normalize(*q, sr));
  CHECK(sr2.tree == sr.tree);
  CHECK(sr2.weights == sr.weights);
  CHECK(sr2.labels == sr.labels);
}

TEST_CASE("actions are group actions and commute with normalization") {
  MiniGen gen(303);
  auto q = gen.q;
  auto z2 = builtin_group("z2");
  auto sign = make_sign_operad();
  // sign operad has a faithful action in even arities
  Elem p2 = sign->find_elem(2, "p2").value();
  Tree t = Tree::corolla(2);
  Weighting w = w_of(t, {{EdgeId::vertex_edge(0), rat(1, 2)},
                         {EdgeId::leaf_edge(1), rat(1, 2)},
                         {EdgeId::leaf_edge(2), rat(1, 2)}});
  BarPoint p = normalize(*sign, {t, w, {p2}});
  CHECK(equals(g_act(*sign, 0, p), p));
  CHECK(!equals(g_act(*sign, 1, p), p));
  CHECK(equals(g_act(*sign, 1, g_act(*sign, 1, p)), p));

  // sym identity and composition on a 3-leaf asymmetric point
  auto com = make_com_operad();
  Elem c2 = com->find_elem(2, "c2").value();
  Tree t3(N({L(1), N({L(2), L(3)})}));
  BarPoint p3 = normalize(*com, {t3, w_of(t3, {{EdgeId::vertex_edge(0), rat(1, 4)},
                                               {EdgeId::vertex_edge(1), rat(1, 4)},
                                               {EdgeId::leaf_edge(1), rat(3, 4)},
                                               {EdgeId::leaf_edge(2), rat(1, 2)},
                                               {EdgeId::leaf_edge(3), rat(1, 2)}}),
                                 {c2, c2}});
  CHECK(equals(sym_act(*com, Permutation::identity(3), p3), p3));
  Permutation a({2, 1, 3}), b({1, 3, 2});
  CHECK(equals(sym_act(*com, a, sym_act(*com, b, p3)), sym_act(*com, a * b, p3)));
  CHECK(!equals(sym_act(*com, a, p3), p3));
}

TEST_CASE("normalization is confluent across shuffled rule orders") {
  MiniGen gen(777);
  std::mt19937_64 shuffle_rng(1);
  for (int i = 0; i < 250; ++i) {
    RawBarPoint raw = gen.sample();
    BarPoint ref = normalize(*gen.q, raw);
    for (int k = 0; k < 5; ++k) {
      BarPoint alt = normalize(*gen.q, raw, &shuffle_rng);
      CHECK(equals(alt, ref));
    }
    // idempotence
    if (!ref.is_basepoint())
      CHECK(equals(normalize(*gen.q, {ref.tree(), ref.weights(), ref.labels()}), ref));
  }
}

TEST_CASE("branch sets are representative independent") {
  MiniGen gen(909);
  for (int i = 0; i < 150; ++i) {
    RawBarPoint raw = gen.sample();
    BarPoint p = normalize(*gen.q, raw);
    if (p.is_basepoint()) continue;
    // nonzero-weight branches of the raw representative match branch_set(p)
    StableView sv = stable_view(raw.tree);
    auto sw = stable_weights(raw.tree, sv, raw.weights);
    int nonzero = 0;
    for (const auto& b : sv.branches)
      if (!is_zero(sw.at(b.stable_edge))) ++nonzero;
    CHECK(nonzero == static_cast<int>(branch_set(p).size()));
  }
}

TEST_CASE("invalid raw points are rejected") {
  auto com = make_com_operad();
  Tree t = Tree::corolla(2);
  CHECK_THROWS(normalize(*com, {t, {}, {com->find_elem(2, "c2").value()}}));
  Weighting w = w_of(t, {{EdgeId::vertex_edge(0), rat(1, 2)},
                         {EdgeId::leaf_edge(1), rat(1, 2)},
                         {EdgeId::leaf_edge(2), rat(1, 2)}});
  CHECK_THROWS(normalize(*com, {t, w, {com->find_elem(3, "c3").value()}}));
}

TEST_CASE("semidirect moves close up on one canonical form") {
  // The identifications: a slot decoration may split as h * (h^-1 g) across
  // a zero-weight unary pair, and whole decorations may ride up or down a
  // zero edge. Every variant reached by such moves must normalize to the
  // same canonical point and report the same standard form.
  auto z4 = builtin_group("z4");
  auto q = make_semidirect(make_com_operad(z4), z4);
  std::mt19937_64 rng(1234);
  auto pick = [&](int m) { return static_cast<int>(rng() % m); };
  for (int trial = 0; trial < 120; ++trial) {
    Tree t(N({L(1), N({L(2), L(3)})}));
    Weighting w = w_of(t, {{EdgeId::vertex_edge(0), rat(1, 4)},
                           {EdgeId::vertex_edge(1), rat(1, 4)},
                           {EdgeId::leaf_edge(1), rat(3, 4)},
                           {EdgeId::leaf_edge(2), rat(1, 2)},
                           {EdgeId::leaf_edge(3), rat(1, 2)}});
    Elem c2 = q->base_operad()->find_elem(2, "c2").value();
    std::vector<Elem> labels{q->make_elem(c2, {pick(4), pick(4)}),
                             q->make_elem(c2, {pick(4), pick(4)})};
    BarPoint p = normalize(*q, {t, w, labels});
    RawBarPoint sr = standard_representative(*q, p);

    // apply random splitting moves to the marking: insert [h] immediately
    // before an existing label across a zero gap, replacing g by h^-1 g, or
    // a cancelling [h][h^-1] pair into an empty stretch
    MarkingView mv = to_marking_view(*q, p);
    for (auto& [e, word] : mv.words) {
      if (pick(2) == 0) continue;
      int h = 1 + pick(3);
      Rat t0 = word.weights.front();
      if (!word.labels.empty()) {
        int old = q->unary_group_elem(word.labels.front());
        word.labels.front() = q->unary(z4->mult(z4->inverse(h), old));
        word.labels.insert(word.labels.begin(), q->unary(h));
        word.weights.insert(word.weights.begin() + 1, Rat(0));
      } else {
        word.labels.insert(word.labels.begin(), q->unary(z4->inverse(h)));
        word.labels.insert(word.labels.begin(), q->unary(h));
        word.weights.insert(word.weights.begin() + 1, Rat(0));
        word.weights.insert(word.weights.begin() + 1, Rat(0));
        (void)t0;
      }
    }
    BarPoint rebuilt = from_marking_view(*q, mv);
    CHECK(equals(rebuilt, p));

    RawBarPoint sr2 = standard_representative(*q, rebuilt);
    CHECK(sr2.tree == sr.tree);
    CHECK(sr2.weights == sr.weights);
    CHECK(sr2.labels == sr.labels);
  }
}

TEST_CASE("the two actions commute") {
  auto sign = make_sign_operad();
  Tree t(N({L(1), N({L(2), L(3)})}));
  Weighting w = w_of(t, {{EdgeId::vertex_edge(0), rat(1, 4)},
                         {EdgeId::vertex_edge(1), rat(1, 4)},
                         {EdgeId::leaf_edge(1), rat(3, 4)},
                         {EdgeId::leaf_edge(2), rat(1, 2)},
                         {EdgeId::leaf_edge(3), rat(1, 2)}});
  for (const char* top : {"p2", "m2"})
    for (const char* bot : {"p2", "m2"}) {
      BarPoint p = normalize(*sign, {t, w, {sign->find_elem(2, top).value(),
                                            sign->find_elem(2, bot).value()}});
      for (const auto& s : Permutation::all(3))
        for (int g = 0; g < 2; ++g)
          CHECK(equals(g_act(*sign, g, sym_act(*sign, s, p)),
                       sym_act(*sign, s, g_act(*sign, g, p))));
    }
}
