#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "opbar/cooperad.hpp"
#include "opbar/probes.hpp"
#include "opbar/suites.hpp"

using namespace opbar;

namespace {
std::shared_ptr<const SemidirectOperad> comz2() {
  auto z2 = builtin_group("z2");
  return make_semidirect(make_com_operad(z2), z2);
}

BarPoint simple_point(const SemidirectOperad& q) {
  // binary 3-leaf point with an internal branch
  using TB = TreeBuilder;
  Tree t(TB::node({TB::leaf(1), TB::node({TB::leaf(2), TB::leaf(3)})}));
  Weighting w{{EdgeId::vertex_edge(0), rat(1, 4)}, {EdgeId::vertex_edge(1), rat(1, 4)},
              {EdgeId::leaf_edge(1), rat(3, 4)},   {EdgeId::leaf_edge(2), rat(1, 2)},
              {EdgeId::leaf_edge(3), rat(1, 2)}};
  Elem c2 = q.base_operad()->find_elem(2, "c2").value();
  return BarPoint::from_parts(q, t, w, {q.make_elem(c2, {0, 0}), q.make_elem(c2, {1, 0})});
}
}  // namespace

TEST_CASE("request validation") {
  auto q = comz2();
  BarPoint p = simple_point(*q);
  CHECK_THROWS(decompose(*q, p, {{9}, 9, {}}));               // empty B
  CHECK_THROWS(decompose(*q, p, {{9, 1}, 9, {1, 2, 3}}));     // not disjoint
  CHECK_THROWS(decompose(*q, p, {{9, 1}, 9, {2}}));           // wrong union
  CHECK_THROWS(decompose(*q, p, {{1}, 9, {2, 3}}));           // a not in A
}

TEST_CASE("non-splitting requests hit the basepoint") {
  auto q = comz2();
  // the corolla cannot split in the middle
  Tree t = Tree::corolla(3);
  Weighting w{{EdgeId::vertex_edge(0), rat(1, 2)},
              {EdgeId::leaf_edge(1), rat(1, 2)},
              {EdgeId::leaf_edge(2), rat(1, 2)},
              {EdgeId::leaf_edge(3), rat(1, 2)}};
  Elem c3 = q->make_elem(q->base_operad()->find_elem(3, "c3").value(), {0, 0, 0});
  BarPoint p = BarPoint::from_parts(*q, t, w, {c3});
  auto [a, b] = decompose(*q, p, {{9, 3}, 9, {1, 2}});
  CHECK(a.is_basepoint());
  CHECK(b.is_basepoint());
  CHECK(a.label_set() == std::vector<int>{3, 9});
  CHECK(b.label_set() == std::vector<int>{1, 2});
}

TEST_CASE("zero-weight split branch hits the basepoint on raw input") {
  auto q = comz2();
  using TB = TreeBuilder;
  Tree t(TB::node({TB::leaf(1), TB::node({TB::leaf(2), TB::leaf(3)})}));
  // internal edge of weight zero on the raw representative
  Weighting w{{EdgeId::vertex_edge(0), rat(1, 2)}, {EdgeId::vertex_edge(1), rat(0)},
              {EdgeId::leaf_edge(1), rat(1, 2)},   {EdgeId::leaf_edge(2), rat(1, 2)},
              {EdgeId::leaf_edge(3), rat(1, 2)}};
  Elem c2 = q->base_operad()->find_elem(2, "c2").value();
  RawBarPoint raw{t, w, {q->make_elem(c2, {0, 0}), q->make_elem(c2, {0, 0})}};
  RawDecomposition rd = decompose_raw(*q, raw, {{9, 1}, 9, {2, 3}});
  CHECK(rd.base);
  // and the canonical form of the same point no longer splits there at all
  auto [a, b] = decompose(*q, normalize(*q, raw), {{9, 1}, 9, {2, 3}});
  CHECK(a.is_basepoint());
  CHECK(b.is_basepoint());
}

TEST_CASE("root degrafting returns the point itself in the B factor") {
  auto q = comz2();
  BarPoint p = simple_point(*q);
  auto [a, b] = decompose(*q, p, {{9}, 9, {1, 2, 3}});
  CHECK(equals(b, p));
  // the A factor holds the root branch word over the empty tree
  REQUIRE(!a.is_basepoint());
  CHECK(a.label_set() == std::vector<int>{9});
  CHECK(arity1_to_word(*q, a).k() == 0);  // no unary data on this root branch
}

TEST_CASE("leaf degrafting relabels and emits the leaf branch word") {
  auto q = comz2();
  BarPoint p = simple_point(*q);
  auto [a, b] = decompose(*q, p, {{9, 1, 3}, 9, {2}});
  REQUIRE(!a.is_basepoint());
  CHECK(a.label_set() == std::vector<int>{1, 3, 9});
  CHECK(equals(a, relabel_point(*q, p, {{1, 1}, {2, 9}, {3, 3}})));
  REQUIRE(!b.is_basepoint());
  CHECK(b.label_set() == std::vector<int>{2});
  CHECK(b.tree().is_empty());
}

TEST_CASE("interior degrafting duplicates the branch word") {
  auto q = comz2();
  // give the internal branch a unary label so the duplication is visible
  using TB = TreeBuilder;
  Tree t(TB::node({TB::leaf(1), TB::node({TB::node({TB::leaf(2), TB::leaf(3)})})}));
  // vertex 0 root, vertex 1 unary on the internal branch, vertex 2 upper
  Weighting w{{EdgeId::vertex_edge(0), rat(1, 4)}, {EdgeId::vertex_edge(1), rat(1, 8)},
              {EdgeId::vertex_edge(2), rat(1, 8)}, {EdgeId::leaf_edge(1), rat(3, 4)},
              {EdgeId::leaf_edge(2), rat(1, 2)},   {EdgeId::leaf_edge(3), rat(1, 2)}};
  Elem c2 = q->base_operad()->find_elem(2, "c2").value();
  BarPoint p = BarPoint::from_parts(
      *q, t, w, {q->make_elem(c2, {0, 0}), q->unary(1), q->make_elem(c2, {0, 0})});
  auto [a, b] = decompose(*q, p, {{9, 1}, 9, {2, 3}});
  REQUIRE(!a.is_basepoint());
  REQUIRE(!b.is_basepoint());
  // A side: the word moved to the new leaf branch at label 9
  auto [psia, betaa] = marking_bijection_fwd(*q, a);
  const BarWord& wa = betaa.words.at(EdgeId::leaf_edge(9));
  CHECK(wa.labels() == std::vector<int>{1});
  // B side: the word became the new root branch marking
  auto [psib, betab] = marking_bijection_fwd(*q, b);
  const BarWord& wb = betab.words.at(b.tree().root_edge());
  CHECK(wb.labels() == std::vector<int>{1});
  // weights rescaled to keep both sides on paths of length one
  CHECK(check_weighting(a.tree(), a.weights()).empty());
  CHECK(check_weighting(b.tree(), b.weights()).empty());
}

TEST_CASE("well-definedness: degrafting commutes with normalization") {
  auto q = comz2();
  Generator gen(q, 71);
  int done = 0;
  for (int i = 0; i < 300; ++i) {
    int n = 2 + gen.u(3);
    RawBarPoint raw = gen.raw_point(n, true);
    BarPoint p = normalize(*q, raw);
    // random request
    int mask = 1 + gen.u((1 << n) - 1);
    DecompositionRequest req;
    req.a = n + 1;
    req.A.push_back(n + 1);
    for (int l = 1; l <= n; ++l) ((mask >> (l - 1)) & 1 ? req.B : req.A).push_back(l);

    auto [ca, cb] = decompose(*q, p, req);
    RawDecomposition rd = decompose_raw(*q, raw, req);
    if (rd.base) {
      // degrafting the representative collapsed; the canonical route must
      // agree (the split may be absent or carry weight zero)
      CHECK(ca.is_basepoint());
      CHECK(cb.is_basepoint());
    } else {
      BarPoint na = normalize(*q, rd.first), nb = normalize(*q, rd.second);
      if (na.is_basepoint() || nb.is_basepoint()) {
        // smash absorption on the canonical route too
        CHECK(ca.is_basepoint());
        CHECK(cb.is_basepoint());
      } else {
        CHECK(equals(na, ca));
        CHECK(equals(nb, cb));
      }
    }
    ++done;
  }
  CHECK(done == 300);
}

TEST_CASE("degrafting commutes with block relabeling") {
  auto q = comz2();
  Generator gen(q, 73);
  for (int i = 0; i < 100; ++i) {
    int n = 3 + gen.u(2);
    BarPoint p = gen.point(n);
    // request B = {1..m}, and a permutation of the labels
    int m = 1 + gen.u(n - 1);
    DecompositionRequest req;
    req.a = n + 1;
    req.A.push_back(n + 1);
    for (int l = 1; l <= n; ++l) (l <= m ? req.B : req.A).push_back(l);
    auto perms = Permutation::all(n);
    Permutation s = perms[gen.u(static_cast<int>(perms.size()))];
    // relabel and build the transported request
    std::map<int, int> lm;
    for (int l = 1; l <= n; ++l) lm[l] = s(l);
    DecompositionRequest sreq;
    sreq.a = req.a;
    sreq.A.push_back(req.a);
    for (std::size_t j = 1; j < req.A.size(); ++j) sreq.A.push_back(s(req.A[j]));
    for (int bl : req.B) sreq.B.push_back(s(bl));
    auto [a1, b1] = decompose(*q, p, req);
    auto [a2, b2] = decompose(*q, relabel_point(*q, p, lm), sreq);
    // transport the factors: A keeps a fixed, B is relabeled by s
    std::map<int, int> am;
    for (int l : a1.label_set()) am[l] = l == req.a ? req.a : s(l);
    std::map<int, int> bm;
    for (int l : b1.label_set()) bm[l] = s(l);
    CHECK(equals(relabel_point(*q, a1, am), a2));
    CHECK(equals(relabel_point(*q, b1, bm), b2));
  }
}

TEST_CASE("equivariant degrafting carries the word diagonally") {
  auto q = comz2();
  const Operad& P = *q->base_operad();
  Generator gen(q, 79);
  for (int i = 0; i < 100; ++i) {
    int n = 2 + gen.u(3);
    EquivariantPoint x = gen.equivariant(n);
    int mask = 1 + gen.u((1 << n) - 1);
    DecompositionRequest req;
    req.a = n + 1;
    req.A.push_back(n + 1);
    for (int l = 1; l <= n; ++l) ((mask >> (l - 1)) & 1 ? req.B : req.A).push_back(l);
    auto [xa, xb] = decompose_equivariant(P, x, req);
    auto [pa, pb] = decompose(P, x.psi(), req);
    if (pa.is_basepoint()) CHECK(xa.is_basepoint());
    else CHECK(xa.zeta() == x.zeta());
    if (pb.is_basepoint()) CHECK(xb.is_basepoint());
    else CHECK(xb.zeta() == x.zeta());
    // acting before canonicalizing changes nothing
    for (int g = 0; g < 2; ++g) {
      EquivariantPoint xg = EquivariantPoint::make(P, act_right(x.zeta(), g), x.psi());
      auto [ya, yb] = decompose_equivariant(P, xg, req);
      CHECK(equals(ya, xa));
      CHECK(equals(yb, xb));
    }
  }
}

TEST_CASE("coassociativity on explicit small cases") {
  auto q = comz2();
  Generator gen(q, 83);
  for (int i = 0; i < 60; ++i) {
    BarPoint p = gen.point(4);
    // a full nested and a full parallel pattern
    CHECK(coassoc_nested(*q, p, {1}, 5, {2}, 6, {3, 4}));
    CHECK(coassoc_nested(*q, p, {}, 5, {}, 6, {1, 2, 3, 4}));
    CHECK(coassoc_parallel(*q, p, {1}, 5, {2, 3}, 6, {4}));
    CHECK(coassoc_parallel(*q, p, {}, 5, {1, 2}, 6, {3, 4}));
  }
}

TEST_CASE("sigma is a morphism for the degrafting structure") {
  auto q = comz2();
  const Operad& P = *q->base_operad();
  Generator gen(q, 89);
  for (int i = 0; i < 150; ++i) {
    int n = 2 + gen.u(3);
    EquivariantPoint x = gen.equivariant(n);
    BarPoint sx = sigma(*q, x);
    for (int mask = 1; mask < (1 << n); ++mask) {
      DecompositionRequest req;
      req.a = n + 1;
      req.A.push_back(n + 1);
      for (int l = 1; l <= n; ++l) ((mask >> (l - 1)) & 1 ? req.B : req.A).push_back(l);
      auto [left, right] = decompose(*q, sx, req);
      auto [xl, xr] = decompose_equivariant(P, x, req);
      CHECK(equals(left, sigma_extended(*q, xl)));
      CHECK(equals(right, sigma_extended(*q, xr)));
    }
  }
}
