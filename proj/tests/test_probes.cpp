#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "opbar/probes.hpp"
#include "opbar/suites.hpp"

using namespace opbar;

namespace {
std::shared_ptr<const SemidirectOperad> comz2() {
  auto z2 = builtin_group("z2");
  return make_semidirect(make_com_operad(z2), z2);
}
}  // namespace

TEST_CASE("generator streams are deterministic and within bounds") {
  auto q = comz2();
  Generator a(q, 99), b(q, 99);
  for (int i = 0; i < 50; ++i) {
    int n = 2 + a.u(4);
    int n2 = 2 + b.u(4);
    REQUIRE(n == n2);
    RawBarPoint ra = a.raw_point(n, true), rb = b.raw_point(n, true);
    CHECK(ra.tree == rb.tree);
    CHECK(ra.weights == rb.weights);
    CHECK(ra.labels == rb.labels);
    CHECK(ra.tree.n_leaves() <= 6);
    CHECK(ra.tree.n_vertices() <= 8);
    CHECK(check_weighting(ra.tree, ra.weights).empty());
    for (const auto& [e, w] : ra.weights) {
      CHECK(w.denominator() <= 64);
    }
  }
  // different seeds diverge quickly
  Generator c(q, 100);
  bool differs = false;
  for (int i = 0; i < 10 && !differs; ++i)
    differs = !(a.raw_point(3, true).weights == c.raw_point(3, true).weights);
  CHECK(differs);
}

TEST_CASE("path validation catches broken families") {
  auto q = comz2();
  Generator gen(q, 7);
  auto cases = continuity_suite(gen);
  CHECK(cases.size() >= 30);
  for (const auto& c : cases) {
    const Operad& dom = c.path.has_word ? *q->base_operad() : static_cast<const Operad&>(*q);
    CHECK(validate_path(dom, c.path, 10).empty());
  }
  // break one: total mass drifts with eps
  DegenerationPath bad = cases.front().path;
  bad.weights.begin()->second.c1 += Rat(1);
  const Operad& dom = bad.has_word ? *q->base_operad() : static_cast<const Operad&>(*q);
  CHECK(!validate_path(dom, bad, 10).empty());
}

TEST_CASE("continuity cases cover every class for every map") {
  auto q = comz2();
  Generator gen(q, 7);
  auto cases = continuity_suite(gen);
  auto has = [&](MapUnderProbe::Kind k, const std::string& frag) {
    for (const auto& c : cases)
      if (c.map.kind == k && c.path.name.find(frag) != std::string::npos) return true;
    return false;
  };
  for (auto kind : {MapUnderProbe::Normalize, MapUnderProbe::Pi, MapUnderProbe::Homotopy,
                    MapUnderProbe::Decompose}) {
    CHECK(has(kind, "leaf branch to zero"));
    CHECK(has(kind, "root branch to zero"));
    CHECK(has(kind, "internal branch to zero"));
    CHECK(has(kind, "edge inside a branch"));
    CHECK(has(kind, "edge below a stable vertex"));
    CHECK(has(kind, "edge below the least stable vertex"));
    CHECK(has(kind, "constant path"));
  }
  CHECK(has(MapUnderProbe::Sigma, "point leaf branch to zero"));
  CHECK(has(MapUnderProbe::Sigma, "point root branch to zero"));
  CHECK(has(MapUnderProbe::Sigma, "point internal branch to zero"));
  CHECK(has(MapUnderProbe::Sigma, "word root edge to zero"));
  CHECK(has(MapUnderProbe::Sigma, "word interior edge to zero"));
  CHECK(has(MapUnderProbe::Sigma, "constant path"));
}

TEST_CASE("continuity probes pass on the bundled pairs") {
  for (const auto& q : bundled_pairs()) {
    Generator gen(q, 7);
    for (const auto& c : continuity_suite(gen)) {
      ProbeReport r = continuity_probe(*q, c.map, c.path, 10);
      INFO(q->name(), ": ", r.name, ": ", r.detail);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("confluence probe reports determinism") {
  auto q = comz2();
  Generator gen(q, 13);
  for (int i = 0; i < 100; ++i) {
    RawBarPoint raw = gen.raw_point(1 + gen.u(4), true);
    ProbeReport r = confluence_probe(*q, raw, 5, 1000 + i);
    CHECK(r.pass);
  }
  // already-canonical input is trivially stable
  BarPoint p = gen.point(3);
  ProbeReport r = confluence_probe(*q, RawBarPoint{p.tree(), p.weights(), p.labels()}, 5, 5);
  CHECK(r.pass);
}

TEST_CASE("reduced membership probe") {
  for (const auto& q : bundled_pairs())
    for (int n = 2; n <= 4; ++n) {
      ProbeReport r = reduced_membership_probe(*q, n, 40, 17);
      INFO(q->name(), ": ", r.detail);
      CHECK(r.pass);
    }
}

TEST_CASE("grafting and degrafting invert on random stable pairs") {
  auto q = comz2();
  Generator gen(q, 57);
  for (int i = 0; i < 200; ++i) {
    int na = 2 + gen.u(3), nb = 2 + gen.u(3);
    Tree ta = gen.stable_tree(na);
    Tree tb = gen.stable_tree(nb);
    // move tb's labels to a fresh alphabet and pick a graft leaf of ta
    std::map<int, int> shift;
    for (int l : tb.labels()) shift[l] = l + 100;
    tb = tb.relabel(shift);
    int a = ta.labels()[gen.u(na)];
    Tree t = graft(ta, a, tb);
    std::vector<int> A = ta.labels(), B = tb.labels();
    auto d = degraft_at(t, A, a, B);
    REQUIRE(d.has_value());
    CHECK(d->ta == ta);
    CHECK(d->tb == tb);
    // branches of any tree biject with the edges of its stable tree
    StableView sv = stable_view(t);
    CHECK(sv.branches.size() == sv.stable.edges().size());
  }
}

TEST_CASE("mu after gamma lands on the identity across random words") {
  for (const auto& q : bundled_pairs()) {
    Generator gen(q, 23);
    for (int i = 0; i < 250; ++i)
      CHECK(mu(gamma(gen.word(WordVariant::EG))) == gen.grp()->identity());
  }
}
