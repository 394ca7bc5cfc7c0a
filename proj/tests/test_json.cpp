#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "opbar/dot.hpp"
#include "opbar/json_io.hpp"
#include "opbar/probes.hpp"
#include "opbar/suites.hpp"

using namespace opbar;

namespace {
std::shared_ptr<const SemidirectOperad> comz2() {
  auto z2 = builtin_group("z2");
  return make_semidirect(make_com_operad(z2), z2);
}
}  // namespace

TEST_CASE("tree json round trip") {
  Tree t(TreeBuilder::node({TreeBuilder::leaf(2),
                            TreeBuilder::node({TreeBuilder::leaf(1), TreeBuilder::leaf(3)})}));
  CHECK(tree_from_json(tree_to_json(t)) == t);
  CHECK(tree_from_json(tree_to_json(Tree::empty(4))) == Tree::empty(4));
  CHECK_THROWS_AS(tree_from_json(Json{{"children", Json::array()}}), SchemaError);
  CHECK_THROWS_AS(tree_from_json(Json::array()), SchemaError);
}

TEST_CASE("point json round trip across random corpus") {
  auto q = comz2();
  Generator gen(q, 17);
  for (int i = 0; i < 100; ++i) {
    BarPoint p = normalize(*q, gen.raw_point(1 + gen.u(4), true));
    BarPoint back = point_from_json(*q, point_to_json(*q, p));
    CHECK(equals(back, p));
  }
  // re-parse of canonical output normalizes to itself
  BarPoint p = gen.point(3);
  Json j = point_to_json(*q, p);
  CHECK(point_to_json(*q, point_from_json(*q, j)) == j);
}

TEST_CASE("point json rejects bad schemas") {
  auto q = comz2();
  CHECK_THROWS_AS(point_from_json(*q, Json{{"tree", Json{{"leaf", 1}}}}), SchemaError);
  Json j{{"tree", Json{{"leaf", 1}}}, {"weights", Json{{"root", "2"}}}, {"labels", Json::object()}};
  CHECK_THROWS_AS(point_from_json(*q, j), SchemaError);  // weight outside [0,1]
  Json j2{{"tree", Json{{"leaf", 1}}},
          {"weights", Json{{"root", "not-a-number"}}},
          {"labels", Json::object()}};
  CHECK_THROWS_AS(point_from_json(*q, j2), SchemaError);
}

TEST_CASE("word and equivariant json round trips") {
  auto q = comz2();
  Generator gen(q, 19);
  for (int i = 0; i < 50; ++i) {
    for (WordVariant v :
         {WordVariant::BG, WordVariant::EG, WordVariant::EGt, WordVariant::BGGG}) {
      BarWord w = gen.word(v);
      CHECK(word_from_json(q->twist_group(), word_to_json(w)) == w);
    }
    EquivariantPoint x = gen.equivariant(2 + gen.u(3));
    CHECK(equals(equivariant_from_json(*q, equivariant_to_json(*q, x)), x));
  }
  CHECK_THROWS_AS(word_from_json(q->twist_group(), Json{{"variant", "XX"}}), SchemaError);
}

TEST_CASE("group and operad tables round trip through json") {
  auto s3 = builtin_group("s3");
  GroupPtr back = group_from_json(group_to_json(*s3));
  CHECK(*back == *s3);

  auto q = comz2();
  TableOperad tab(TableOperad::snapshot(*q, 3));
  OperadPtr load = operad_from_json(operad_to_json(tab), 3);
  CHECK(operads_agree(*load, *q, 3));
}

TEST_CASE("the loader rejects corrupted tables with a witness") {
  auto q = comz2();
  auto data = TableOperad::snapshot(*q, 3);
  Json j = operad_to_json(TableOperad(data));
  // corrupt one composition entry
  for (auto& entry : j["compose"])
    if (entry["n"] == 2 && entry["i"] == 1 && entry["m"] == 1) entry["table"][1][1] = 2;
  try {
    operad_from_json(j, 3);
    CHECK(false);
  } catch (const SchemaError& ex) {
    CHECK(std::string(ex.what()).find("axioms") != std::string::npos);
  }
}

TEST_CASE("dot rendering shows structure") {
  auto q = comz2();
  Generator gen(q, 29);
  BarPoint p = gen.point(3);
  RawBarPoint sr = standard_representative(*q, p);
  std::string dot = render_dot(*q, sr);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("shape=box") != std::string::npos);     // a stable vertex
  CHECK(dot.find("shape=circle") != std::string::npos);  // a pushed decoration
  CHECK(dot.find("label=\"0\"") != std::string::npos);   // its zero-weight edge
  std::string base = render_dot_basepoint();
  CHECK(base.find("doublecircle") != std::string::npos);

  // the empty tree renders as a single edge
  std::string empty_dot = render_dot(
      *q, RawBarPoint{Tree::empty(1), {{EdgeId::leaf_edge(1), Rat(1)}}, {}});
  CHECK(empty_dot.find("root -> l1") != std::string::npos);
}
