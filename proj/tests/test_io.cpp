#include <catch2/catch_amalgamated.hpp>

#include "treelex/generators.hpp"
#include "treelex/json_io.hpp"

using namespace treelex;

TEST_CASE("forest json round trip", "[io]") {
  Json j = Json::parse(R"({"vertices":["a","b"],"parent":{"b":"a"},"roots":["a"]})");
  ForestPtr f = forest_from_json(j);
  CHECK(f->size() == 2);
  CHECK(*forest_from_json(forest_to_json(*f)) == *f);
  CHECK_THROWS_AS(forest_from_json(Json::parse(R"({"vertices":[]})")), Error);
}

TEST_CASE("element json keeps precision via strings", "[io]") {
  auto f = validate_forest({"a", "b"}, {{"b", "a"}}, {"a"});
  Int big("123456789012345678901234567890");
  TlexElement e(f, {big, Int(-7)});
  Json j = element_to_json(e);
  CHECK(j["coords"]["a"] == "123456789012345678901234567890");
  TlexElement back = element_from_json(j);
  CHECK(back == e);
  // numeric coordinates are accepted on input
  Json j2 = Json::parse(R"({"coords":{"a": 3, "b": -4}})");
  CHECK(element_from_json(j2, f).at("b") == -4);
}

TEST_CASE("assignment json round trip", "[io]") {
  SplitMix64 rng(1);
  ForestPtr f = random_forest(rng, 5, 1);
  GeneratorAssignment ga = random_assignment(rng, f, 3, 9);
  GeneratorAssignment back = assignment_from_json(assignment_to_json(ga));
  CHECK(back.gens.size() == ga.gens.size());
  for (std::size_t i = 0; i < ga.gens.size(); ++i) CHECK(back.gens[i] == ga.gens[i]);
}

TEST_CASE("weighted complex json lists only maximal sets", "[io]") {
  WeightedComplex w = WeightedComplex::validate(
      {"v1", "v2"}, {{"v1", Int(1)}, {"v2", Int(2)}}, {{"v1", "v2"}});
  Json j = weighted_to_json(w);
  CHECK(j["sets"].size() == 1);  // subsets are implied
  WeightedComplex back = weighted_from_json(j);
  CHECK(back == w);
}

TEST_CASE("script json round trip", "[io]") {
  StellarScript s{StellarStep::subdivide("v1", "v2", "a"), StellarStep::del({"a", "v2"}),
                  StellarStep::identity()};
  StellarScript back = script_from_json(script_to_json(s));
  REQUIRE(back.size() == 3);
  CHECK(back[0].kind == StellarStep::Kind::Subdivide);
  CHECK(back[0].new_name == "a");
  CHECK(back[1].target == std::vector<std::string>{"a", "v2"});
  CHECK(back[2].kind == StellarStep::Kind::Identity);
  CHECK_THROWS_AS(script_from_json(Json::parse(R"([{"op":"warp"}])")), Error);
}

TEST_CASE("rationals parse as p/q strings", "[io]") {
  CHECK(rat_from_json(Json("2/6")) == Rat(1, 3));
  CHECK(rat_from_json(Json("-1/2")) == Rat(-1, 2));
  CHECK(rat_from_json(Json("5")) == Rat(5));
  CHECK(rat_from_json(Json(4)) == Rat(4));
  CHECK(rat_to_json(Rat(1, 3)) == "1/3");
  CHECK(rat_to_json(Rat(7)) == "7");
  CHECK_THROWS_AS(rat_from_json(Json("1/0")), Error);
  CHECK_THROWS_AS(rat_from_json(Json("x")), Error);
}

TEST_CASE("pwl json round trip", "[io]") {
  Json j = Json::parse(R"({"n":2,"terms":[[{"coeffs":[2,-1],"const":1}],
                                           [{"coeffs":[0,0],"const":0},
                                            {"coeffs":[1,1],"const":-1}]]})");
  PwlFunction f = pwl_from_json(j);
  CHECK(f.n == 2);
  CHECK(f.terms.size() == 2);
  PwlFunction back = pwl_from_json(pwl_to_json(f));
  RationalPoint x{{Rat(1, 3), Rat(2, 3)}};
  CHECK(back.eval(x) == f.eval(x));
}

TEST_CASE("presentation json round trip", "[io]") {
  SplitMix64 rng(12);
  ForestPtr f = random_forest(rng, 6, 1);
  auto p = ScrambledPresentation::scramble(f, 99, 3);
  Json j = presentation_to_json(p);
  CHECK(looks_like_presentation(j));
  auto back = presentation_from_json(j);
  CHECK(back.dimension() == p.dimension());
  CHECK(back.gens() == p.gens());
  CHECK(recover_forest_auto(back).ahu_canonical() == f->ahu_canonical());

  // tampered gens are rejected
  j["gens"][0][0] = "12345";
  CHECK_THROWS_AS(presentation_from_json(j), Error);
}
