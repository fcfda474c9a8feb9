#include <catch2/catch_amalgamated.hpp>

#include "treelex/generators.hpp"
#include "treelex/pwl.hpp"

using namespace treelex;

namespace {

RationalPoint pt(std::vector<Rat> c) { return RationalPoint(std::move(c)); }

AffineForm aff1(long long a, long long c) { return AffineForm{{Int(a)}, Int(c)}; }
AffineForm aff2(long long a, long long b, long long c) {
  return AffineForm{{Int(a), Int(b)}, Int(c)};
}

Simplex unit_interval() { return Simplex({pt({Rat(0)}), pt({Rat(1)})}); }
Simplex unit_triangle() {
  return Simplex({pt({Rat(0), Rat(0)}), pt({Rat(1), Rat(0)}), pt({Rat(0), Rat(1)})});
}

RationalPoint random_point(SplitMix64& rng, int n) {
  RationalPoint p;
  for (int i = 0; i < n; ++i) p.coords.push_back(Rat(rng.range(0, 24), 24));
  return p;
}

}  // namespace

TEST_CASE("evaluation", "[pwl]") {
  PwlFunction f{1, {{aff1(2, -1), aff1(1, 0)}}};  // max{min{2x-1, x}}
  CHECK(f.eval(pt({Rat(1, 3)})) == Rat(-1, 3));
  CHECK(pwl_constant(2, Int(1)).eval(pt({Rat(1, 2), Rat(3, 4)})) == 1);
  CHECK(pwl_projection(2, 0).eval(pt({Rat(1, 2), Rat(1)})) == Rat(1, 2));

  CHECK_THROWS_AS(f.eval(pt({Rat(1, 2), Rat(1, 2)})), Error);  // arity
  try {
    f.eval(pt({Rat(3, 2)}));
    FAIL("expected OutOfBox");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OutOfBox);
  }
}

TEST_CASE("pointwise soundness of the operations", "[pwl]") {
  SplitMix64 rng(314159);
  for (int n = 1; n <= 3; ++n) {
    PwlFunction f{n, {}};
    PwlFunction g{n, {}};
    auto random_fn = [&](int outer) {
      PwlFunction h{n, {}};
      for (int i = 0; i < outer; ++i) {
        std::vector<AffineForm> inner;
        const int k = 1 + static_cast<int>(rng.below(2));
        for (int j = 0; j < k; ++j) {
          AffineForm a;
          for (int c = 0; c < n; ++c) a.coeffs.push_back(Int(rng.range(-3, 3)));
          a.constant = Int(rng.range(-3, 3));
          inner.push_back(a);
        }
        h.terms.push_back(inner);
      }
      return h;
    };
    f = random_fn(2);
    g = random_fn(2);
    auto sum = pw_add(f, g);
    auto jo = pw_join(f, g);
    auto me = pw_meet(f, g);
    auto ng = pw_neg(f);
    for (int t = 0; t < 1000 / n; ++t) {
      RationalPoint x = random_point(rng, n);
      Rat fv = f.eval(x), gv = g.eval(x);
      REQUIRE(sum.eval(x) == fv + gv);
      REQUIRE(jo.eval(x) == std::max(fv, gv));
      REQUIRE(me.eval(x) == std::min(fv, gv));
      REQUIRE(ng.eval(x) == -fv);
    }
  }
}

TEST_CASE("affine cancellation and involution", "[pwl]") {
  auto pi1 = pwl_projection(2, 0);
  PwlFunction one_minus{2, {{aff2(-1, 0, 1)}}};
  auto sum = pw_add(pi1, one_minus);
  SplitMix64 rng(777);
  for (int t = 0; t < 10; ++t) CHECK(sum.eval(random_point(rng, 2)) == 1);

  PwlFunction f{1, {{aff1(2, -1), aff1(1, 0)}, {aff1(-1, 1)}}};
  auto back = pw_neg(pw_neg(f));
  for (int t = 0; t < 50; ++t) {
    RationalPoint x = random_point(rng, 1);
    CHECK(back.eval(x) == f.eval(x));
  }
}

TEST_CASE("lattice-group identities, pointwise", "[pwl]") {
  SplitMix64 rng(2717);
  PwlFunction a{1, {{aff1(1, 0)}, {aff1(-2, 1)}}};
  PwlFunction b{1, {{aff1(3, -1)}}};
  PwlFunction c{1, {{aff1(0, 1), aff1(2, 0)}}};
  auto lhs = pw_add(a, pw_join(b, c));
  auto rhs = pw_join(pw_add(a, b), pw_add(a, c));
  for (int t = 0; t < 200; ++t) {
    RationalPoint x = random_point(rng, 1);
    REQUIRE(lhs.eval(x) == rhs.eval(x));
  }
}

TEST_CASE("join and meet pick pointwise extremes", "[pwl]") {
  PwlFunction x1{1, {{aff1(1, 0)}}};
  PwlFunction om{1, {{aff1(-1, 1)}}};
  auto jn = pw_join(x1, om);
  CHECK(jn.eval(pt({Rat(1, 2)})) == Rat(1, 2));
  CHECK(jn.eval(pt({Rat(0)})) == 1);
}

TEST_CASE("convexity checks in one dimension", "[pwl]") {
  PwlFunction vee{1, {{aff1(1, 0)}, {aff1(-1, 1)}}};      // max(x, 1-x)
  PwlFunction tent{1, {{aff1(1, 0), aff1(-1, 1)}}};       // min(x, 1-x)
  PwlFunction lone{1, {{aff1(3, -2)}}};
  CHECK(convex_check(vee, unit_interval()));
  CHECK(!convex_check(tent, unit_interval()));
  CHECK(convex_check(lone, unit_interval()));
}

TEST_CASE("convexity checks in two dimensions", "[pwl]") {
  PwlFunction vee{2, {{aff2(1, 1, 0)}, {aff2(-1, -2, 1)}}};
  PwlFunction tent{2, {{aff2(1, 0, 0), aff2(-1, 0, 1)}}};
  CHECK(convex_check(vee, unit_triangle()));
  CHECK(!convex_check(tent, unit_triangle()));
  // restricted to a segment inside [0,1]^2
  Simplex diag({pt({Rat(0), Rat(0)}), pt({Rat(1), Rat(1)})});
  CHECK(convex_check(vee, diag));
  CHECK(!convex_check(tent, Simplex({pt({Rat(0), Rat(0)}), pt({Rat(1), Rat(0)})})));
  // a point is trivially convex
  CHECK(convex_check(tent, Simplex({pt({Rat(1, 2), Rat(1, 2)})})));
}

TEST_CASE("convexity is closed under + and v for convex inputs", "[pwl]") {
  SplitMix64 rng(606060);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng.below(2));
    Simplex s = random_simplex(rng, n, n);
    PwlFunction f = random_convex_pwl(rng, n, 3, 3);
    PwlFunction g = random_convex_pwl(rng, n, 3, 3);
    REQUIRE(convex_check(pw_add(f, g), s));
    REQUIRE(convex_check(pw_join(f, g), s));
  }
}

TEST_CASE("dimension gating", "[pwl]") {
  PwlFunction f3{3, {{AffineForm{{Int(1), Int(0), Int(0)}, Int(0)}}}};
  Simplex s3(std::vector<RationalPoint>{pt({Rat(0), Rat(0), Rat(0)}), pt({Rat(1), Rat(0), Rat(0)}),
                                        pt({Rat(0), Rat(1), Rat(0)}),
                                        pt({Rat(0), Rat(0), Rat(1)})});
  try {
    convex_check(f3, s3);
    FAIL("expected UnsupportedDimension");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnsupportedDimension);
  }
  // eval still works in higher dimension
  CHECK(f3.eval(pt({Rat(1, 2), Rat(0), Rat(1)})) == Rat(1, 2));
}

TEST_CASE("size overflow is reported", "[pwl]") {
  // repeated self-addition squares the term count
  PwlFunction f{1, {{aff1(1, 0)}, {aff1(2, 0)}, {aff1(3, 0)}}};
  try {
    PwlFunction g = f;
    for (int i = 0; i < 12; ++i) g = pw_add(g, g);
    FAIL("expected SizeOverflow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SizeOverflow);
  }
}

TEST_CASE("vanishing on complexes", "[pwl]") {
  PwlFunction f{1, {{aff1(2, -1)}, {aff1(0, 0)}}};  // max(2x-1, 0)
  auto half = GeometricComplex::from_simplexes({Simplex({pt({Rat(0)}), pt({Rat(1, 2)})})}, 1);
  auto full = GeometricComplex::from_simplexes({Simplex({pt({Rat(0)}), pt({Rat(1)})})}, 1);
  CHECK(vanishes_on(f, half));
  CHECK(!vanishes_on(f, full));

  CHECK(vanishes_on(pwl_constant(1, Int(0)), full));

  auto p0 = GeometricComplex::from_simplexes({Simplex({pt({Rat(0)})})}, 1);
  auto phalf = GeometricComplex::from_simplexes({Simplex({pt({Rat(1, 2)})})}, 1);
  PwlFunction proj{1, {{aff1(1, 0)}}};
  CHECK(vanishes_on(proj, p0));
  CHECK(!vanishes_on(proj, phalf));

  // 2D: distance-like function vanishing on an edge of the triangle
  PwlFunction y{2, {{aff2(0, 1, 0)}}};
  auto base = GeometricComplex::from_simplexes(
      {Simplex({pt({Rat(0), Rat(0)}), pt({Rat(1), Rat(0)})})}, 2);
  CHECK(vanishes_on(y, base));
  auto tri = GeometricComplex::from_simplexes({unit_triangle()}, 2);
  CHECK(!vanishes_on(y, tri));
}

TEST_CASE("vanishing agrees with dense sampling", "[pwl]") {
  SplitMix64 rng(121212);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + static_cast<int>(rng.below(2));
    Simplex s = random_simplex(rng, n, n);
    PwlFunction f = random_convex_pwl(rng, n, 2, 2);
    auto k = GeometricComplex::from_simplexes({s}, n);
    const bool exact = vanishes_on(f, k);
    bool sampled_zero = true;
    // dense rational grid with denominator 16, restricted to the simplex
    const int den = 16;
    if (n == 1) {
      for (int i = 0; i <= den && sampled_zero; ++i) {
        RationalPoint x = pt({Rat(i, den)});
        if (k.supports(x) && f.eval(x) != 0) sampled_zero = false;
      }
    } else {
      for (int i = 0; i <= den && sampled_zero; ++i)
        for (int j = 0; j <= den && sampled_zero; ++j) {
          RationalPoint x = pt({Rat(i, den), Rat(j, den)});
          if (k.supports(x) && f.eval(x) != 0) sampled_zero = false;
        }
    }
    if (!sampled_zero) REQUIRE(!exact);  // sampling nonzero refutes vanishing
    if (exact) REQUIRE(sampled_zero);
  }
}

TEST_CASE("ideal membership at finite depth", "[pwl]") {
  auto w = WeightedComplex::validate({"v1", "v2"}, {{"v1", Int(1)}, {"v2", Int(1)}},
                                     {{"v1", "v2"}});
  StellarScript shrink{
      StellarStep::subdivide("v1", "v2", "a"), StellarStep::del({"a", "v2"}),
      StellarStep::del({"v2"}),               StellarStep::del({"v1", "a"}),
      StellarStep::del({"a"}),
  };
  auto steps = apply_stellar_script(w, shrink);
  REQUIRE(steps.size() == 6);

  PwlFunction one_minus_pi1{2, {{aff2(-1, 0, 1)}}};
  CHECK(ideal_member_at_depth(one_minus_pi1, steps, steps.size() - 1));
  CHECK(!ideal_member_at_depth(one_minus_pi1, steps, 0));

  for (std::size_t i = 0; i < steps.size(); ++i)
    CHECK(!ideal_member_at_depth(pwl_constant(2, Int(1)), steps, i));
  CHECK(ideal_member_at_depth(pwl_constant(2, Int(0)), steps, 0));

  CHECK_THROWS_AS(ideal_member_at_depth(one_minus_pi1, steps, steps.size()), Error);
}
