#include <catch2/catch_amalgamated.hpp>

#include "randfib/ratpoly.hpp"

using randfib::AlgebraicRoot;
using randfib::RatPoly;
using randfib::Rational;

namespace {
RatPoly from_roots(std::initializer_list<int> roots) {
  RatPoly p = RatPoly::constant(Rational(1));
  for (int r : roots) p = p * RatPoly({Rational(-r), Rational(1)});
  return p;
}
}  // namespace

TEST_CASE("polynomial arithmetic basics") {
  const RatPoly x = RatPoly::variable();
  const RatPoly p = (x - RatPoly::constant(Rational(1))) * (x + RatPoly::constant(Rational(1)));
  CHECK(p == RatPoly({Rational(-1), Rational(0), Rational(1)}));
  CHECK(p.eval(Rational(3)) == 8);
  CHECK(p.degree() == 2);
  CHECK(p.derivative() == RatPoly({Rational(0), Rational(2)}));
  CHECK(p.shifted_up().degree() == 3);
  CHECK((p - p).is_zero());

  const auto [q, r] = RatPoly::divrem(p, x - RatPoly::constant(Rational(1)));
  CHECK(q == RatPoly({Rational(1), Rational(1)}));
  CHECK(r.is_zero());

  CHECK(p.to_string("beta") == "beta^2 - 1");
  CHECK(RatPoly({Rational(1), Rational(-1), Rational(-1)}).to_string("beta") ==
        "-beta^2 - beta + 1");
}

TEST_CASE("gcd and square-free part") {
  const RatPoly a = from_roots({1, 2});
  const RatPoly b = from_roots({1, 3});
  CHECK(randfib::gcd(a, b) == RatPoly({Rational(-1), Rational(1)}));  // monic x - 1

  const RatPoly squared = from_roots({1, 1, 3});
  const RatPoly sf = randfib::square_free_part(squared);
  CHECK(sf.degree() == 2);
  CHECK(sf.eval(Rational(1)) == 0);
  CHECK(sf.eval(Rational(3)) == 0);

  CHECK_THROWS_AS(randfib::deflate(from_roots({1}), Rational(2)),
                  randfib::InternalCheckError);
}

TEST_CASE("sturm isolation finds exactly the roots in the window") {
  const RatPoly p = from_roots({1, 2, 3});
  auto roots = randfib::isolate_roots(p, Rational(0), Rational(10));
  REQUIRE(roots.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(roots[i].approx() == Catch::Approx(i + 1).margin(1e-12));

  // Window endpoints are excluded.
  CHECK(randfib::isolate_roots(p, Rational(1), Rational(3)).size() == 1);
  CHECK(randfib::isolate_roots(p, Rational(4), Rational(10)).empty());

  // x^2 - 2 has one positive root.
  const RatPoly sqrt2({Rational(-2), Rational(0), Rational(1)});
  auto pos = randfib::isolate_positive_roots(sqrt2);
  REQUIRE(pos.size() == 1);
  CHECK(pos[0].approx() == Catch::Approx(1.41421356237309515).margin(1e-12));
}

TEST_CASE("algebraic root comparisons, including the gcd equality certificate") {
  const RatPoly sqrt2({Rational(-2), Rational(0), Rational(1)});
  const RatPoly sqrt3({Rational(-3), Rational(0), Rational(1)});
  const RatPoly composite = sqrt2 * RatPoly({Rational(-5), Rational(1)});  // (x^2-2)(x-5)

  auto a = randfib::isolate_positive_roots(sqrt2).front();
  auto b = randfib::isolate_roots(composite, Rational(0), Rational(2)).front();
  auto c = randfib::isolate_positive_roots(sqrt3).front();

  CHECK(AlgebraicRoot::compare(a, b) == 0);  // same sqrt(2) through different polynomials
  CHECK(AlgebraicRoot::compare(a, c) < 0);
  CHECK(AlgebraicRoot::compare(c, a) > 0);

  auto exact = AlgebraicRoot::exact(Rational(3, 2));
  CHECK(AlgebraicRoot::compare(exact, a) > 0);   // 1.5 > sqrt(2)
  CHECK(AlgebraicRoot::compare(exact, c) < 0);   // 1.5 < sqrt(3)
  auto exact2 = AlgebraicRoot::exact(Rational(3, 2));
  CHECK(AlgebraicRoot::compare(exact, exact2) == 0);

  // An isolated interval that actually pins a rational collapses to exact.
  const RatPoly with_half = RatPoly({Rational(-1, 2), Rational(1)}) * sqrt3;
  auto h = randfib::isolate_roots(with_half, Rational(0), Rational(1)).front();
  auto half = AlgebraicRoot::exact(Rational(1, 2));
  CHECK(AlgebraicRoot::compare(h, half) == 0);
}

TEST_CASE("golden-ratio roots of beta^2 - beta - 1") {
  const RatPoly p({Rational(-1), Rational(-1), Rational(1)});
  auto roots = randfib::isolate_positive_roots(p);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].approx() == Catch::Approx(1.6180339887498949).margin(1e-12));
}

TEST_CASE("cauchy bound dominates every root") {
  const RatPoly p = from_roots({1, 7, 9});
  const Rational bound = randfib::cauchy_root_bound(p);
  CHECK(bound > 9);
  CHECK(randfib::isolate_roots(p, Rational(0), bound).size() == 3);
}
