// Polynomial arithmetic: ring identities, calculus, substitution, text IO.
#include <doctest.h>

#include <octocut/domains.hpp>
#include <octocut/poly.hpp>

#include <map>
#include <vector>

using namespace octocut;

namespace {

Poly<Rational> qvar(int n, int i) { return Poly<Rational>::variable(n, i, Rational(1)); }

}  // namespace

TEST_CASE("term order is graded with ties broken lexicographically") {
  // (x + y + 1)^2 = x^2 + 2xy + y^2 + 2x + 2y + 1: leading term must be x^2.
  auto x = qvar(2, 0), y = qvar(2, 1);
  auto p = x + y + Poly<Rational>::constant(2, Rational(1));
  auto sq = p * p;
  REQUIRE(sq.terms.size() == 6);
  auto it = sq.terms.begin();
  CHECK(it->first == Expo({2, 0}));
  CHECK(it->second == Rational(1));
  ++it;
  CHECK(it->first == Expo({1, 1}));
  CHECK(it->second == Rational(2));
  // Last (smallest) term is the constant.
  CHECK(sq.terms.rbegin()->first == Expo({0, 0}));
}

TEST_CASE("ring identities over the rationals") {
  auto x = qvar(2, 0), y = qvar(2, 1);
  auto lhs = (x + y) * (x + y);
  auto rhs = x * x + (x * y).scaled(Rational(2)) + y * y;
  CHECK(lhs == rhs);

  auto zero = (x - x) * y;
  CHECK(zero.terms.empty());
  CHECK(zero == Poly<Rational>(2));

  // (x - y)(x + y) = x^2 - y^2
  CHECK((x - y) * (x + y) == x * x - y * y);

  // mul_monomial agrees with multiplying by a monomial polynomial.
  auto m = Poly<Rational>::monomial(2, Expo({1, 2}), Rational(-3));
  CHECK((x + y).mul_monomial(Expo({1, 2}), Rational(-3)) == (x + y) * m);
}

TEST_CASE("derivative over Q and over F_3") {
  auto x = qvar(2, 0), y = qvar(2, 1);
  auto p = x * x * x * y + x * y;  // x^3 y + x y
  auto px = p.derivative(0);       // 3 x^2 y + y
  auto expect = (x * x * y).scaled(Rational(3)) + y;
  CHECK(px == expect);
  CHECK(p.derivative(1) == x * x * x + x);

  // Over F_3 the derivative of x^3 vanishes because the exponent multiplies in.
  DomCtx c3{3};
  auto xf = Poly<Fp>::variable(1, 0, Dom<Fp>::one(c3));
  auto cube = xf * xf * xf;
  CHECK(cube.derivative(0).terms.empty());
}

TEST_CASE("degree, homogeneity, weight classes") {
  auto x = qvar(3, 0), y = qvar(3, 1), z = qvar(3, 2);
  auto p = x * y * z + x * x * x;
  CHECK(p.total_degree() == 3);
  CHECK(p.homogeneous_degree() == 3);
  auto q = p + x;
  CHECK(q.total_degree() == 3);
  CHECK(!q.homogeneous_degree().has_value());

  // weights (1,2,3) mod 5: xyz has weight 6=1, x^3 has weight 3.
  std::vector<int> w{1, 2, 3};
  CHECK(p.weight_class(w, 5) == std::nullopt);
  CHECK((x * y * z).weight_class(w, 5) == 1);
  CHECK((x * x * x).weight_class(w, 5) == 3);
  CHECK(Poly<Rational>(3).weight_class(w, 5) == std::nullopt);
}

TEST_CASE("substitute expands images with a power cache") {
  auto x = qvar(1, 0);
  auto p = x * x - Poly<Rational>::constant(1, Rational(1));  // x^2 - 1
  // x -> y + 1 in a one-variable target ring.
  auto y = qvar(1, 0);
  auto img = y + Poly<Rational>::constant(1, Rational(1));
  auto sub = p.substitute({img});  // (y+1)^2 - 1 = y^2 + 2y
  CHECK(sub == y * y + y.scaled(Rational(2)));

  // substitute_linear replaces one variable and leaves the rest alone.
  auto u = qvar(2, 0), v = qvar(2, 1);
  auto q = u * u + v;
  std::map<int, Poly<Rational>> smap;
  smap.emplace(0, v.scaled(Rational(2)));  // u -> 2v
  auto ql = q.substitute_linear(smap);
  CHECK(ql == (v * v).scaled(Rational(4)) + v);
  // Degree-2 images are rejected by substitute_linear.
  std::map<int, Poly<Rational>> bad;
  bad.emplace(0, v * v);
  CHECK_THROWS_AS(q.substitute_linear(bad), std::invalid_argument);
}

TEST_CASE("evaluate over Q and F_p") {
  auto x = qvar(2, 0), y = qvar(2, 1);
  auto p = x * x * y - y.scaled(Rational(1, 2));
  std::vector<Rational> pt{Rational(3), Rational(1, 3)};
  CHECK(p.evaluate(pt) == Rational(3) - Rational(1, 6));

  DomCtx ctx{10007};
  auto pf = poly_to_fp(p, 10007);
  std::vector<Fp> fpt{to_fp(Rational(3), 10007), to_fp(Rational(1, 3), 10007)};
  CHECK(pf.evaluate(fpt, ctx) == to_fp(Rational(3) - Rational(1, 6), 10007));
}

TEST_CASE("coefficient-map helpers respect the modulus") {
  auto x = qvar(1, 0);
  auto p = x.scaled(Rational(-1, 2)) + Poly<Rational>::constant(1, Rational(10007));
  auto pf = poly_to_fp(p, 10007);
  // 10007 == 0 mod 10007, so the constant term drops out entirely.
  CHECK(pf.terms.size() == 1);
  CHECK(pf.coeff(Expo({1}), DomCtx{10007}) == to_fp(Rational(-1, 2), 10007));

  auto pc = poly_to_cplx(p);
  CHECK(pc.coeff(Expo({1})).real() == doctest::Approx(-0.5));
  CHECK(pc.coeff(Expo({0})).real() == doctest::Approx(10007.0));
}

TEST_CASE("text IO round trips across domains") {
  VarSet vars = numbered_vars("t", 3);

  SUBCASE("rationals") {
    auto p = poly_from_text<Rational>("2*t1^2 - 1/3*t2*t3 + t1 - 5", vars);
    CHECK(p.coeff(Expo({2, 0, 0})) == Rational(2));
    CHECK(p.coeff(Expo({0, 1, 1})) == Rational(-1, 3));
    CHECK(p.coeff(Expo({1, 0, 0})) == Rational(1));
    CHECK(p.coeff(Expo({0, 0, 0})) == Rational(-5));
    auto text = poly_to_text(p, vars);
    CHECK(poly_from_text<Rational>(text, vars) == p);
  }

  SUBCASE("prime field") {
    DomCtx ctx{10007};
    auto p = poly_from_text<Fp>("3*t1*t2 - t3", vars, ctx);
    CHECK(p.coeff(Expo({1, 1, 0}), ctx) == Fp::from_int(3, 10007));
    CHECK(p.coeff(Expo({0, 0, 1}), ctx) == Fp::from_int(-1, 10007));
    CHECK(poly_from_text<Fp>(poly_to_text(p, vars), vars, ctx) == p);
  }

  SUBCASE("quadratic extension") {
    auto p = poly_from_text<QuadExt>("(1/2+3r2)*t1 - r2*t2^2", vars);
    CHECK(p.coeff(Expo({1, 0, 0})) == QuadExt(Rational(1, 2), Rational(3)));
    CHECK(p.coeff(Expo({0, 2, 0})) == QuadExt(Rational(0), Rational(-1)));
    CHECK(poly_from_text<QuadExt>(poly_to_text(p, vars), vars) == p);
  }

  SUBCASE("zero and malformed input") {
    auto z = poly_from_text<Rational>("0", vars);
    CHECK(z.terms.empty());
    CHECK(poly_to_text(z, vars) == "0");
    CHECK_THROWS(poly_from_text<Rational>("2*t9", vars));   // unknown variable
    CHECK_THROWS(poly_from_text<Rational>("t1^", vars));    // dangling exponent
  }
}
