// The invariant cubic and its 27-quadric ideal: Euler identity, diagonal
// symmetry with independently recomputed weights, chart consistency.
#include <doctest.h>

#include <octocut/data.hpp>
#include <octocut/e6.hpp>
#include <octocut/rng.hpp>

#include <vector>

using namespace octocut;

namespace {

const ArtifactData& data() {
  static ArtifactData d = load_data();
  return d;
}

}  // namespace

TEST_CASE("Euler identity: sum of P_i * dC/dP_i equals 3C") {
  const auto& c = data().cubic;
  auto partials = e6::op2_ideal(c);
  Poly<Rational> acc(27);
  for (int i = 0; i < 27; ++i) {
    Expo e(27, 0);
    e[i] = 1;
    acc += partials[i].mul_monomial(e, Rational(1));
  }
  CHECK(acc == c.scaled(Rational(3)));
}

TEST_CASE("diagonal action: raw-loop invariance of the cubic") {
  const auto& d = data();
  for (const auto& [e, coef] : d.cubic.terms) {
    long long s = 0;
    for (int i = 0; i < 27; ++i) s += (long long)e[i] * d.weights[i];
    CHECK(s % 13 == 0);
  }
  CHECK(e6::cubic_is_invariant(d.cubic, d.weights));
}

TEST_CASE("diagonal action: quadric i is an eigenvector of weight -a_i") {
  const auto& d = data();
  auto partials = e6::op2_ideal(d.cubic);
  for (int i = 0; i < 27; ++i) {
    // Every monomial of dC/dP_i must have the same weight sum mod 13, namely
    // -a_i: differentiating removes one factor of weight a_i from weight-0
    // monomials.
    int expect = ((13 - d.weights[i] % 13) % 13);
    for (const auto& [e, coef] : partials[i].terms) {
      long long s = 0;
      for (int j = 0; j < 27; ++j) s += (long long)e[j] * d.weights[j];
      CHECK(((s % 13) + 13) % 13 == expect);
    }
    auto w = e6::torus_weight_of(partials[i], d.weights);
    REQUIRE(w.has_value());
    CHECK(*w == expect);
  }
}

TEST_CASE("chart: all 27 quadrics restrict to zero symbolically") {
  auto rep = e6::verify_chart(data());
  CHECK(rep.ok);
  CHECK(rep.failing_quadric == 0);
}

TEST_CASE("chart: random numeric point satisfies every quadric") {
  const auto& d = data();
  Rng rng(42);
  std::vector<Cplx> free_vals;
  for (int i = 0; i < 16; ++i) free_vals.push_back(rng.cnormal());
  auto pt = e6::chart_point(d, free_vals);
  REQUIRE(pt.size() == 27);
  auto partials = e6::op2_ideal(d.cubic);
  for (const auto& q : partials) {
    auto qc = poly_to_cplx(q);
    CHECK(std::abs(qc.evaluate(pt)) < 1e-9);
  }
}

TEST_CASE("negative control: perturbed cubic loses the symmetry") {
  auto broken = data().cubic;
  Expo e(27, 0);
  e[0] = 2;  // P1^2 * P2 has weight 2*6+7 = 19 ≠ 0 mod 13
  e[1] = 1;
  broken.add_term(e, Rational(1));
  CHECK(!e6::cubic_is_invariant(broken, data().weights));
}

TEST_CASE("verify_all aggregates every check") {
  auto rep = e6::verify_all(data());
  CHECK(rep.cubic_terms == 45);
  CHECK(rep.invariance_ok);
  CHECK(rep.eigenweights_ok);
  CHECK(rep.chart_ok);
  CHECK(rep.failing_quadric == 0);
}
