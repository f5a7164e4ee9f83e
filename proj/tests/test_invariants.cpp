// Invariant graded data: monomial enumeration against a brute-force recursion
// and invariant quotient dimensions against the frozen series.
#include <doctest.h>

#include <octocut/cut.hpp>
#include <octocut/data.hpp>
#include <octocut/invariants.hpp>
#include <octocut/rng.hpp>

#include <algorithm>
#include <set>
#include <vector>

using namespace octocut;
using namespace octocut::invariants;

namespace {

const ArtifactData& data() {
  static ArtifactData d = load_data();
  return d;
}

// brute force: independent recursive enumeration of degree-d weight-0 monomials
void enumerate(int var, int deg_left, long long wsum, Expo& cur, std::vector<Expo>& out) {
  if (var == 12) {
    if (deg_left == 0 && wsum % 13 == 0) out.push_back(cur);
    return;
  }
  for (int e = 0; e <= deg_left; ++e) {
    cur[var] = e;
    enumerate(var + 1, deg_left - e, wsum + (long long)e * (var + 1), cur, out);
  }
  cur[var] = 0;
}

std::vector<Poly<Fp>> cut_gens_fp(uint32_t p, uint64_t seed) {
  DomCtx ctx{p};
  Rng rng(seed);
  Fp d1((uint32_t)(rng.next_u64() % (p - 1)) + 1, p);
  Fp d2((uint32_t)(rng.next_u64() % (p - 1)) + 1, p);
  static auto symbolic = cut::build_cut_symbolic(data());
  auto sys = cut::specialize_system<Fp>(symbolic, d1, d2, ctx);
  return {sys.begin(), sys.end()};
}

}  // namespace

TEST_CASE("t-variable weights are 1..12") {
  auto w = t_weights();
  REQUIRE(w.size() == 12);
  for (int i = 0; i < 12; ++i) CHECK(w[i] == i + 1);
}

TEST_CASE("invariant monomials match a brute-force recursion") {
  for (int deg = 0; deg <= 4; ++deg) {
    std::vector<Expo> brute;
    Expo cur(12, 0);
    enumerate(0, deg, 0, cur, brute);
    auto fast = invariant_monomials(deg);
    CHECK(fast.size() == brute.size());
    std::set<Expo> a(fast.begin(), fast.end()), b(brute.begin(), brute.end());
    CHECK(a == b);
  }
  // hand count at degree 2: t_i t_{13-i} for i = 1..6
  CHECK(invariant_monomials(2).size() == 6);
  CHECK(invariant_monomials(0).size() == 1);
  CHECK(invariant_monomials(1).empty());
}

TEST_CASE("class dimensions sum to the plain quotient dimension") {
  const uint32_t p = 10007;
  auto gens = cut_gens_fp(p, 21);
  auto rec = gradedla::hilbert_function(gens, 12, 3, p, t_weights());
  for (int deg = 2; deg <= 3; ++deg) {
    auto cls = class_dimensions(gens, deg, p);
    uint64_t total = 0;
    for (auto v : cls) total += v;
    CHECK(total == rec.dims[deg]);
  }
}

TEST_CASE("invariant quotient dimensions match the frozen series") {
  const std::vector<uint64_t> oracle{1, 0, 4, 10, 19};
  const uint32_t p = 31013;
  auto gens = cut_gens_fp(p, 22);
  auto inv = invariant_hilbert(gens, 4, p);
  CHECK(inv == oracle);

  // the weight-0 class of class_dimensions agrees entry by entry
  for (int deg = 2; deg <= 3; ++deg) {
    auto cls = class_dimensions(gens, deg, p);
    CHECK(cls[0] == oracle[deg]);
  }
}
