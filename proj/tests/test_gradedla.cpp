// Graded linear algebra: monomial indexing, Macaulay ranks (sparse parallel
// vs dense serial), Hilbert functions against independently convolved series,
// difference-table dimension/degree reading, Jacobian ranks.
#include <doctest.h>

#include <octocut/cut.hpp>
#include <octocut/data.hpp>
#include <octocut/e6.hpp>
#include <octocut/gradedla.hpp>
#include <octocut/rng.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

using namespace octocut;
using namespace octocut::gradedla;

namespace {

const ArtifactData& data() {
  static ArtifactData d = load_data();
  return d;
}

// dense 0/1.. matrix -> ClassMatrix, dropping zeros
ClassMatrix to_class_matrix(const std::vector<std::vector<uint32_t>>& m, uint32_t ncols) {
  ClassMatrix cm;
  cm.ncols = ncols;
  for (const auto& row : m) {
    SparseRow r;
    for (uint32_t j = 0; j < ncols; ++j)
      if (row[j]) r.emplace_back(j, row[j]);
    cm.rows.push_back(std::move(r));
  }
  return cm;
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

std::vector<int> t_weight_vec() {
  std::vector<int> w(12);
  for (int i = 0; i < 12; ++i) w[i] = i + 1;
  return w;
}

}  // namespace

TEST_CASE("binomials agree with a Pascal triangle") {
  std::vector<std::vector<uint64_t>> tri(31, std::vector<uint64_t>(31, 0));
  for (int n = 0; n <= 30; ++n) {
    tri[n][0] = 1;
    for (int k = 1; k <= n; ++k)
      tri[n][k] = tri[n - 1][k - 1] + (k <= n - 1 ? tri[n - 1][k] : 0);
  }
  for (int n = 0; n <= 30; ++n)
    for (int k = 0; k <= n; ++k) CHECK(binom(n, k) == tri[n][k]);
  CHECK(binom(3, 5) == 0);
}

TEST_CASE("monomial basis rank/unrank is a bijection") {
  MonomialBasis b{4, 5};
  CHECK(b.size() == binom(5 + 3, 3));
  std::set<Expo> seen;
  for (uint64_t i = 0; i < b.size(); ++i) {
    Expo e = b.unrank(i);
    int deg = 0;
    for (int v : e) deg += v;
    CHECK(deg == 5);
    CHECK(b.rank(e) == i);
    seen.insert(e);
  }
  CHECK(seen.size() == b.size());
}

TEST_CASE("tiny ideal (x^2, xy): quotient dimensions 1,2,1,1") {
  DomCtx ctx{10007};
  auto x = Poly<Fp>::variable(2, 0, Dom<Fp>::one(ctx));
  auto y = Poly<Fp>::variable(2, 1, Dom<Fp>::one(ctx));
  std::vector<Poly<Fp>> gens{x * x, x * y};
  auto rec = hilbert_function(gens, 2, 3, 10007);
  CHECK(rec.dims == std::vector<uint64_t>{1, 2, 1, 1});

  // same answer when rows are refined by a weight grading
  std::vector<int> w{1, 2};
  auto rec_w = hilbert_function(gens, 2, 3, 10007, w);
  CHECK(rec_w.dims == rec.dims);
}

TEST_CASE("sparse parallel rank equals the dense reference") {
  const uint32_t p = 10007;
  Rng rng(314);
  const uint32_t ncols = 24;
  std::vector<std::vector<uint32_t>> dense;
  for (int i = 0; i < 18; ++i) {
    std::vector<uint32_t> row(ncols, 0);
    for (uint32_t j = 0; j < ncols; ++j)
      if (rng.uniform01() < 0.4) row[j] = (uint32_t)(rng.next_u64() % p);
    dense.push_back(row);
  }
  // force rank deficiency: sums and multiples of earlier rows, plus zero rows
  for (int k = 0; k < 8; ++k) {
    std::vector<uint32_t> row(ncols, 0);
    size_t a = rng.next_u64() % dense.size(), b = rng.next_u64() % dense.size();
    uint64_t s = rng.next_u64() % p;
    for (uint32_t j = 0; j < ncols; ++j)
      row[j] = (uint32_t)((dense[a][j] + s * dense[b][j]) % p);
    dense.push_back(row);
  }
  dense.push_back(std::vector<uint32_t>(ncols, 0));

  auto cm = to_class_matrix(dense, ncols);
  uint64_t want = dense_rank_reference(cm, p);
  CHECK(want < cm.rows.size());  // the construction really is deficient
  CHECK(sparse_rank(cm, p) == want);
  CHECK(sparse_rank(cm, p, 1) == want);
  CHECK(sparse_rank(cm, p, 4) == want);

  // row order must not matter
  auto shuffled = cm;
  std::mt19937 urbg(99);
  std::shuffle(shuffled.rows.begin(), shuffled.rows.end(), urbg);
  CHECK(sparse_rank(shuffled, p, 4) == want);

  // degenerate shapes
  CHECK(sparse_rank(ClassMatrix{}, p) == 0);
  ClassMatrix zero_only{ncols, {SparseRow{}}};
  CHECK(sparse_rank(zero_only, p) == 0);
}

TEST_CASE("difference-table reading of dimension and degree") {
  auto v1 = std::vector<uint64_t>{1, 12, 52, 130, 247};
  CHECK(!degree_dimension_estimate(v1).stabilized);

  auto v2 = std::vector<uint64_t>{1, 12, 52, 130, 247, 403};
  auto verdict = degree_dimension_estimate(v2);
  CHECK(verdict.stabilized);
  CHECK(verdict.dimension == 2);
  CHECK(verdict.degree == 39);

  auto flat = std::vector<uint64_t>{5, 5};
  auto v0 = degree_dimension_estimate(flat);
  CHECK(v0.stabilized);
  CHECK(v0.dimension == 0);
  CHECK(v0.degree == 5);

  auto lin = std::vector<uint64_t>{3, 5, 7, 9};
  auto vl = degree_dimension_estimate(lin);
  CHECK(vl.stabilized);
  CHECK(vl.dimension == 1);
  CHECK(vl.degree == 2);
}

TEST_CASE("ambient ideal Hilbert function vs the convolved series") {
  // series numerator (1,10,28,28,10,1) over (1-t)^17: h(d) = sum num_k C(d-k+16,16)
  const std::array<int64_t, 6> num{1, 10, 28, 28, 10, 1};
  std::vector<uint64_t> oracle;
  for (int dd = 0; dd <= 3; ++dd) {
    uint64_t h = 0;
    for (int k = 0; k <= dd && k < 6; ++k) h += (uint64_t)num[k] * binom(dd - k + 16, 16);
    oracle.push_back(h);
  }
  CHECK(oracle == std::vector<uint64_t>{1, 27, 351, 3003});

  auto partials = e6::op2_ideal(data().cubic);
  std::vector<int> pw = data().weights;
  for (uint32_t p : {10007u, 31013u}) {
    std::vector<Poly<Fp>> gens;
    for (const auto& q : partials) gens.push_back(poly_to_fp(q, p));
    auto rec = hilbert_function(gens, 27, 3, p, pw);
    CHECK(rec.dims == oracle);
  }
}

TEST_CASE("cut Hilbert function vs the convolved series") {
  // numerator (1,9,19,9,1) over (1-t)^3
  const std::array<int64_t, 5> num{1, 9, 19, 9, 1};
  std::vector<uint64_t> oracle;
  for (int dd = 0; dd <= 4; ++dd) {
    uint64_t h = 0;
    for (int k = 0; k <= dd && k < 5; ++k) h += (uint64_t)num[k] * binom(dd - k + 2, 2);
    oracle.push_back(h);
  }
  CHECK(oracle == std::vector<uint64_t>{1, 12, 52, 130, 247});

  auto tw = t_weight_vec();
  for (uint32_t p : {10007u, 31013u}) {
    auto gens = cut_gens_fp(p, 7 + p);
    auto rec = hilbert_function(gens, 12, 3, p, tw);
    CHECK(rec.dims == std::vector<uint64_t>(oracle.begin(), oracle.begin() + 4));
  }
  // one prime out to degree 4, and the unsplit matrix agrees with the split one
  auto gens = cut_gens_fp(10007, 7 + 10007);
  auto rec4 = hilbert_function(gens, 12, 4, 10007, tw);
  CHECK(rec4.dims == oracle);
  auto rec_unsplit = hilbert_function(gens, 12, 2, 10007);
  CHECK(rec_unsplit.dims == std::vector<uint64_t>{1, 12, 52});
}

TEST_CASE("prime-field Jacobian rank at a point") {
  const uint32_t p = 10007;
  DomCtx ctx{p};
  auto x = Poly<Fp>::variable(2, 0, Dom<Fp>::one(ctx));
  auto y = Poly<Fp>::variable(2, 1, Dom<Fp>::one(ctx));
  std::vector<Poly<Fp>> sys{x * x + y * y, x * y};
  std::vector<Fp> pt{Fp::from_int(1, p), Fp::from_int(2, p)};
  CHECK(jacobian_rank_fp(sys, pt, p) == 2);
  std::vector<Fp> origin{Fp::from_int(0, p), Fp::from_int(0, p)};
  CHECK(jacobian_rank_fp(sys, origin, p) == 0);
}

TEST_CASE("complex Jacobian rank with singular-value gap") {
  auto x = Poly<Cplx>::variable(2, 0, Cplx(1, 0));
  auto y = Poly<Cplx>::variable(2, 1, Cplx(1, 0));
  // J = [[2,2],[1,1]] everywhere: rank 1
  std::vector<Poly<Cplx>> sys{x.scaled(Cplx(2, 0)) + y.scaled(Cplx(2, 0)), x + y};
  std::vector<Cplx> pt{Cplx(0.3, 0.1), Cplx(-0.2, 0.4)};
  auto r = jacobian_rank_cplx(sys, pt);
  CHECK(r.rank == 1);
  REQUIRE(r.svals.size() == 2);
  CHECK(r.svals[0] == doctest::Approx(std::sqrt(10.0)));
  CHECK(r.svals[1] < 1e-12);
}
