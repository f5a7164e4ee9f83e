#pragma once
// Graded linear algebra over prime fields: Macaulay matrices of homogeneous
// ideals, sparse streaming rank, Hilbert functions with difference-table
// verdicts, and Jacobian ranks (exact and singular-value based).

#include "octocut/poly.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace octocut::gradedla {

// binomial coefficients, cached; throws if out of the cached range
uint64_t binom(int n, int k);

// The degree-d monomials in n variables in canonical order (largest exponent
// vector first within the degree, matching the polynomial term order), with
// O(degree * nvars) rank/unrank via binomial counts.
struct MonomialBasis {
  int nvars = 0;
  int degree = 0;

  uint64_t size() const;
  uint64_t rank(const Expo& e) const;
  Expo unrank(uint64_t idx) const;
};

// sparse row: (column, value) with ascending columns, no zeros
using SparseRow = std::vector<std::pair<uint32_t, uint32_t>>;

struct ClassMatrix {
  uint32_t ncols = 0;
  std::vector<SparseRow> rows;
};

// A Macaulay matrix in degree d, optionally refined by torus weight class:
// row m*q_i for every generator q_i and monomial m of complementary degree.
// Without weights there is a single class holding the whole matrix.
struct MacaulaySplit {
  int degree = 0;
  uint64_t total_cols = 0;
  std::vector<ClassMatrix> classes;
};

MacaulaySplit macaulay_matrix(const std::vector<Poly<Fp>>& gens, int nvars, int degree,
                              uint32_t p, std::span<const int> weights = {}, int nthreads = 0);

// streaming sparse echelon rank; deterministic for any thread count
uint64_t sparse_rank(ClassMatrix m, uint32_t p, int nthreads = 0);

// dense serial reference implementation (testing and benchmarking)
uint64_t dense_rank_reference(const ClassMatrix& m, uint32_t p);

struct Verdict {
  bool stabilized = false;
  int dimension = -1;   // order of the first difference table whose tail repeats
  int64_t degree = 0;   // the repeated value
};

// Difference-table reading of a Hilbert function: the verdict is accepted
// only when some k-th difference table ends in two equal entries; smaller k
// wins.  Returns stabilized = false otherwise.
Verdict degree_dimension_estimate(std::span<const uint64_t> dims);

struct HilbertRecord {
  uint32_t p = 0;
  std::vector<uint64_t> dims;    // h(0) .. h(D)
  std::vector<int64_t> diff1;
  std::vector<int64_t> diff2;
  Verdict verdict;
};

// graded quotient dimensions h(d) = #monomials - rank(Macaulay_d) for
// d = 0..max_degree; generators must be homogeneous of positive degree
HilbertRecord hilbert_function(const std::vector<Poly<Fp>>& gens, int nvars, int max_degree,
                               uint32_t p, std::span<const int> weights = {}, int nthreads = 0);

// rank of [d q_i / d x_j] at a point, exactly over F_p
int jacobian_rank_fp(const std::vector<Poly<Fp>>& sys, std::span<const Fp> point, uint32_t p);

struct CplxRankResult {
  int rank = 0;
  double gap = 0;                // sv[rank-1] / sv[rank]; inf when full
  std::vector<double> svals;     // descending
};

// singular-value thresholded rank over complex doubles
CplxRankResult jacobian_rank_cplx(const std::vector<Poly<Cplx>>& sys,
                                  std::span<const Cplx> point, double rel_tol = 1e-8);

}  // namespace octocut::gradedla
