#include "octocut/gradedla.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <omp.h>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace octocut::gradedla {

uint64_t binom(int n, int k) {
  constexpr int N = 72;
  static const auto table = [] {
    std::vector<std::vector<uint64_t>> t(N, std::vector<uint64_t>(N, 0));
    for (int i = 0; i < N; ++i) {
      t[i][0] = 1;
      for (int j = 1; j <= i; ++j)
        t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
    }
    return t;
  }();
  if (k < 0 || k > n) return 0;
  if (n >= N) throw std::out_of_range("binom: out of cached range");
  return table[n][k];
}

// number of degree-d monomials in v variables
static uint64_t mono_count(int d, int v) {
  if (v == 0) return d == 0 ? 1 : 0;
  return binom(d + v - 1, v - 1);
}

uint64_t MonomialBasis::size() const { return mono_count(degree, nvars); }

uint64_t MonomialBasis::rank(const Expo& e) const {
  if ((int)e.size() != nvars) throw std::invalid_argument("rank: wrong variable count");
  uint64_t r = 0;
  int rem = degree;
  for (int i = 0; i < nvars - 1; ++i) {
    for (int k = rem; k > e[i]; --k) r += mono_count(rem - k, nvars - 1 - i);
    rem -= e[i];
    if (rem < 0) throw std::invalid_argument("rank: degree mismatch");
  }
  if (nvars > 0 && e[nvars - 1] != rem) throw std::invalid_argument("rank: degree mismatch");
  return r;
}

Expo MonomialBasis::unrank(uint64_t idx) const {
  Expo e(nvars, 0);
  int rem = degree;
  for (int i = 0; i < nvars - 1; ++i) {
    for (int k = rem; k >= 0; --k) {
      uint64_t c = mono_count(rem - k, nvars - 1 - i);
      if (idx < c) {
        e[i] = k;
        rem -= k;
        break;
      }
      idx -= c;
    }
  }
  if (nvars > 0) e[nvars - 1] = rem;
  return e;
}

// ---------------------------------------------------------------------------
// Macaulay assembly
// ---------------------------------------------------------------------------

MacaulaySplit macaulay_matrix(const std::vector<Poly<Fp>>& gens, int nvars, int degree,
                              uint32_t p, std::span<const int> weights, int nthreads) {
  MacaulaySplit out;
  out.degree = degree;
  MonomialBasis cols{nvars, degree};
  out.total_cols = cols.size();
  bool split = !weights.empty();
  if (split && (int)weights.size() != nvars)
    throw std::invalid_argument("macaulay_matrix: weight vector size mismatch");

  int nclasses = split ? 13 : 1;
  std::vector<uint8_t> col_class(out.total_cols, 0);
  std::vector<uint32_t> col_remap(out.total_cols, 0);
  std::vector<uint32_t> class_cols(nclasses, 0);
  if (split) {
    for (uint64_t c = 0; c < out.total_cols; ++c) {
      Expo e = cols.unrank(c);
      long w = 0;
      for (int i = 0; i < nvars; ++i) w += (long)weights[i] * e[i];
      col_class[c] = (uint8_t)(((w % 13) + 13) % 13);
      col_remap[c] = class_cols[col_class[c]]++;
    }
  } else {
    class_cols[0] = (uint32_t)out.total_cols;
    for (uint64_t c = 0; c < out.total_cols; ++c) col_remap[c] = (uint32_t)c;
  }

  // degrees and multiplier bases; row layout fixed by (generator, multiplier)
  struct GenInfo {
    int deg = 0;
    MonomialBasis mult;
    uint64_t row_offset = 0;
    uint64_t row_count = 0;
  };
  std::vector<GenInfo> info(gens.size());
  uint64_t total_rows = 0;
  for (size_t g = 0; g < gens.size(); ++g) {
    auto hd = gens[g].homogeneous_degree();
    if (!hd || *hd <= 0)
      throw std::invalid_argument("macaulay_matrix: generator is zero or inhomogeneous");
    info[g].deg = *hd;
    if (*hd > degree) continue;
    info[g].mult = MonomialBasis{nvars, degree - *hd};
    info[g].row_offset = total_rows;
    info[g].row_count = info[g].mult.size();
    total_rows += info[g].row_count;
  }

  std::vector<SparseRow> flat(total_rows);
  std::vector<uint8_t> row_class(total_rows, 0);
  int k = nthreads > 0 ? nthreads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(k)
  for (long long g = 0; g < (long long)gens.size(); ++g) {
    if (info[g].deg > degree) continue;
    const auto& q = gens[g];
    for (uint64_t r = 0; r < info[g].row_count; ++r) {
      Expo m = info[g].mult.unrank(r);
      SparseRow row;
      row.reserve(q.term_count());
      int cls = -1;
      for (const auto& [e, c] : q.terms) {
        Expo prod(nvars);
        for (int i = 0; i < nvars; ++i) prod[i] = e[i] + m[i];
        uint64_t col = cols.rank(prod);
        if (cls < 0)
          cls = col_class[col];
        else if (split && col_class[col] != cls)
          throw std::invalid_argument(
              "macaulay_matrix: generator is not a weight eigenvector; split invalid");
        row.push_back({col_remap[col], c.v});
      }
      std::sort(row.begin(), row.end());
      flat[info[g].row_offset + r] = std::move(row);
      row_class[info[g].row_offset + r] = (uint8_t)std::max(cls, 0);
    }
  }

  out.classes.resize(nclasses);
  for (int c = 0; c < nclasses; ++c) out.classes[c].ncols = class_cols[c];
  for (uint64_t r = 0; r < total_rows; ++r)
    out.classes[row_class[r]].rows.push_back(std::move(flat[r]));
  return out;
}

// ---------------------------------------------------------------------------
// streaming sparse rank
// ---------------------------------------------------------------------------

namespace {

struct InvTable {
  uint32_t p;
  std::vector<uint32_t> tab;
  explicit InvTable(uint32_t p_) : p(p_) {
    if (p <= (1u << 22)) {
      tab.assign(p, 0);
      if (p > 1) tab[1] = 1;
      for (uint32_t i = 2; i < p; ++i)
        tab[i] = (uint32_t)(p - (uint64_t)(p / i) * tab[p % i] % p);
    }
  }
  uint32_t inv(uint32_t a) const { return tab.empty() ? mod_inv(a, p) : tab[a]; }
};

// row - f*piv; the shared leading column is expected to cancel
SparseRow row_axpy(const SparseRow& row, const SparseRow& piv, uint32_t f, uint32_t p) {
  SparseRow out;
  out.reserve(row.size() + piv.size());
  size_t i = 0, j = 0;
  while (i < row.size() && j < piv.size()) {
    if (row[i].first < piv[j].first) {
      out.push_back(row[i++]);
    } else if (row[i].first > piv[j].first) {
      uint32_t v = mod_sub(0, mod_mul(f, piv[j].second, p), p);
      if (v) out.push_back({piv[j].first, v});
      ++j;
    } else {
      uint32_t v = mod_sub(row[i].second, mod_mul(f, piv[j].second, p), p);
      if (v) out.push_back({row[i].first, v});
      ++i;
      ++j;
    }
  }
  for (; i < row.size(); ++i) out.push_back(row[i]);
  for (; j < piv.size(); ++j) {
    uint32_t v = mod_sub(0, mod_mul(f, piv[j].second, p), p);
    if (v) out.push_back({piv[j].first, v});
  }
  return out;
}

struct Echelon {
  uint32_t p;
  InvTable inv;
  std::vector<int64_t> pivot_of_col;  // -1 = none
  std::vector<SparseRow> pivots;      // leading value normalized to 1

  Echelon(uint32_t p_, uint32_t ncols) : p(p_), inv(p_), pivot_of_col(ncols, -1) {}

  // reduce only against pivots with index < limit (snapshot semantics)
  void reduce(SparseRow& r, size_t limit) const {
    while (!r.empty()) {
      int64_t pi = pivot_of_col[r[0].first];
      if (pi < 0 || (size_t)pi >= limit) return;
      r = row_axpy(r, pivots[pi], r[0].second, p);
    }
  }

  bool insert(SparseRow r) {
    reduce(r, pivots.size());
    if (r.empty()) return false;
    uint32_t iv = inv.inv(r[0].second);
    if (iv != 1)
      for (auto& [c, v] : r) v = mod_mul(v, iv, p);
    pivot_of_col[r[0].first] = (int64_t)pivots.size();
    pivots.push_back(std::move(r));
    return true;
  }
};

}  // namespace

uint64_t sparse_rank(ClassMatrix m, uint32_t p, int nthreads) {
  std::stable_sort(m.rows.begin(), m.rows.end(),
                   [](const SparseRow& a, const SparseRow& b) { return a.size() < b.size(); });
  Echelon ech(p, m.ncols);
  const size_t B = 256;
  int k = nthreads > 0 ? nthreads : omp_get_max_threads();
  for (size_t start = 0; start < m.rows.size(); start += B) {
    size_t end = std::min(start + B, m.rows.size());
    size_t snap = ech.pivots.size();
    if (snap > 0 && end - start > 1) {
#pragma omp parallel for schedule(dynamic, 4) num_threads(k)
      for (long long r = (long long)start; r < (long long)end; ++r)
        ech.reduce(m.rows[r], snap);
    }
    for (size_t r = start; r < end; ++r) ech.insert(std::move(m.rows[r]));
  }
  return ech.pivots.size();
}

uint64_t dense_rank_reference(const ClassMatrix& m, uint32_t p) {
  std::vector<std::vector<uint32_t>> M;
  M.reserve(m.rows.size());
  for (const auto& r : m.rows) {
    std::vector<uint32_t> d(m.ncols, 0);
    for (const auto& [c, v] : r) d[c] = v;
    M.push_back(std::move(d));
  }
  uint64_t rank = 0;
  for (uint32_t col = 0; col < m.ncols && rank < M.size(); ++col) {
    size_t pr = SIZE_MAX;
    for (size_t r = rank; r < M.size(); ++r)
      if (M[r][col]) {
        pr = r;
        break;
      }
    if (pr == SIZE_MAX) continue;
    std::swap(M[rank], M[pr]);
    uint32_t iv = mod_inv(M[rank][col], p);
    for (uint32_t c = col; c < m.ncols; ++c) M[rank][c] = mod_mul(M[rank][c], iv, p);
    for (size_t r = 0; r < M.size(); ++r) {
      if (r == rank || !M[r][col]) continue;
      uint32_t f = M[r][col];
      for (uint32_t c = col; c < m.ncols; ++c)
        M[r][c] = mod_sub(M[r][c], mod_mul(f, M[rank][c], p), p);
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Hilbert functions
// ---------------------------------------------------------------------------

Verdict degree_dimension_estimate(std::span<const uint64_t> dims) {
  std::vector<int64_t> table(dims.begin(), dims.end());
  for (int k = 0; table.size() >= 2; ++k) {
    if (table[table.size() - 1] == table[table.size() - 2])
      return Verdict{true, k, table.back()};
    std::vector<int64_t> next;
    for (size_t i = 0; i + 1 < table.size(); ++i) next.push_back(table[i + 1] - table[i]);
    table = std::move(next);
  }
  return Verdict{false, -1, 0};
}

HilbertRecord hilbert_function(const std::vector<Poly<Fp>>& gens, int nvars, int max_degree,
                               uint32_t p, std::span<const int> weights, int nthreads) {
  HilbertRecord rec;
  rec.p = p;
  for (int d = 0; d <= max_degree; ++d) {
    uint64_t cols = mono_count(d, nvars);
    uint64_t rank = 0;
    bool any = false;
    for (const auto& g : gens) {
      auto hd = g.homogeneous_degree();
      if (!hd || *hd <= 0)
        throw std::invalid_argument("hilbert_function: generator is zero or inhomogeneous");
      if (*hd <= d) any = true;
    }
    if (any) {
      MacaulaySplit split = macaulay_matrix(gens, nvars, d, p, weights, nthreads);
      for (auto& cls : split.classes) rank += sparse_rank(std::move(cls), p, nthreads);
    }
    rec.dims.push_back(cols - rank);
  }
  for (size_t i = 0; i + 1 < rec.dims.size(); ++i)
    rec.diff1.push_back((int64_t)rec.dims[i + 1] - (int64_t)rec.dims[i]);
  for (size_t i = 0; i + 1 < rec.diff1.size(); ++i)
    rec.diff2.push_back(rec.diff1[i + 1] - rec.diff1[i]);
  rec.verdict = degree_dimension_estimate(rec.dims);
  return rec;
}

// ---------------------------------------------------------------------------
// Jacobian ranks
// ---------------------------------------------------------------------------

int jacobian_rank_fp(const std::vector<Poly<Fp>>& sys, std::span<const Fp> point, uint32_t p) {
  DomCtx ctx{p};
  size_t m = sys.size(), n = point.size();
  std::vector<std::vector<uint32_t>> J(m, std::vector<uint32_t>(n, 0));
  for (size_t i = 0; i < m; ++i) {
    if ((size_t)sys[i].nvars != n)
      throw std::invalid_argument("jacobian_rank_fp: variable count mismatch");
    for (size_t j = 0; j < n; ++j)
      J[i][j] = sys[i].derivative((int)j).evaluate(point, ctx).v;
  }
  ClassMatrix cm;
  cm.ncols = (uint32_t)n;
  for (auto& row : J) {
    SparseRow r;
    for (uint32_t c = 0; c < n; ++c)
      if (row[c]) r.push_back({c, row[c]});
    cm.rows.push_back(std::move(r));
  }
  return (int)dense_rank_reference(cm, p);
}

CplxRankResult jacobian_rank_cplx(const std::vector<Poly<Cplx>>& sys,
                                  std::span<const Cplx> point, double rel_tol) {
  size_t m = sys.size(), n = point.size();
  Eigen::MatrixXcd J(m, n);
  for (size_t i = 0; i < m; ++i) {
    if ((size_t)sys[i].nvars != n)
      throw std::invalid_argument("jacobian_rank_cplx: variable count mismatch");
    for (size_t j = 0; j < n; ++j) J(i, j) = sys[i].derivative((int)j).evaluate(point);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
  CplxRankResult res;
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size(); ++i) res.svals.push_back(sv(i));
  double top = res.svals.empty() ? 0.0 : res.svals[0];
  int rank = 0;
  for (double s : res.svals)
    if (top > 0 && s > rel_tol * top) ++rank;
  res.rank = rank;
  if (rank > 0 && rank < (int)res.svals.size() && res.svals[rank] > 0)
    res.gap = res.svals[rank - 1] / res.svals[rank];
  else
    res.gap = std::numeric_limits<double>::infinity();
  return res;
}

}  // namespace octocut::gradedla
