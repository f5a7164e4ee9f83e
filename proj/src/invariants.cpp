#include "octocut/invariants.hpp"

namespace octocut::invariants {

std::span<const int> t_weights() {
  static const std::array<int, 12> w = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  return w;
}

std::vector<Expo> invariant_monomials(int degree) {
  if (degree < 0) throw std::invalid_argument("invariant_monomials: negative degree");
  gradedla::MonomialBasis basis{12, degree};
  std::vector<Expo> out;
  for (uint64_t i = 0, n = basis.size(); i < n; ++i) {
    Expo e = basis.unrank(i);
    long w = 0;
    for (int j = 0; j < 12; ++j) w += (long)(j + 1) * e[j];
    if (w % 13 == 0) out.push_back(std::move(e));
  }
  return out;
}

std::array<uint64_t, 13> class_dimensions(const std::vector<Poly<Fp>>& cut_gens, int degree,
                                          uint32_t p, int nthreads) {
  std::array<uint64_t, 13> dims{};
  if (degree == 0) {
    dims[0] = 1;
    return dims;
  }
  gradedla::MacaulaySplit split =
      gradedla::macaulay_matrix(cut_gens, 12, degree, p, t_weights(), nthreads);
  for (int c = 0; c < 13; ++c) {
    uint64_t cols = split.classes[c].ncols;
    uint64_t rank = gradedla::sparse_rank(std::move(split.classes[c]), p, nthreads);
    dims[c] = cols - rank;
  }
  return dims;
}

std::vector<uint64_t> invariant_hilbert(const std::vector<Poly<Fp>>& cut_gens, int max_degree,
                                        uint32_t p, int nthreads) {
  std::vector<uint64_t> out;
  for (int d = 0; d <= max_degree; ++d) {
    if (d == 0) {
      out.push_back(1);
      continue;
    }
    gradedla::MacaulaySplit split =
        gradedla::macaulay_matrix(cut_gens, 12, d, p, t_weights(), nthreads);
    uint64_t cols = split.classes[0].ncols;
    uint64_t rank = gradedla::sparse_rank(std::move(split.classes[0]), p, nthreads);
    out.push_back(cols - rank);
  }
  return out;
}

}  // namespace octocut::invariants
