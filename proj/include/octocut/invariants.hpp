#pragma once
// The order-13-invariant graded data of a cut: enumeration of invariant
// monomials and invariant quotient dimensions via weight-restricted ranks.

#include "octocut/gradedla.hpp"

#include <array>

namespace octocut::invariants {

// all degree-d monomials in t1..t12 with total weight sum(i * e_i) = 0 mod 13,
// in canonical basis order
std::vector<Expo> invariant_monomials(int degree);

// invariant quotient dimensions for degrees 0..max_degree: weight-0 columns
// minus the weight-0 Macaulay rank
std::vector<uint64_t> invariant_hilbert(const std::vector<Poly<Fp>>& cut_gens, int max_degree,
                                        uint32_t p, int nthreads = 0);

// per-weight-class quotient dimensions at one degree; their sum equals the
// plain quotient dimension
std::array<uint64_t, 13> class_dimensions(const std::vector<Poly<Fp>>& cut_gens, int degree,
                                          uint32_t p, int nthreads = 0);

// the 12 t-variable weights (1, 2, ..., 12)
std::span<const int> t_weights();

}  // namespace octocut::invariants
