#pragma once
// The invariant cubic, the 27-quadric ideal it generates via its partials, the
// order-13 diagonal symmetry, and the affine chart — plus the exact
// consistency checks tying them together.

#include "octocut/data.hpp"

#include <optional>
#include <span>

namespace octocut::e6 {

// All 27 partial derivatives of the cubic, in variable order (index i holds
// the derivative with respect to P_{i+1}).
std::array<Poly<Rational>, 27> op2_ideal(const Poly<Rational>& cubic);

// Weight of a diagonal-symmetry eigenvector mod 13, or nullopt if the
// monomials disagree.  Throws on the zero polynomial.
template <class C>
std::optional<int> torus_weight_of(const Poly<C>& p, std::span<const int> weights) {
  if (p.is_zero()) throw std::invalid_argument("torus_weight_of: zero polynomial");
  return p.weight_class(weights, 13);
}

// True iff every monomial of the cubic has weight sum ≡ 0 (mod 13), i.e. the
// diagonal order-13 action fixes the cubic term by term.
bool cubic_is_invariant(const Poly<Rational>& cubic, std::span<const int> weights);

// The 27 chart images: free coordinates map to themselves (in the 16-variable
// chart ring), bound coordinates to their solved expressions.
std::vector<Poly<Rational>> chart_images(const ArtifactData& data);

// Evaluate the chart at a complex point of the 16 free coordinates, returning
// the full 27-vector.
std::vector<Cplx> chart_point(const ArtifactData& data, std::span<const Cplx> free_values);

struct ChartReport {
  bool ok = false;
  int failing_quadric = 0;  // 1-based index of the first non-vanishing restriction
};

// Substitutes the chart into all 27 quadrics over ℚ and confirms each
// restriction is identically zero.
ChartReport verify_chart(const ArtifactData& data);

struct E6Report {
  size_t cubic_terms = 0;
  bool invariance_ok = false;    // every cubic term has weight sum ≡ 0 mod 13
  bool eigenweights_ok = false;  // quadric i is an eigenvector of weight -a_i
  bool chart_ok = false;
  int failing_quadric = 0;
};

E6Report verify_all(const ArtifactData& data);

}  // namespace octocut::e6
