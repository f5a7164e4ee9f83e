#include "octocut/e6.hpp"

namespace octocut::e6 {

std::array<Poly<Rational>, 27> op2_ideal(const Poly<Rational>& cubic) {
  if (cubic.nvars != 27) throw std::invalid_argument("op2_ideal: expected 27 variables");
  std::array<Poly<Rational>, 27> out;
  for (int i = 0; i < 27; ++i) out[i] = cubic.derivative(i);
  return out;
}

bool cubic_is_invariant(const Poly<Rational>& cubic, std::span<const int> weights) {
  auto w = torus_weight_of(cubic, weights);
  return w && *w == 0;
}

std::vector<Poly<Rational>> chart_images(const ArtifactData& data) {
  const VarSet& cv = chart_vars();
  std::vector<Poly<Rational>> images(27, Poly<Rational>::zero(cv.size()));
  std::vector<bool> seen(27, false);
  for (int i = 0; i < 27; ++i) {
    int ci = cv.index_of(pvars().names[i]);
    if (ci >= 0) {
      images[i] = Poly<Rational>::variable(cv.size(), ci, Rational(1));
      seen[i] = true;
    }
  }
  // bound coordinates: re-express the stored P-ring right sides in chart vars
  std::vector<Poly<Rational>> p_to_chart(27, Poly<Rational>::zero(cv.size()));
  for (int i = 0; i < 27; ++i)
    if (seen[i]) p_to_chart[i] = images[i];
  for (const auto& [pidx, rhs] : data.chart_bound) {
    for (const auto& [e, c] : rhs.terms)
      for (int i = 0; i < 27; ++i)
        if (e[i] > 0 && !seen[i])
          throw std::runtime_error("chart: bound expression depends on bound coordinate " +
                                   pvars().names[i]);
    images[pidx - 1] = rhs.substitute(p_to_chart);
    seen[pidx - 1] = true;
  }
  for (int i = 0; i < 27; ++i)
    if (!seen[i]) throw std::runtime_error("chart: coordinate " + pvars().names[i] + " unmapped");
  return images;
}

std::vector<Cplx> chart_point(const ArtifactData& data, std::span<const Cplx> free_values) {
  auto images = chart_images(data);
  std::vector<Cplx> out(27);
  for (int i = 0; i < 27; ++i) out[i] = poly_to_cplx(images[i]).evaluate(free_values);
  return out;
}

ChartReport verify_chart(const ArtifactData& data) {
  auto quadrics = op2_ideal(data.cubic);
  auto images = chart_images(data);
  for (int i = 0; i < 27; ++i) {
    if (!quadrics[i].substitute(images).is_zero()) return {false, i + 1};
  }
  return {true, 0};
}

E6Report verify_all(const ArtifactData& data) {
  E6Report r;
  r.cubic_terms = data.cubic.term_count();
  r.invariance_ok = cubic_is_invariant(data.cubic, data.weights);
  auto quadrics = op2_ideal(data.cubic);
  r.eigenweights_ok = true;
  for (int i = 0; i < 27; ++i) {
    auto w = torus_weight_of(quadrics[i], data.weights);
    int expect = ((13 - data.weights[i] % 13) + 13) % 13;
    if (!w || *w != expect) r.eigenweights_ok = false;
  }
  auto chart = verify_chart(data);
  r.chart_ok = chart.ok;
  r.failing_quadric = chart.failing_quadric;
  return r;
}

}  // namespace octocut::e6
