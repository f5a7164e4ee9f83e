#pragma once
// Complex-numerical machinery: damped Gauss–Newton least squares, surface
// point sampling through the affine chart, the bordered multi-start hunt for
// corank-3 points, local A1/A2 classification by power-series elimination,
// and the discriminant-locus checks.

#include "octocut/cut.hpp"
#include "octocut/rng.hpp"

#include <Eigen/Dense>

#include <functional>

namespace octocut::numsearch {

// ---------------------------------------------------------------------------
// Gauss–Newton
// ---------------------------------------------------------------------------

struct NewtonConfig {
  int max_iter = 200;
  double tol_rel = 1e-12;  // converge when |F| < tol_rel * initial |F|
  double tol_abs = 0;      // if positive, converge when |F| < tol_abs instead
  int max_halvings = 30;   // step dampings per iteration
};

struct GnResult {
  bool converged = false;
  Eigen::VectorXcd x;
  double residual = 0;  // final euclidean norm of F
  int iters = 0;
};

// damped least-squares Newton iteration with exact Jacobian callbacks
GnResult gauss_newton(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& F,
                      const std::function<Eigen::MatrixXcd(const Eigen::VectorXcd&)>& J,
                      Eigen::VectorXcd start, const NewtonConfig& cfg);

// ---------------------------------------------------------------------------
// quadratic forms (constant Hessians make the bordered Jacobian exact)
// ---------------------------------------------------------------------------

struct QuadForm {
  Eigen::MatrixXcd A;  // symmetric second-order part
  Eigen::VectorXcd b;
  Cplx c{0, 0};

  Cplx value(const Eigen::VectorXcd& x) const;
  Eigen::VectorXcd grad(const Eigen::VectorXcd& x) const;  // 2Ax + b
  static QuadForm from_poly(const Poly<Cplx>& p);           // degree <= 2
};

// the 26 first-form quadrics at (d1, d2), restricted to the chart t12 = 1,
// as quadratic forms in the 11 chart coordinates
std::vector<QuadForm> chart_quadforms(const ArtifactData& data, Cplx d1, Cplx d2);

// largest scaled residual |q(t)| / sum |coeff| * |monomial(t)| of the
// specialized 26-quadric system at a 12-coordinate point
double scaled_system_residual(const ArtifactData& data, Cplx d1, Cplx d2,
                              std::span<const Cplx> t);

// the same residual for a caller-specialized system
double scaled_residual(const std::array<Poly<Cplx>, 26>& sys, std::span<const Cplx> t);

// ---------------------------------------------------------------------------
// projective bookkeeping
// ---------------------------------------------------------------------------

// divide by the largest-modulus coordinate (smallest index on ties)
std::array<Cplx, 12> normalize_projective(std::span<const Cplx> t);

// chordal distance between projective points (scale and phase independent)
double chordal_distance(std::span<const Cplx> a, std::span<const Cplx> b);

struct Cluster {
  int representative = -1;    // index of the lowest-residual member
  std::vector<int> members;
};

// single-linkage clustering at the tolerance; clusters ordered by smallest
// member index
std::vector<Cluster> cluster_points(const std::vector<std::array<Cplx, 12>>& pts,
                                    const std::vector<double>& residuals, double tol);

// permutation induced by t_i -> zeta13^i t_i on a set of projective points;
// entry -1 when the image matches no point within the tolerance
std::vector<int> g_action_permutation(const std::vector<std::array<Cplx, 12>>& points,
                                      double tol = 1e-6);

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

struct SamplePoint {
  bool ok = false;
  std::array<Cplx, 12> t{};   // normalized projective point on the surface
  double residual = 0;        // fresh scaled 26-quadric residual
  int seeds_tried = 0;
};

// random chart start, Gauss–Newton on the 15 cut conditions through the
// chart, then the t-coordinate readout
SamplePoint sample_surface_point(const ArtifactData& data, Cplx d1, Cplx d2, uint64_t seed,
                                 int retry_budget = 5);

// ---------------------------------------------------------------------------
// singular point hunt and classification
// ---------------------------------------------------------------------------

struct Classification {
  std::string verdict;        // "smooth" | "A1" | "A2" | "unresolved"
  int corank = 0;
  double sv_gap = 0;          // gap certifying the Jacobian rank
  int jet2_rank = -1;         // rank of the local equation's 2-jet
  double kernel_cubic = 0;    // relative cubic magnitude on the 2-jet kernel
};

// power-series elimination at a corank-3 candidate of a quadric system
Classification classify_singularity(const std::vector<QuadForm>& sys,
                                    const Eigen::VectorXcd& x0, double gap_factor = 1e6);

struct SingularPointReport {
  std::array<Cplx, 12> t{};
  double residual = 0;        // fresh scaled quadric residual
  int jac_rank = 0;           // chart Jacobian rank out of 11 columns
  double sv_gap = 0;
  int corank = 0;
  int jet2_rank = -1;
  double kernel_cubic = 0;
  std::string verdict;
  int cluster_size = 0;
};

struct HuntConfig {
  int starts = 2000;
  uint64_t seed = 1;
  NewtonConfig newton{300, 0, 1e-12, 30};
  double accept_tol = 1e-10;   // fresh scaled residual bound for a solution
  double cluster_tol = 1e-6;
  int nthreads = 0;
};

struct HuntResult {
  std::vector<SingularPointReport> clusters;
  int starts = 0;
  int converged_starts = 0;
};

// Bordered corank-3 search: unknowns are the chart point x in C^11 and three
// null vectors V in C^{11x3}; equations are the 26 quadrics, J(x) V = 0, and
// N V = I_3 for a fixed random normalization N derived from the seed.
HuntResult find_singular_points(const ArtifactData& data, Cplx d1, Cplx d2,
                                const HuntConfig& cfg);

// Re-run one bordered solve seeded at a reported point with a tighter
// tolerance; returns the chordal distance moved, or NaN when the solve fails.
double repolish_distance(const ArtifactData& data, Cplx d1, Cplx d2, std::span<const Cplx> t,
                         const HuntConfig& cfg, double tol_abs);

// ---------------------------------------------------------------------------
// numeric point transport
// ---------------------------------------------------------------------------

// first-form point -> second-form point, dividing coordinatewise by the
// rescaling factors at (d1, d2)
std::array<Cplx, 12> rescale_point(const cut::RescalingResult& rs, std::span<const Cplx> t,
                                   Cplx d1, Cplx d2);

// image of a second-form point under the shipped order-4 substitution, with
// monomial coefficients evaluated at (d1, d2); lands on the member at
// (-1/d2, d1)
std::array<Cplx, 12> galois_transport_point(const ArtifactData& data, std::span<const Cplx> t,
                                            Cplx d1, Cplx d2);

// ---------------------------------------------------------------------------
// discriminant-locus checks
// ---------------------------------------------------------------------------

// roots of a univariate polynomial by companion-matrix eigenvalues with one
// Newton polish, sorted by (re, im)
std::vector<Cplx> poly_roots(const Poly<Rational>& p);

// scaled vanishing |p(x)| / sum |coeff| * |monomial(x)|
double scaled_value(const Poly<Rational>& p, std::span<const Cplx> x);

struct CuspPair {
  Cplx d1, d2;
  double disc = 0, pd1 = 0, pd2 = 0;  // scaled residuals of the curve and partials
  bool flagged = false;               // nearest to the recorded approximation
};

struct DiscReport {
  std::vector<Cplx> slice_roots;          // 7
  std::vector<double> slice_residuals;    // scaled |curve(1, r)|
  bool slice_ok = false;
  std::vector<Cplx> octic_roots;          // 8
  std::vector<CuspPair> cusp_pairs;       // ordered root pairs on the curve
  bool cusp_ok = false;                   // all pairs: curve and both partials vanish
  bool flagged_found = false;
  Cplx flagged_d1{}, flagged_d2{};
};

DiscReport discriminant_checks(const ArtifactData& data);

struct HeatmapSpec {
  double re0 = -2, re1 = 2, im0 = -2, im1 = 2;
  int grid = 64;
  Cplx d1{1, 0};
};

// CSV samples of the discriminant modulus over a d2-plane window
void disc_heatmap_csv(const ArtifactData& data, const HeatmapSpec& spec, std::ostream& out);

}  // namespace octocut::numsearch
