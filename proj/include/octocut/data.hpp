#pragma once
// Loading and integrity-checking of the transcribed source data.  Every
// polynomial the computations rest on ships as a versioned text file under
// data/ and is parsed — never retyped — here; structural fingerprints (term
// counts plus a hash of the canonical re-serialization) guard against
// accidental edits.

#include "octocut/poly.hpp"

#include <array>
#include <string>
#include <vector>

namespace octocut {

// fixed variable sets used throughout
const VarSet& pvars();        // P1..P27
const VarSet& tvars();        // t1..t12
const VarSet& tdvars();       // t1..t12, d1, d2
const VarSet& tduvars();      // t1..t12, d1, d2, u1, u2  (u_i = 1/d_i, internal)
const VarSet& dvars();        // d1, d2
const VarSet& d2var();        // d2
const VarSet& dvar();         // d
const VarSet& chart_vars();   // the 16 free chart coordinates

struct ArtifactData {
  Poly<Rational> cubic;  // 27 vars, 45 terms
  std::vector<int> weights;  // 27 torus weights

  std::vector<std::string> chart_free;              // names of the 16 free coords
  std::vector<std::pair<int, Poly<Rational>>> chart_bound;  // (P index 1..27, rhs in P-ring)

  std::array<Poly<Rational>, 26> plain_quadrics;  // first normal form, in t,d1,d2
  std::array<Poly<Rational>, 26> sym_quadrics;    // form with the index-3 symmetry

  std::array<Poly<Rational>, 12> galois_images;   // image of t_i, in t,d1,d2
  Poly<Rational> disc;    // nodal locus in (d1,d2)
  Poly<Rational> slice7;  // degree-7 slice polynomial in d2
  Poly<Rational> octic;   // degree-8 polynomial in d
};

// Directory resolution: explicit argument > OCTOCUT_DATA env > compiled-in
// source-tree default.
std::string default_data_dir();

// Loads and fingerprint-checks all data files; throws std::runtime_error with
// a named file on any mismatch.
ArtifactData load_data(const std::string& dir = default_data_dir());

struct FileFingerprint {
  std::string file;
  size_t polys;       // number of polynomial records in the file
  size_t terms;       // total term count
  uint64_t hash;      // FNV-1a over the canonical re-serialization
};

// Fingerprints of the shipped files, frozen from the first verified run.
const std::vector<FileFingerprint>& expected_fingerprints();

// Recomputes fingerprints from a directory (used by the freeze tooling and
// the integrity test).
std::vector<FileFingerprint> compute_fingerprints(const std::string& dir);

}  // namespace octocut
