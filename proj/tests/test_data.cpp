// Data loading and integrity: structural facts about the shipped files and
// the fingerprint guard against accidental edits.
#include <doctest.h>

#include <octocut/data.hpp>
#include <octocut/domains.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using namespace octocut;

namespace {

const ArtifactData& data() {
  static ArtifactData d = load_data();
  return d;
}

int t_degree(const Expo& e) {
  int s = 0;
  for (int i = 0; i < 12; ++i) s += e[i];
  return s;
}

}  // namespace

TEST_CASE("cubic: 45 cubic terms with unit coefficients") {
  const auto& c = data().cubic;
  REQUIRE(c.nvars == 27);
  CHECK(c.terms.size() == 45);
  CHECK(c.homogeneous_degree() == 3);
  for (const auto& [e, coef] : c.terms)
    CHECK((coef == Rational(1) || coef == Rational(-1)));
}

TEST_CASE("torus weights match the frozen vector") {
  const std::vector<int> expect{6, 7, 7, 10, 3, 6, 10, 3, 0, 5, 8, 8, 4, 9,
                                5, 4, 9, 0, 2, 11, 11, 12, 1, 2, 12, 1, 0};
  CHECK(data().weights == expect);
}

TEST_CASE("affine chart: 16 free coordinates, 11 bound, P22 pinned to 1") {
  const auto& d = data();
  CHECK(d.chart_free.size() == 16);
  CHECK(d.chart_bound.size() == 11);
  bool found_p22 = false;
  for (const auto& [idx, rhs] : d.chart_bound) {
    CHECK(idx >= 1);
    CHECK(idx <= 27);
    if (idx == 22) {
      found_p22 = true;
      CHECK(rhs == Poly<Rational>::constant(rhs.nvars, Rational(1)));
    }
    // Bound coordinates are solved from quadrics: at most quadratic in the
    // free ones.
    CHECK(rhs.total_degree() <= 2);
  }
  CHECK(found_p22);
  // Free + bound together cover all 27 coordinates exactly once.
  std::vector<int> seen(28, 0);
  for (const auto& name : d.chart_free) {
    int idx = std::stoi(name.substr(1));
    seen[idx]++;
  }
  for (const auto& [idx, rhs] : d.chart_bound) seen[idx]++;
  for (int i = 1; i <= 27; ++i) CHECK(seen[i] == 1);
}

TEST_CASE("restricted quadrics: every term is exactly quadratic in t") {
  const auto& d = data();
  for (const auto& q : d.plain_quadrics) {
    REQUIRE(q.nvars == 14);
    CHECK(!q.terms.empty());
    for (const auto& [e, c] : q.terms) CHECK(t_degree(e) == 2);
  }
  for (const auto& q : d.sym_quadrics) {
    REQUIRE(q.nvars == 14);
    CHECK(!q.terms.empty());
    for (const auto& [e, c] : q.terms) CHECK(t_degree(e) == 2);
  }
}

TEST_CASE("substitution table: twelve monomial images, each linear in t") {
  for (const auto& img : data().galois_images) {
    REQUIRE(img.nvars == 14);
    REQUIRE(img.terms.size() == 1);
    CHECK(t_degree(img.terms.begin()->first) == 1);
  }
}

TEST_CASE("curve data: term counts of the one- and two-parameter polynomials") {
  const auto& d = data();
  CHECK(d.disc.nvars == 2);
  CHECK(d.disc.terms.size() == 56);
  CHECK(d.slice7.nvars == 1);
  CHECK(d.slice7.terms.size() == 8);
  CHECK(d.slice7.total_degree() == 7);
  CHECK(d.octic.nvars == 1);
  CHECK(d.octic.terms.size() == 9);
  CHECK(d.octic.total_degree() == 8);
  // Leading and trailing coefficients of the octic are both 3^7.
  CHECK(d.octic.coeff(Expo({8})) == Rational(2187));
  CHECK(d.octic.coeff(Expo({0})) == Rational(2187));
}

TEST_CASE("fingerprints: recomputation matches the frozen table") {
  auto table = expected_fingerprints();
  auto live = compute_fingerprints(default_data_dir());
  REQUIRE(table.size() == live.size());
  for (size_t i = 0; i < table.size(); ++i) {
    CHECK(table[i].file == live[i].file);
    CHECK(table[i].polys == live[i].polys);
    CHECK(table[i].terms == live[i].terms);
    if (table[i].hash != 0) CHECK(table[i].hash == live[i].hash);
  }
}

TEST_CASE("corrupted data directory is rejected at load time") {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "octocut_corrupt_test";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  for (const auto& entry : fs::directory_iterator(default_data_dir()))
    fs::copy_file(entry.path(), tmp / entry.path().filename());

  // Flip one sign in the cubic's file: structure still parses, content wrong.
  fs::path target = tmp / "cartan_cubic.txt";
  std::string text;
  {
    std::ifstream in(target);
    std::string line;
    while (std::getline(in, line)) text += line + "\n";
  }
  auto pos = text.find(" + 1*");
  REQUIRE(pos != std::string::npos);
  text[pos + 1] = '-';
  {
    std::ofstream out(target, std::ios::trunc);
    out << text;
  }
  CHECK_THROWS_AS(load_data(tmp.string()), std::runtime_error);
  fs::remove_all(tmp);
}
