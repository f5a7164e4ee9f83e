#include "octocut/data.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace octocut {

const VarSet& pvars() {
  static VarSet v = numbered_vars("P", 27);
  return v;
}
const VarSet& tvars() {
  static VarSet v = numbered_vars("t", 12);
  return v;
}
const VarSet& tdvars() {
  static VarSet v = [] {
    VarSet x = numbered_vars("t", 12);
    x.names.push_back("d1");
    x.names.push_back("d2");
    return x;
  }();
  return v;
}
const VarSet& tduvars() {
  static VarSet v = [] {
    VarSet x = numbered_vars("t", 12);
    x.names.push_back("d1");
    x.names.push_back("d2");
    x.names.push_back("u1");
    x.names.push_back("u2");
    return x;
  }();
  return v;
}
const VarSet& dvars() {
  static VarSet v = named_vars({"d1", "d2"});
  return v;
}
const VarSet& d2var() {
  static VarSet v = named_vars({"d2"});
  return v;
}
const VarSet& dvar() {
  static VarSet v = named_vars({"d"});
  return v;
}
const VarSet& chart_vars() {
  static VarSet v = named_vars({"P1", "P2", "P3", "P5", "P7", "P9", "P10", "P12", "P14", "P15",
                                "P16", "P17", "P20", "P24", "P26", "P27"});
  return v;
}

std::string default_data_dir() {
  if (const char* env = std::getenv("OCTOCUT_DATA")) return env;
#ifdef OCTOCUT_DATA_DIR
  return OCTOCUT_DATA_DIR;
#else
  return "data";
#endif
}

// ---------------------------------------------------------------------------
// file reading
// ---------------------------------------------------------------------------

static std::vector<std::string> read_content_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    if (!line.empty() && line[0] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

static uint64_t fnv1a(const std::string& s, uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// ---------------------------------------------------------------------------
// per-file loaders (each returns its canonical re-serialization for hashing)
// ---------------------------------------------------------------------------

namespace {

struct Loaded {
  ArtifactData data;
  std::vector<FileFingerprint> prints;
};

struct FileAcc {
  std::string canon;
  size_t polys = 0;
  size_t terms = 0;
  void add(const std::string& text, size_t tc) {
    canon += text;
    canon += '\n';
    polys += 1;
    terms += tc;
  }
  FileFingerprint print(const std::string& file) const {
    return FileFingerprint{file, polys, terms, fnv1a(canon)};
  }
};

Poly<Rational> parse_q(const std::string& line, const VarSet& vars, const std::string& file) {
  try {
    return poly_from_text<Rational>(line, vars);
  } catch (const std::exception& e) {
    throw std::runtime_error(file + ": " + e.what());
  }
}

}  // namespace

static Loaded load_all(const std::string& dir) {
  Loaded L;
  auto path = [&](const char* f) { return dir + "/" + f; };

  {  // cartan_cubic.txt: one 45-term cubic in P1..P27
    const char* f = "cartan_cubic.txt";
    auto lines = read_content_lines(path(f));
    if (lines.size() != 1) throw std::runtime_error(std::string(f) + ": expected 1 polynomial");
    L.data.cubic = parse_q(lines[0], pvars(), f);
    FileAcc acc;
    acc.add(poly_to_text(L.data.cubic, pvars()), L.data.cubic.term_count());
    L.prints.push_back(acc.print(f));
  }

  {  // torus_weights.txt: 27 integers
    const char* f = "torus_weights.txt";
    auto lines = read_content_lines(path(f));
    if (lines.size() != 1) throw std::runtime_error(std::string(f) + ": expected 1 line");
    std::istringstream ss(lines[0]);
    int w;
    while (ss >> w) L.data.weights.push_back(w);
    if (L.data.weights.size() != 27)
      throw std::runtime_error(std::string(f) + ": expected 27 weights");
    FileAcc acc;
    std::string canon;
    for (size_t i = 0; i < 27; ++i)
      canon += (i ? " " : "") + std::to_string(L.data.weights[i]);
    acc.add(canon, 27);
    L.prints.push_back(acc.print(f));
  }

  {  // affine_chart.txt: lines "Pk = rhs"
    const char* f = "affine_chart.txt";
    auto lines = read_content_lines(path(f));
    FileAcc acc;
    for (const auto& line : lines) {
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error(std::string(f) + ": missing '=' in: " + line);
      std::string lhs = line.substr(0, eq);
      while (!lhs.empty() && lhs.back() == ' ') lhs.pop_back();
      int vi = pvars().index_of(lhs);
      if (vi < 0) throw std::runtime_error(std::string(f) + ": bad bound variable " + lhs);
      Poly<Rational> rhs = parse_q(line.substr(eq + 1), pvars(), f);
      L.data.chart_bound.emplace_back(vi + 1, rhs);
      acc.add(pvars().names[vi] + " = " + poly_to_text(rhs, pvars()), rhs.term_count() + 1);
    }
    if (L.data.chart_bound.size() != 11)
      throw std::runtime_error(std::string(f) + ": expected 11 bound coordinates");
    L.data.chart_free = chart_vars().names;
    L.prints.push_back(acc.print(f));
  }

  auto load_26 = [&](const char* f, std::array<Poly<Rational>, 26>& out) {
    auto lines = read_content_lines(path(f));
    if (lines.size() != 26) throw std::runtime_error(std::string(f) + ": expected 26 quadrics");
    FileAcc acc;
    for (size_t i = 0; i < 26; ++i) {
      out[i] = parse_q(lines[i], tdvars(), f);
      acc.add(poly_to_text(out[i], tdvars()), out[i].term_count());
    }
    L.prints.push_back(acc.print(f));
  };
  load_26("cut_quadrics_plain.txt", L.data.plain_quadrics);
  load_26("cut_quadrics_symmetric.txt", L.data.sym_quadrics);

  {  // galois_substitution.txt: 12 images in t,d1,d2
    const char* f = "galois_substitution.txt";
    auto lines = read_content_lines(path(f));
    if (lines.size() != 12) throw std::runtime_error(std::string(f) + ": expected 12 images");
    FileAcc acc;
    for (size_t i = 0; i < 12; ++i) {
      L.data.galois_images[i] = parse_q(lines[i], tdvars(), f);
      acc.add(poly_to_text(L.data.galois_images[i], tdvars()),
              L.data.galois_images[i].term_count());
    }
    L.prints.push_back(acc.print(f));
  }

  auto load_1 = [&](const char* f, const VarSet& vars, Poly<Rational>& out) {
    auto lines = read_content_lines(path(f));
    if (lines.size() != 1) throw std::runtime_error(std::string(f) + ": expected 1 polynomial");
    out = parse_q(lines[0], vars, f);
    FileAcc acc;
    acc.add(poly_to_text(out, vars), out.term_count());
    L.prints.push_back(acc.print(f));
  };
  load_1("discriminant_curve.txt", dvars(), L.data.disc);
  load_1("singular_slice_deg7.txt", d2var(), L.data.slice7);
  load_1("cusp_octic.txt", dvar(), L.data.octic);

  return L;
}

std::vector<FileFingerprint> compute_fingerprints(const std::string& dir) {
  return load_all(dir).prints;
}

// Frozen from the first verified run over the shipped files; a zero hash means
// "not frozen yet" and only the structural counts are enforced.
const std::vector<FileFingerprint>& expected_fingerprints() {
  static const std::vector<FileFingerprint> table = {
      {"cartan_cubic.txt", 1, 45, 0x1c1795aa9ceda435ull},
      {"torus_weights.txt", 1, 27, 0xb7aede1e11a62617ull},
      {"affine_chart.txt", 11, 52, 0x2e4cdae0228431bdull},
      {"cut_quadrics_plain.txt", 26, 104, 0x6e4bf5a1b93532e4ull},
      {"cut_quadrics_symmetric.txt", 26, 104, 0x8785d2a413e4cd72ull},
      {"galois_substitution.txt", 12, 12, 0x0330a5bf55011d1eull},
      {"discriminant_curve.txt", 1, 56, 0x586e986a04949d7dull},
      {"singular_slice_deg7.txt", 1, 8, 0x8a43edda50e9e4f1ull},
      {"cusp_octic.txt", 1, 9, 0x380860d369f47837ull},
  };
  return table;
}

ArtifactData load_data(const std::string& dir) {
  Loaded L = load_all(dir);
  const auto& expected = expected_fingerprints();
  if (L.prints.size() != expected.size())
    throw std::runtime_error("data fingerprint table out of sync");
  for (size_t i = 0; i < expected.size(); ++i) {
    const auto& e = expected[i];
    const auto& g = L.prints[i];
    bool ok = g.file == e.file &&
              (e.hash == 0 ||  // unfrozen row: structural checks live in the loader
               (g.polys == e.polys && g.terms == e.terms && g.hash == e.hash));
    if (!ok) throw std::runtime_error("data fingerprint mismatch in " + g.file);
  }
  return L.data;
}

}  // namespace octocut
