// octocut: command-line front end for building the equivariant cuts and
// running every verification workflow.

#include "octocut/cut.hpp"
#include "octocut/e6.hpp"
#include "octocut/invariants.hpp"
#include "octocut/numsearch.hpp"
#include "octocut/report.hpp"
#include "octocut/rng.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace oc = octocut;
using nlohmann::ordered_json;

namespace {

struct Globals {
  std::string data_dir;
  int threads = 0;
  uint64_t seed = 1;
  bool json = false;
  double tol = 0;  // 0 = module default
};

oc::ArtifactData load(const Globals& g) {
  return oc::load_data(g.data_dir.empty() ? oc::default_data_dir() : g.data_dir);
}

ordered_json cjson(oc::Cplx z) { return ordered_json::array({z.real(), z.imag()}); }

template <class C>
C parse_or_throw(const std::string& s, oc::DomCtx ctx, const std::string& what) {
  auto v = oc::Dom<C>::parse(s, ctx);
  if (!v) throw std::runtime_error("cannot parse " + what + " over " +
                                   std::string(oc::Dom<C>::name()) + ": " + s);
  return *v;
}

std::string cstr(oc::Cplx z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ")
     << std::abs(z.imag()) << "i";
  return os.str();
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

int emit(const Globals& g, const ordered_json& doc, const std::string& text, bool ok) {
  if (g.json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
  return ok ? 0 : 1;
}

// ------------------------------------------------------------------ e6

int cmd_e6_verify(const Globals& g) {
  auto data = load(g);
  auto rep = oc::e6::verify_all(data);
  bool ok = rep.cubic_terms == 45 && rep.invariance_ok && rep.eigenweights_ok && rep.chart_ok;
  ordered_json doc{{"cubic_terms", rep.cubic_terms},
                   {"invariance", rep.invariance_ok},
                   {"eigenweights", rep.eigenweights_ok},
                   {"chart", rep.chart_ok},
                   {"verdict", ok ? "pass" : "fail"}};
  std::ostringstream os;
  os << "cubic terms: " << rep.cubic_terms << " (expected 45)\n"
     << "termwise order-13 invariance: " << (rep.invariance_ok ? "ok" : "FAIL") << "\n"
     << "partials are eigenvectors of weight -a_i: " << (rep.eigenweights_ok ? "ok" : "FAIL")
     << "\n"
     << "chart substitution annihilates all 27 quadrics: " << (rep.chart_ok ? "ok" : "FAIL")
     << "\n"
     << (ok ? "PASS" : "FAIL") << "\n";
  return emit(g, doc, os.str(), ok);
}

// ------------------------------------------------------------ cut build

template <class C>
int build_and_print(const oc::ArtifactData& data, const std::array<std::string, 6>& dv,
                    oc::DomCtx ctx, std::ostream& os) {
  std::array<C, 6> d;
  for (int i = 0; i < 6; ++i)
    d[(size_t)i] = parse_or_throw<C>(dv[(size_t)i], ctx, "d" + std::to_string(i + 1));
  auto params = oc::cut::CutParams<C>::from_free(d, ctx);
  auto sys = oc::cut::build_cut<C>(data, params, ctx);
  os << "# 26 restricted quadrics over " << oc::Dom<C>::name() << ", variables t1..t12\n";
  for (int i = 0; i < 26; ++i)
    os << oc::poly_to_text(sys.quadrics[i], oc::tvars()) << "\n";
  return 0;
}

int cmd_cut_build(const Globals& g, const std::array<std::string, 6>& dv,
                  const std::string& field, const std::string& out_path) {
  auto data = load(g);
  std::ofstream file;
  std::ostream& os = open_out(file, out_path);
  if (field == "q") return build_and_print<oc::Rational>(data, dv, {}, os);
  if (field == "qr2") return build_and_print<oc::QuadExt>(data, dv, {}, os);
  if (field == "c") return build_and_print<oc::Cplx>(data, dv, {}, os);
  if (field.rfind("fp:", 0) == 0) {
    oc::DomCtx ctx{(uint32_t)std::stoul(field.substr(3))};
    return build_and_print<oc::Fp>(data, dv, ctx, os);
  }
  throw CLI::ValidationError("--field", "expected one of q, qr2, c, fp:<prime>");
}

// ------------------------------------------------- cut verify-symmetries

int cmd_cut_verify(const Globals& g, uint32_t p) {
  auto data = load(g);
  auto m = oc::cut::match_paper_quadrics(data);
  auto mf = oc::cut::match_paper_quadrics_fp(data, p, g.seed);
  auto c3s = oc::cut::verify_c3_symmetry(data.sym_quadrics);
  auto c3p = oc::cut::verify_c3_symmetry(data.plain_quadrics);
  auto rs = oc::cut::find_rescaling(data.plain_quadrics, data.sym_quadrics);
  auto gs = oc::cut::verify_galois_symbolic(data);
  auto gf = oc::cut::verify_galois_fp(data, p, g.seed);
  bool ok = m.ok && m.all_scalars_one && mf.ok && c3s.holds && !c3p.holds && rs.found &&
            gs.holds && gf.holds;

  ordered_json factors = ordered_json::array();
  if (rs.found)
    for (const auto& s : rs.s) factors.push_back(s.str());
  ordered_json doc{{"match", ordered_json{{"ok", m.ok},
                                          {"all_scalars_one", m.all_scalars_one},
                                          {"note", m.note},
                                          {"fp_ok", mf.ok}}},
                   {"c3", ordered_json{{"symmetric_form_holds", c3s.holds},
                                       {"first_form_holds", c3p.holds}}},
                   {"rescaling", ordered_json{{"found", rs.found}, {"factors", factors}}},
                   {"galois", ordered_json{{"symbolic", gs.holds}, {"fp", gf.holds}}},
                   {"verdict", ok ? "pass" : "fail"}};

  std::ostringstream os;
  os << "built system matches the shipped first form (up to scalars): "
     << (m.ok ? "ok" : "FAIL") << "\n"
     << "  all matching scalars equal 1: " << (m.all_scalars_one ? "ok" : "FAIL") << "\n"
     << "  note: " << m.note << "\n"
     << "  numeric check mod " << p << ": " << (mf.ok ? "ok" : "FAIL") << "\n"
     << "index-3 substitution preserves the second form's span: "
     << (c3s.holds ? "ok" : "FAIL") << "\n"
     << "  (first form, expected not to hold: " << (c3p.holds ? "holds" : "does not hold")
     << ")\n"
     << "diagonal rescaling first form -> second form: " << (rs.found ? "found" : "FAIL")
     << "\n";
  if (rs.found) {
    os << "  gauge s_1 = 1; factors:\n";
    for (int i = 0; i < 12; ++i)
      os << "    s_" << (i + 1) << " = " << rs.s[(size_t)i].str() << "\n";
  }
  os << "order-4 parameter correspondence carries (-1/d2, d1) into the span at (d1, d2):\n"
     << "  symbolic: " << (gs.holds ? "ok" : "FAIL") << "\n"
     << "  mod " << p << ": " << (gf.holds ? "ok" : "FAIL") << "\n"
     << (ok ? "PASS" : "FAIL") << "\n";
  return emit(g, doc, os.str(), ok);
}

// -------------------------------------------------------------- hilbert

void print_record(const oc::gradedla::HilbertRecord& rec, std::ostream& os) {
  os << "p = " << rec.p << "\n";
  os << "h = [";
  for (size_t i = 0; i < rec.dims.size(); ++i) os << (i ? ", " : "") << rec.dims[i];
  os << "]\ndiff1 = [";
  for (size_t i = 0; i < rec.diff1.size(); ++i) os << (i ? ", " : "") << rec.diff1[i];
  os << "]\ndiff2 = [";
  for (size_t i = 0; i < rec.diff2.size(); ++i) os << (i ? ", " : "") << rec.diff2[i];
  os << "]\n";
  if (rec.verdict.stabilized)
    os << "difference-table verdict: dimension " << rec.verdict.dimension << ", degree "
       << rec.verdict.degree << "\n";
  else
    os << "difference-table verdict: not stabilized at this degree\n";
}

int cmd_hilbert(const Globals& g, const std::string& system, uint32_t p, int maxdeg,
                int64_t d1_opt, int64_t d2_opt) {
  auto data = load(g);
  oc::gradedla::HilbertRecord rec;
  ordered_json params = ordered_json::object();
  if (system == "op2") {
    auto partials = oc::e6::op2_ideal(data.cubic);
    std::vector<oc::Poly<oc::Fp>> gens;
    for (const auto& q : partials) gens.push_back(oc::poly_to_fp(q, p));
    rec = oc::gradedla::hilbert_function(gens, 27, maxdeg, p, data.weights, g.threads);
  } else if (system == "cut") {
    oc::DomCtx ctx{p};
    oc::Rng r = oc::Rng(g.seed).fork(100);
    int64_t v1 = d1_opt > 0 ? d1_opt : (int64_t)(1 + r.next_u64() % (p - 1));
    int64_t v2 = d2_opt > 0 ? d2_opt : (int64_t)(1 + r.next_u64() % (p - 1));
    params = ordered_json{{"d1", v1}, {"d2", v2}};
    auto sys = oc::cut::specialize_system<oc::Fp>(
        data.plain_quadrics, oc::Dom<oc::Fp>::from_int(v1, ctx),
        oc::Dom<oc::Fp>::from_int(v2, ctx), ctx);
    std::vector<oc::Poly<oc::Fp>> gens(sys.begin(), sys.end());
    rec = oc::gradedla::hilbert_function(gens, 12, maxdeg, p, oc::invariants::t_weights(),
                                         g.threads);
  } else {
    throw CLI::ValidationError("--system", "expected op2 or cut");
  }

  ordered_json doc{{"system", system},   {"p", p},
                   {"params", params},   {"dims", rec.dims},
                   {"diff1", rec.diff1}, {"diff2", rec.diff2},
                   {"verdict", ordered_json{{"stabilized", rec.verdict.stabilized},
                                            {"dimension", rec.verdict.dimension},
                                            {"degree", rec.verdict.degree}}}};
  std::ostringstream os;
  os << "system: " << system << "\n";
  if (!params.empty()) os << "parameters mod p: d1 = " << params["d1"] << ", d2 = "
                          << params["d2"] << "\n";
  print_record(rec, os);
  return emit(g, doc, os.str(), true);
}

int cmd_inv_hilbert(const Globals& g, uint32_t p, int maxdeg) {
  auto data = load(g);
  oc::DomCtx ctx{p};
  oc::Rng r = oc::Rng(g.seed).fork(200);
  int64_t v1 = (int64_t)(1 + r.next_u64() % (p - 1));
  int64_t v2 = (int64_t)(1 + r.next_u64() % (p - 1));
  auto sys = oc::cut::specialize_system<oc::Fp>(data.plain_quadrics,
                                                oc::Dom<oc::Fp>::from_int(v1, ctx),
                                                oc::Dom<oc::Fp>::from_int(v2, ctx), ctx);
  std::vector<oc::Poly<oc::Fp>> gens(sys.begin(), sys.end());
  auto dims = oc::invariants::invariant_hilbert(gens, maxdeg, p, g.threads);
  std::vector<size_t> ambient;
  for (int d = 0; d <= maxdeg; ++d)
    ambient.push_back(oc::invariants::invariant_monomials(d).size());

  ordered_json doc{{"p", p},
                   {"params", ordered_json{{"d1", v1}, {"d2", v2}}},
                   {"invariant_dims", dims},
                   {"ambient_invariant_monomials", ambient}};
  std::ostringstream os;
  os << "p = " << p << ", d1 = " << v1 << ", d2 = " << v2 << "\n";
  os << "invariant quotient dimensions = [";
  for (size_t i = 0; i < dims.size(); ++i) os << (i ? ", " : "") << dims[i];
  os << "]\nambient invariant monomial counts = [";
  for (size_t i = 0; i < ambient.size(); ++i) os << (i ? ", " : "") << ambient[i];
  os << "]\n";
  return emit(g, doc, os.str(), true);
}

// ------------------------------------------------------------ sing find

int cmd_sing_find(const Globals& g, std::string d1s, std::string d2s, int starts) {
  auto data = load(g);
  oc::Cplx d1, d2;
  std::ostringstream os;
  if (d1s.empty() || d2s.empty()) {
    auto disc = oc::numsearch::discriminant_checks(data);
    if (!disc.flagged_found) throw std::runtime_error("no flagged cusp pair found");
    d1 = disc.flagged_d1;
    d2 = disc.flagged_d2;
    os << "using the flagged cusp parameters: d1 = " << cstr(d1) << ", d2 = " << cstr(d2)
       << "\n";
  } else {
    d1 = parse_or_throw<oc::Cplx>(d1s, {}, "--d1");
    d2 = parse_or_throw<oc::Cplx>(d2s, {}, "--d2");
  }

  oc::numsearch::HuntConfig hc;
  hc.starts = starts;
  hc.seed = g.seed;
  hc.nthreads = g.threads;
  if (g.tol > 0) hc.accept_tol = g.tol;
  auto hr = oc::numsearch::find_singular_points(data, d1, d2, hc);

  ordered_json pts = ordered_json::array();
  std::vector<std::array<oc::Cplx, 12>> reps;
  for (const auto& c : hr.clusters) {
    reps.push_back(c.t);
    ordered_json coords = ordered_json::array();
    for (const oc::Cplx& z : c.t) coords.push_back(cjson(z));
    pts.push_back(ordered_json{{"t", coords},
                               {"residual", c.residual},
                               {"cluster_size", c.cluster_size},
                               {"jac_rank", c.jac_rank},
                               {"sv_gap", c.sv_gap},
                               {"jet2_rank", c.jet2_rank},
                               {"kernel_cubic", c.kernel_cubic},
                               {"verdict", c.verdict}});
  }
  auto perm = oc::numsearch::g_action_permutation(reps);
  int orbit_count = 0;
  std::vector<int> orbit_sizes;
  bool complete = true;
  for (int v : perm) complete = complete && v >= 0;
  if (complete && !perm.empty()) {
    std::vector<char> seen(perm.size(), 0);
    for (size_t i = 0; i < perm.size(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      size_t j = i;
      while (!seen[j]) {
        seen[j] = 1;
        ++len;
        j = (size_t)perm[j];
      }
      ++orbit_count;
      orbit_sizes.push_back(len);
    }
  }

  ordered_json doc{{"d1", cjson(d1)},
                   {"d2", cjson(d2)},
                   {"starts", hr.starts},
                   {"converged_starts", hr.converged_starts},
                   {"clusters", hr.clusters.size()},
                   {"orbit_count", orbit_count},
                   {"orbit_sizes", orbit_sizes},
                   {"points", pts}};

  os << "starts: " << hr.starts << ", converged: " << hr.converged_starts << "\n";
  os << "clusters: " << hr.clusters.size() << "\n";
  os << "  #  size  verdict  corank  jet2  kernel_cubic  residual\n";
  for (size_t i = 0; i < hr.clusters.size(); ++i) {
    const auto& c = hr.clusters[i];
    os << std::setw(3) << (i + 1) << "  " << std::setw(4) << c.cluster_size << "  "
       << std::setw(7) << c.verdict << "  " << std::setw(6) << c.corank << "  " << std::setw(4)
       << c.jet2_rank << "  " << std::scientific << std::setprecision(2) << c.kernel_cubic
       << "      " << c.residual << std::defaultfloat << "\n";
  }
  if (complete && orbit_count > 0) {
    os << "orbits under t_i -> zeta13^i t_i: " << orbit_count << ", sizes [";
    for (size_t i = 0; i < orbit_sizes.size(); ++i) os << (i ? ", " : "") << orbit_sizes[i];
    os << "]\n";
  } else if (!hr.clusters.empty()) {
    os << "orbit decomposition incomplete: some images matched no cluster\n";
  }
  return emit(g, doc, os.str(), true);
}

// ----------------------------------------------------------------- disc

int cmd_disc_check(const Globals& g) {
  auto data = load(g);
  auto dr = oc::numsearch::discriminant_checks(data);
  bool ok = dr.slice_ok && dr.cusp_ok && dr.flagged_found;

  ordered_json slice = ordered_json::array();
  for (size_t i = 0; i < dr.slice_roots.size(); ++i)
    slice.push_back(
        ordered_json{{"root", cjson(dr.slice_roots[i])}, {"residual", dr.slice_residuals[i]}});
  ordered_json pairs = ordered_json::array();
  for (const auto& cp : dr.cusp_pairs)
    pairs.push_back(ordered_json{{"d1", cjson(cp.d1)},
                                 {"d2", cjson(cp.d2)},
                                 {"disc", cp.disc},
                                 {"pd1", cp.pd1},
                                 {"pd2", cp.pd2},
                                 {"flagged", cp.flagged}});
  ordered_json doc{{"slice", slice},
                   {"slice_ok", dr.slice_ok},
                   {"cusp_pairs", pairs},
                   {"cusp_ok", dr.cusp_ok},
                   {"flagged", ordered_json{{"found", dr.flagged_found},
                                            {"d1", cjson(dr.flagged_d1)},
                                            {"d2", cjson(dr.flagged_d2)}}},
                   {"verdict", ok ? "pass" : "fail"}};

  std::ostringstream os;
  os << std::scientific << std::setprecision(3);
  os << "degree-7 slice roots on the curve at d1 = 1 (scaled residuals):\n";
  for (size_t i = 0; i < dr.slice_roots.size(); ++i)
    os << "  " << cstr(dr.slice_roots[i]) << "   " << dr.slice_residuals[i] << "\n";
  os << "slice check (< 1e-8): " << (dr.slice_ok ? "ok" : "FAIL") << "\n";
  os << "octic root pairs on the curve with both partials vanishing (< 1e-6): "
     << dr.cusp_pairs.size() << "\n";
  for (const auto& cp : dr.cusp_pairs)
    os << "  d1 = " << cstr(cp.d1) << ", d2 = " << cstr(cp.d2) << "  disc " << cp.disc
       << "  partials " << cp.pd1 << ", " << cp.pd2 << (cp.flagged ? "   [flagged]" : "")
       << "\n";
  os << "cusp check: " << (dr.cusp_ok ? "ok" : "FAIL") << "\n";
  os << (ok ? "PASS" : "FAIL") << "\n";
  return emit(g, doc, os.str(), ok);
}

int cmd_disc_heatmap(const Globals& g, const oc::numsearch::HeatmapSpec& spec,
                     const std::string& out_path) {
  auto data = load(g);
  std::ofstream file;
  std::ostream& os = open_out(file, out_path);
  oc::numsearch::disc_heatmap_csv(data, spec, os);
  return 0;
}

// -------------------------------------------------------------- run-all

int cmd_run_all(const Globals& g, const std::string& profile, bool timings,
                const std::string& out_path, const std::string& echo) {
  oc::report::RunConfig rc;
  rc.profile = profile;
  rc.seed = g.seed;
  rc.nthreads = g.threads;
  rc.timings = timings;
  rc.data_dir = g.data_dir;
  rc.command = echo;
  auto outcome = oc::report::run_all(rc);
  std::ofstream file;
  std::ostream& os = open_out(file, out_path);
  os << outcome.doc.dump(2) << "\n";
  return outcome.ok ? 0 : 1;
}

// ----------------------------------------------------------------- data

int cmd_data_verify(const Globals& g) {
  try {
    load(g);
    std::cout << "all data files load and match their frozen fingerprints\n";
    return 0;
  } catch (const std::exception& ex) {
    std::cout << "FAIL: " << ex.what() << "\n";
    return 1;
  }
}

int cmd_data_fingerprint(const Globals& g) {
  auto rows =
      oc::compute_fingerprints(g.data_dir.empty() ? oc::default_data_dir() : g.data_dir);
  for (const auto& f : rows)
    std::cout << "    {\"" << f.file << "\", " << f.polys << ", " << f.terms << ", 0x"
              << std::hex << std::setw(16) << std::setfill('0') << f.hash << std::dec
              << std::setfill(' ') << "ull},\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"order-13 equivariant linear cuts of the octonionic projective plane: "
               "construction, symmetry certification, Hilbert data, and the singular hunt"};
  app.require_subcommand(1);
  // let the global flags (--seed, --threads, ...) appear after a subcommand
  // name as well; subcommands created below inherit this setting
  app.fallthrough(true);

  Globals g;
  app.add_option("--data", g.data_dir, "data directory (default: built-in or $OCTOCUT_DATA)");
  app.add_option("--threads", g.threads, "worker threads (0 = hardware default)");
  app.add_option("--seed", g.seed, "master seed for every randomized step");
  app.add_flag("--json", g.json, "emit machine-readable JSON instead of text");
  app.add_option("--tol", g.tol, "override the acceptance tolerance where applicable");

  // e6 verify
  auto* e6 = app.add_subcommand("e6", "ambient variety checks");
  auto* e6v = e6->add_subcommand("verify", "verify the cubic, weights, and chart");
  e6->require_subcommand(1);

  // cut build / verify-symmetries
  auto* cutc = app.add_subcommand("cut", "equivariant cut construction and symmetries");
  cutc->require_subcommand(1);
  auto* cb = cutc->add_subcommand("build", "build the 26 restricted quadrics");
  std::array<std::string, 6> dvals{"1", "1", "1", "1", "1", "1"};
  std::string field = "q";
  std::string out_path;
  cb->add_option("--d1", dvals[0], "parameter d1 (domain syntax)");
  cb->add_option("--d2", dvals[1], "parameter d2");
  cb->add_option("--d3", dvals[2], "parameter d3");
  cb->add_option("--d4", dvals[3], "parameter d4");
  cb->add_option("--d5", dvals[4], "parameter d5");
  cb->add_option("--d6", dvals[5], "parameter d6");
  cb->add_option("--field", field, "coefficient domain: q, qr2, c, fp:<prime>");
  cb->add_option("--out", out_path, "write to file instead of stdout");
  auto* cv = cutc->add_subcommand("verify-symmetries",
                                  "match the shipped forms and certify all symmetries");
  uint32_t vp = 10007;
  cv->add_option("--p", vp, "prime for the numeric spot checks");

  // hilbert
  auto* hb = app.add_subcommand("hilbert", "graded quotient dimensions over F_p");
  std::string hsystem = "cut";
  uint32_t hp = 10007;
  int hmax = 3;
  int64_t hd1 = 0, hd2 = 0;
  hb->add_option("--system", hsystem, "op2 or cut");
  hb->add_option("--p", hp, "prime");
  hb->add_option("--max-deg", hmax, "top degree");
  hb->add_option("--d1", hd1, "cut parameter d1 mod p (default: seeded)");
  hb->add_option("--d2", hd2, "cut parameter d2 mod p (default: seeded)");

  // inv hilbert
  auto* invc = app.add_subcommand("inv", "order-13-invariant graded data");
  invc->require_subcommand(1);
  auto* ih = invc->add_subcommand("hilbert", "invariant quotient dimensions over F_p");
  uint32_t ip = 10007;
  int imax = 3;
  ih->add_option("--p", ip, "prime");
  ih->add_option("--max-deg", imax, "top degree");

  // sing find
  auto* sf = app.add_subcommand("sing", "singular members");
  sf->require_subcommand(1);
  auto* sff = sf->add_subcommand("find", "multi-start bordered hunt for corank-3 points");
  std::string sd1, sd2;
  int starts = 2000;
  sff->add_option("--d1", sd1, "complex d1, e.g. \"1.9+2.2i\" (default: flagged cusp pair)");
  sff->add_option("--d2", sd2, "complex d2 (default: flagged cusp pair)");
  sff->add_option("--starts", starts, "number of random starts");

  // disc check / heatmap
  auto* dc = app.add_subcommand("disc", "discriminant locus");
  dc->require_subcommand(1);
  auto* dcc = dc->add_subcommand("check", "root and cusp verification");
  auto* dch = dc->add_subcommand("heatmap", "CSV samples of |Disc| over a d2 window");
  oc::numsearch::HeatmapSpec spec;
  std::string hm_out, hm_d1 = "1";
  dch->add_option("--re0", spec.re0, "window: min Re d2");
  dch->add_option("--re1", spec.re1, "window: max Re d2");
  dch->add_option("--im0", spec.im0, "window: min Im d2");
  dch->add_option("--im1", spec.im1, "window: max Im d2");
  dch->add_option("--grid", spec.grid, "samples per axis");
  dch->add_option("--d1", hm_d1, "complex d1 for the slice");
  dch->add_option("--out", hm_out, "CSV output file (default stdout)");

  // run-all
  auto* ra = app.add_subcommand("run-all", "the full verification suite as one JSON report");
  std::string profile = "quick";
  bool timings = false;
  std::string ra_out;
  ra->add_option("--profile", profile, "quick or full");
  ra->add_flag("--timings", timings, "include per-section wall times (non-deterministic)");
  ra->add_option("--out", ra_out, "write the JSON report to a file");

  // data
  auto* dt = app.add_subcommand("data", "shipped data file integrity");
  dt->require_subcommand(1);
  auto* dtv = dt->add_subcommand("verify", "load and fingerprint-check every file");
  auto* dtf = dt->add_subcommand("fingerprint", "print current fingerprints as table rows");

  CLI11_PARSE(app, argc, argv);

  try {
    if (e6v->parsed()) return cmd_e6_verify(g);
    if (cb->parsed()) return cmd_cut_build(g, dvals, field, out_path);
    if (cv->parsed()) return cmd_cut_verify(g, vp);
    if (hb->parsed()) return cmd_hilbert(g, hsystem, hp, hmax, hd1, hd2);
    if (ih->parsed()) return cmd_inv_hilbert(g, ip, imax);
    if (sff->parsed()) return cmd_sing_find(g, sd1, sd2, starts);
    if (dcc->parsed()) return cmd_disc_check(g);
    if (dch->parsed()) {
      spec.d1 = parse_or_throw<oc::Cplx>(hm_d1, {}, "--d1");
      return cmd_disc_heatmap(g, spec, hm_out);
    }
    if (ra->parsed()) {
      std::ostringstream echo;
      for (int i = 1; i < argc; ++i) echo << (i > 1 ? " " : "") << argv[i];
      return cmd_run_all(g, profile, timings, ra_out, echo.str());
    }
    if (dtv->parsed()) return cmd_data_verify(g);
    if (dtf->parsed()) return cmd_data_fingerprint(g);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  std::cerr << app.help();
  return 2;
}
