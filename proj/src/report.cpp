#include "octocut/report.hpp"

#include "octocut/cut.hpp"
#include "octocut/e6.hpp"
#include "octocut/invariants.hpp"
#include "octocut/numsearch.hpp"
#include "octocut/rng.hpp"

#include <chrono>
#include <iomanip>
#include <limits>
#include <sstream>

namespace octocut::report {

namespace {

using nlohmann::ordered_json;

const std::vector<uint32_t> kPrimes = {10007, 31013};
const std::vector<uint64_t> kOp2Oracle = {1, 27, 351, 3003, 19305};
const std::vector<uint64_t> kCutOracle = {1, 12, 52, 130, 247, 403};
const std::vector<uint64_t> kInvOracle = {1, 0, 4, 10, 19, 31, 46};

ordered_json cjson(Cplx z) { return ordered_json::array({z.real(), z.imag()}); }

std::string hex64(uint64_t h) {
  std::ostringstream os;
  os << "0x" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

struct SectionTimer {
  bool enabled;
  std::chrono::steady_clock::time_point t0;
  explicit SectionTimer(bool e) : enabled(e), t0(std::chrono::steady_clock::now()) {}
  void stamp(ordered_json& j) const {
    if (!enabled) return;
    j["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
};

void set_verdict(ordered_json& sec, bool pass, bool& all_pass) {
  sec["verdict"] = pass ? "pass" : "fail";
  if (!pass) all_pass = false;
}

Cplx random_param(Rng& r) {
  for (;;) {
    Cplx z(r.uniform01() * 2 - 1, r.uniform01() * 2 - 1);
    if (std::abs(z) > 0.05) return z;
  }
}

Fp fp_nonzero(Rng& r, uint32_t p, DomCtx ctx) {
  return Dom<Fp>::from_int(1 + (int64_t)(r.next_u64() % (p - 1)), ctx);
}

std::vector<Poly<Fp>> cut_gens_fp(const ArtifactData& data, uint32_t p, uint64_t seed,
                                  uint64_t stream, ordered_json* echo) {
  DomCtx ctx{p};
  Rng r = Rng(seed).fork(stream);
  Fp d1 = fp_nonzero(r, p, ctx);
  Fp d2 = fp_nonzero(r, p, ctx);
  if (echo) (*echo)[std::to_string(p)] = {{"d1", Dom<Fp>::str(d1)}, {"d2", Dom<Fp>::str(d2)}};
  auto sys = cut::specialize_system<Fp>(data.plain_quadrics, d1, d2, ctx);
  return std::vector<Poly<Fp>>(sys.begin(), sys.end());
}

}  // namespace

RunOutcome run_all(const RunConfig& cfg) {
  RunOutcome out;
  ordered_json& doc = out.doc;
  const bool full = cfg.profile == "full";

  doc["command"] = cfg.command.empty() ? ("run-all --profile " + cfg.profile) : cfg.command;
  doc["version"] = OCTOCUT_VERSION;
  doc["profile"] = cfg.profile;
  doc["seed"] = cfg.seed;
  // the thread count is deliberately not echoed: results are independent of it
  // (that independence is itself a verified claim), so reports stay
  // byte-identical across thread counts
  doc["config"] = ordered_json{{"primes", kPrimes},
                               {"tolerances",
                                ordered_json{{"sample_residual", 1e-10},
                                             {"transport_residual", 1e-8},
                                             {"slice_vanishing", 1e-8},
                                             {"cusp_vanishing", 1e-6},
                                             {"sv_gap", 1e6},
                                             {"cluster", 1e-6},
                                             {"kernel_cubic", 1e-6}}}};

  bool all_pass = true;
  ordered_json checks = ordered_json::object();
  const std::string dir = cfg.data_dir.empty() ? default_data_dir() : cfg.data_dir;

  // ---------------------------------------------------------------- data
  ArtifactData data;
  bool loaded = false;
  {
    SectionTimer t(cfg.timings);
    ordered_json sec;
    try {
      data = load_data(dir);
      loaded = true;
    } catch (const std::exception& ex) {
      sec["error"] = ex.what();
    }
    try {
      ordered_json files = ordered_json::array();
      for (const auto& f : compute_fingerprints(dir))
        files.push_back(ordered_json{{"file", f.file},
                                     {"polys", f.polys},
                                     {"terms", f.terms},
                                     {"hash", hex64(f.hash)}});
      sec["files"] = files;
    } catch (const std::exception&) {
    }
    set_verdict(sec, loaded, all_pass);
    t.stamp(sec);
    checks["data"] = sec;
  }

  auto skipped = [] {
    ordered_json s;
    s["verdict"] = "skipped";
    return s;
  };

  if (!loaded) {
    for (const char* name : {"e6", "cut_constraint", "cut_match", "c3", "rescaling", "galois",
                             "hilbert_op2", "hilbert_cut", "invariants"})
      checks[name] = skipped();
    if (full)
      for (const char* name : {"discriminant", "sampling", "transport", "hunt"})
        checks[name] = skipped();
    doc["checks"] = checks;
    doc["ok"] = false;
    out.ok = false;
    return out;
  }

  // ------------------------------------------------------------------ e6
  {
    SectionTimer t(cfg.timings);
    ordered_json sec;
    auto rep = e6::verify_all(data);
    sec["cubic_terms"] = rep.cubic_terms;
    sec["invariance"] = rep.invariance_ok;
    sec["eigenweights"] = rep.eigenweights_ok;
    sec["chart"] = rep.chart_ok;
    if (!rep.chart_ok) sec["failing_quadric"] = rep.failing_quadric;
    set_verdict(sec,
                rep.cubic_terms == 45 && rep.invariance_ok && rep.eigenweights_ok && rep.chart_ok,
                all_pass);
    t.stamp(sec);
    checks["e6"] = sec;
  }

  // ------------------------------------------------------- cut_constraint
  {
    SectionTimer t(cfg.timings);
    ordered_json sec;
    const Cplx one(1, 0);
    const std::array<Cplx, 6> free_d{Cplx(1.25, 0.5), Cplx(0.75, -0.25), one, one, one, one};
    bool valid_accepts = false, invalid_rejects = false;
    try {
      auto params = cut::CutParams<Cplx>::from_free(free_d);
      cut::build_cut<Cplx>(data, params);
      valid_accepts = true;
    } catch (const std::exception&) {
    }
    try {
      auto params = cut::CutParams<Cplx>::from_free(free_d);
      params.d[6] *= Cplx(1.1, 0);  // break d7 * d6 = -1
      cut::build_cut<Cplx>(data, params);
    } catch (const cut::CutConstraintError&) {
      invalid_rejects = true;
    } catch (const std::exception&) {
    }
    sec["valid_accepts"] = valid_accepts;
    sec["invalid_rejects"] = invalid_rejects;
    set_verdict(sec, valid_accepts && invalid_rejects, all_pass);
    t.stamp(sec);
    checks["cut_constraint"] = sec;
  }

  // ------------------------------------------------------------ cut_match
  {
    SectionTimer t(cfg.timings);
    ordered_json sec;
    auto m = cut::match_paper_quadrics(data);
    auto mf = cut::match_paper_quadrics_fp(data, kPrimes[0], cfg.seed);
    sec["perfect_matching"] = m.ok;
    sec["all_scalars_one"] = m.all_scalars_one;
    sec["note"] = m.note;
    sec["fp_ok"] = mf.ok;
    set_verdict(sec, m.ok && m.all_scalars_one && mf.ok, all_pass);
    t.stamp(sec);
    checks["cut_match"] = sec;
  }

  // -------------------------------------------------------------------- c3
  {
    SectionTimer t(cfg.timings);
    ordered_json sec;
    auto sym = cut::verify_c3_symmetry(data.sym_quadrics);
    auto plain = cut::verify_c3_symmetry(data.plain_quadrics);
    sec["symmetric_form_holds"] = sym.holds;
    sec["first_form_holds"] = plain.holds;  // expected false: only the second form is symmetric
    set_verdict(sec, sym.holds && !plain.holds, all_pass);
    t.stamp(sec);
    checks["c3"] = sec;
  }

  // ----------------------------------------------------------- rescaling
  cut::RescalingResult rescaling;
  {
    SectionTimer t(cfg.timings);
    ordered_json sec;
    rescaling = cut::find_rescaling(data.plain_quadrics, data.sym_quadrics);
    sec["found"] = rescaling.found;
    if (!rescaling.found) sec["reason"] = rescaling.reason;
    ordered_json fac = ordered_json::array();
    if (rescaling.found)
      for (const auto& s : rescaling.s) fac.push_back(s.str());
    sec["factors"] = fac;
    set_verdict(sec, rescaling.found, all_pass);
    t.stamp(sec);
    checks["rescaling"] = sec;
  }

  // -------------------------------------------------------------- galois
  {
    SectionTimer t(cfg.timings);
    ordered_json sec;
    auto g1 = cut::verify_galois_symbolic(data);
    auto g2 = cut::verify_galois_fp(data, kPrimes[0], cfg.seed);
    sec["symbolic"] = g1.holds;
    sec["fp"] = g2.holds;
    set_verdict(sec, g1.holds && g2.holds, all_pass);
    t.stamp(sec);
    checks["galois"] = sec;
  }

  // --------------------------------------------------------- hilbert_op2
  {
    SectionTimer t(cfg.timings);
    ordered_json sec;
    const int maxd = full ? 4 : 3;
    auto partials = e6::op2_ideal(data.cubic);
    ordered_json dims = ordered_json::object();
    bool pass = true;
    for (uint32_t p : kPrimes) {
      std::vector<Poly<Fp>> gens;
      gens.reserve(27);
      for (const auto& q : partials) gens.push_back(poly_to_fp(q, p));
      auto rec = gradedla::hilbert_function(gens, 27, maxd, p, data.weights, cfg.nthreads);
      dims[std::to_string(p)] = rec.dims;
      for (int d = 0; d <= maxd; ++d) pass = pass && rec.dims[(size_t)d] == kOp2Oracle[(size_t)d];
    }
    sec["dims"] = dims;
    sec["oracle"] =
        std::vector<uint64_t>(kOp2Oracle.begin(), kOp2Oracle.begin() + maxd + 1);
    set_verdict(sec, pass, all_pass);
    t.stamp(sec);
    checks["hilbert_op2"] = sec;
  }

  // --------------------------------------------------------- hilbert_cut
  {
    SectionTimer t(cfg.timings);
    ordered_json sec;
    const int maxd = full ? 5 : 3;
    ordered_json dims = ordered_json::object();
    ordered_json params = ordered_json::object();
    bool pass = true;
    bool difference_done = false;
    for (size_t pi = 0; pi < kPrimes.size(); ++pi) {
      const uint32_t p = kPrimes[pi];
      auto gens = cut_gens_fp(data, p, cfg.seed, 100 + pi, &params);
      auto rec = gradedla::hilbert_function(gens, 12, maxd, p, invariants::t_weights(),
                                            cfg.nthreads);
      dims[std::to_string(p)] = rec.dims;
      for (int d = 0; d <= maxd; ++d) pass = pass && rec.dims[(size_t)d] == kCutOracle[(size_t)d];
      if (full && !difference_done) {
        difference_done = true;
        ordered_json diff;
        diff["diff1"] = rec.diff1;
        diff["diff2"] = rec.diff2;
        diff["stabilized"] = rec.verdict.stabilized;
        diff["dimension"] = rec.verdict.dimension;
        diff["degree"] = rec.verdict.degree;
        sec["difference"] = diff;
        pass = pass && rec.verdict.stabilized && rec.verdict.dimension == 2 &&
               rec.verdict.degree == 39;
      }
    }
    sec["params"] = params;
    sec["dims"] = dims;
    sec["oracle"] =
        std::vector<uint64_t>(kCutOracle.begin(), kCutOracle.begin() + maxd + 1);
    set_verdict(sec, pass, all_pass);
    t.stamp(sec);
    checks["hilbert_cut"] = sec;
  }

  // ---------------------------------------------------------- invariants
  {
    SectionTimer t(cfg.timings);
    ordered_json sec;
    const int maxd = full ? 6 : 3;
    std::vector<size_t> ambient;
    for (int d = 0; d <= maxd; ++d) ambient.push_back(invariants::invariant_monomials(d).size());
    sec["ambient_invariant_monomials"] = ambient;
    ordered_json dims = ordered_json::object();
    bool pass = true;
    for (size_t pi = 0; pi < kPrimes.size(); ++pi) {
      const uint32_t p = kPrimes[pi];
      auto gens = cut_gens_fp(data, p, cfg.seed, 200 + pi, nullptr);
      auto inv = invariants::invariant_hilbert(gens, maxd, p, cfg.nthreads);
      dims[std::to_string(p)] = inv;
      for (int d = 0; d <= maxd; ++d) pass = pass && inv[(size_t)d] == kInvOracle[(size_t)d];
    }
    sec["dims"] = dims;
    sec["oracle"] =
        std::vector<uint64_t>(kInvOracle.begin(), kInvOracle.begin() + maxd + 1);
    set_verdict(sec, pass, all_pass);
    t.stamp(sec);
    checks["invariants"] = sec;
  }

  // ---------------------------------------------------------------- full
  if (full) {
    numsearch::DiscReport disc;

    {
      SectionTimer t(cfg.timings);
      ordered_json sec;
      disc = numsearch::discriminant_checks(data);
      ordered_json roots = ordered_json::array();
      for (const Cplx& r : disc.slice_roots) roots.push_back(cjson(r));
      sec["slice_roots"] = roots;
      sec["slice_residuals"] = disc.slice_residuals;
      sec["slice_ok"] = disc.slice_ok;
      ordered_json oct = ordered_json::array();
      for (const Cplx& r : disc.octic_roots) oct.push_back(cjson(r));
      sec["octic_roots"] = oct;
      ordered_json pairs = ordered_json::array();
      for (const auto& cp : disc.cusp_pairs)
        pairs.push_back(ordered_json{{"d1", cjson(cp.d1)},
                                     {"d2", cjson(cp.d2)},
                                     {"disc", cp.disc},
                                     {"pd1", cp.pd1},
                                     {"pd2", cp.pd2},
                                     {"flagged", cp.flagged}});
      sec["cusp_pairs"] = pairs;
      sec["cusp_ok"] = disc.cusp_ok;
      sec["flagged"] = ordered_json{{"found", disc.flagged_found},
                                    {"d1", cjson(disc.flagged_d1)},
                                    {"d2", cjson(disc.flagged_d2)}};
      set_verdict(sec,
                  disc.slice_ok && disc.cusp_ok && disc.flagged_found &&
                      disc.cusp_pairs.size() == 8,
                  all_pass);
      t.stamp(sec);
      checks["discriminant"] = sec;
    }

    // ------------------------------------------------------------ sampling
    {
      SectionTimer t(cfg.timings);
      ordered_json sec;
      ordered_json entries = ordered_json::array();
      bool pass = true;
      Rng master(cfg.seed);
      for (int k = 0; k < 3; ++k) {
        Rng pr = master.fork(40 + (uint64_t)k);
        Cplx d1 = random_param(pr), d2 = random_param(pr);
        auto spec = cut::specialize_system<Cplx>(data.plain_quadrics, d1, d2);
        std::vector<Poly<Cplx>> sysv(spec.begin(), spec.end());
        int successes = 0, rank9 = 0;
        double min_gap = std::numeric_limits<double>::infinity();
        for (int j = 0; j < 100; ++j) {
          auto sp = numsearch::sample_surface_point(data, d1, d2,
                                                    (uint64_t)(k * 1000 + j + 1));
          if (!sp.ok) continue;
          ++successes;
          auto rr = gradedla::jacobian_rank_cplx(sysv, sp.t);
          if (rr.rank == 9 && rr.gap >= 1e6) ++rank9;
          min_gap = std::min(min_gap, rr.gap);
        }
        pass = pass && successes == 100 && rank9 == 100;
        entries.push_back(ordered_json{{"d1", cjson(d1)},
                                       {"d2", cjson(d2)},
                                       {"points", 100},
                                       {"successes", successes},
                                       {"rank9", rank9},
                                       {"min_gap", min_gap}});
      }
      sec["params"] = entries;
      set_verdict(sec, pass, all_pass);
      t.stamp(sec);
      checks["sampling"] = sec;
    }

    // ----------------------------------------------------------- transport
    {
      SectionTimer t(cfg.timings);
      ordered_json sec;
      Rng tr = Rng(cfg.seed).fork(50);
      Cplx d1 = random_param(tr), d2 = random_param(tr);
      sec["d1"] = cjson(d1);
      sec["d2"] = cjson(d2);
      bool pass = false;
      auto sp = numsearch::sample_surface_point(data, d1, d2, cfg.seed + 777, 10);
      sec["sample_ok"] = sp.ok;
      if (sp.ok && rescaling.found) {
        sec["first_form_residual"] = sp.residual;
        auto z = numsearch::rescale_point(rescaling, sp.t, d1, d2);
        auto sym_here = cut::specialize_system<Cplx>(data.sym_quadrics, d1, d2);
        double r1 = numsearch::scaled_residual(sym_here, z);
        sec["second_form_residual"] = r1;
        auto y = numsearch::galois_transport_point(data, z, d1, d2);
        auto sym_there =
            cut::specialize_system<Cplx>(data.sym_quadrics, Cplx(-1, 0) / d2, d1);
        double r2 = numsearch::scaled_residual(sym_there, y);
        sec["transported_residual"] = r2;
        pass = r1 < 1e-8 && r2 < 1e-8;
      }
      set_verdict(sec, pass, all_pass);
      t.stamp(sec);
      checks["transport"] = sec;
    }

    // ---------------------------------------------------------------- hunt
    {
      SectionTimer t(cfg.timings);
      ordered_json sec;
      bool pass = false;
      if (disc.flagged_found) {
        numsearch::HuntConfig hc;
        hc.starts = 2600;
        hc.seed = cfg.seed;
        hc.nthreads = cfg.nthreads;
        auto hr = numsearch::find_singular_points(data, disc.flagged_d1, disc.flagged_d2, hc);
        sec["starts"] = hr.starts;
        sec["converged_starts"] = hr.converged_starts;
        sec["clusters"] = hr.clusters.size();

        bool all_a2 = !hr.clusters.empty();
        ordered_json pts = ordered_json::array();
        std::vector<std::array<Cplx, 12>> reps;
        for (const auto& c : hr.clusters) {
          all_a2 = all_a2 && c.verdict == "A2" && c.jac_rank == 8 && c.jet2_rank == 2 &&
                   c.kernel_cubic > 1e-6;
          reps.push_back(c.t);
          ordered_json coords = ordered_json::array();
          for (const Cplx& z : c.t) coords.push_back(cjson(z));
          pts.push_back(ordered_json{{"t", coords},
                                     {"residual", c.residual},
                                     {"cluster_size", c.cluster_size},
                                     {"jac_rank", c.jac_rank},
                                     {"sv_gap", c.sv_gap},
                                     {"jet2_rank", c.jet2_rank},
                                     {"kernel_cubic", c.kernel_cubic},
                                     {"verdict", c.verdict}});
        }
        sec["points"] = pts;
        sec["all_a2"] = all_a2;

        double min_sep = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < reps.size(); ++i)
          for (size_t j = i + 1; j < reps.size(); ++j)
            min_sep = std::min(min_sep, numsearch::chordal_distance(reps[i], reps[j]));
        sec["min_separation"] = min_sep;

        auto perm = numsearch::g_action_permutation(reps);
        bool perm_complete = true;
        for (int v : perm) perm_complete = perm_complete && v >= 0;
        int orbit_count = 0;
        std::vector<int> orbit_sizes;
        if (perm_complete) {
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
        sec["orbit_count"] = orbit_count;
        sec["orbit_sizes"] = orbit_sizes;
        bool orbits_ok = perm_complete && orbit_count == 3;
        for (int s : orbit_sizes) orbits_ok = orbits_ok && s == 13;

        double max_move = 0;
        bool repolish_ok = !hr.clusters.empty();
        for (const auto& c : hr.clusters) {
          double mv = numsearch::repolish_distance(data, disc.flagged_d1, disc.flagged_d2, c.t,
                                                   hc, 1e-14);
          if (!std::isfinite(mv)) {
            repolish_ok = false;
            continue;
          }
          max_move = std::max(max_move, mv);
        }
        repolish_ok = repolish_ok && max_move < 1e-6;
        sec["repolish_max_move"] = max_move;
        sec["repolish_ok"] = repolish_ok;

        pass = hr.clusters.size() == 39 && all_a2 && orbits_ok && repolish_ok;
      } else {
        sec["error"] = "no flagged cusp pair available";
      }
      set_verdict(sec, pass, all_pass);
      t.stamp(sec);
      checks["hunt"] = sec;
    }
  }

  doc["checks"] = checks;
  doc["ok"] = all_pass;
  out.ok = all_pass;
  return out;
}

}  // namespace octocut::report
