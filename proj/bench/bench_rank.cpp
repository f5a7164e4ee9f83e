// Benchmark: OpenMP sparse Macaulay rank vs the serial dense reference on the
// specialized cut system.  Ranks must agree; timings are informational.
#include <octocut/cut.hpp>
#include <octocut/data.hpp>
#include <octocut/gradedla.hpp>
#include <octocut/invariants.hpp>
#include <octocut/rng.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <vector>

using namespace octocut;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Macaulay rank benchmark: parallel sparse vs serial dense"};
  uint32_t p = 10007;
  int min_deg = 3, max_deg = 5, threads = 0;
  uint64_t seed = 1;
  app.add_option("--p", p, "prime modulus");
  app.add_option("--min-deg", min_deg, "first Macaulay degree");
  app.add_option("--max-deg", max_deg, "last Macaulay degree");
  app.add_option("--threads", threads, "sparse elimination threads (0 = all)");
  app.add_option("--seed", seed, "parameter seed");
  CLI11_PARSE(app, argc, argv);

  ArtifactData data;
  try {
    data = load_data();
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "failed to load data: %s\n", ex.what());
    return 2;
  }

  DomCtx ctx{p};
  Rng rng(seed);
  Fp d1((uint32_t)(rng.next_u64() % (p - 1)) + 1, p);
  Fp d2((uint32_t)(rng.next_u64() % (p - 1)) + 1, p);
  auto sys = cut::specialize_system<Fp>(cut::build_cut_symbolic(data), d1, d2, ctx);
  std::vector<Poly<Fp>> gens(sys.begin(), sys.end());

  std::printf("cut system at random parameters over F_%u, weight-split matrices\n", p);
  std::printf("%-6s %-8s %-10s %-10s %-8s %12s %12s %12s %9s\n", "deg", "classes", "rows",
              "cols", "rank", "dense[ms]", "sparse1[ms]", "sparseN[ms]", "speedup");

  bool all_match = true;
  for (int deg = min_deg; deg <= max_deg; ++deg) {
    auto split = gradedla::macaulay_matrix(gens, 12, deg, p, invariants::t_weights(), threads);
    uint64_t rows = 0, cols = 0;
    for (const auto& cls : split.classes) {
      rows += cls.rows.size();
      cols += cls.ncols;
    }

    auto t0 = Clock::now();
    uint64_t dense_rank = 0;
    for (const auto& cls : split.classes) dense_rank += gradedla::dense_rank_reference(cls, p);
    double t_dense = ms_since(t0);

    t0 = Clock::now();
    uint64_t sparse1 = 0;
    for (const auto& cls : split.classes) sparse1 += gradedla::sparse_rank(cls, p, 1);
    double t_sparse1 = ms_since(t0);

    t0 = Clock::now();
    uint64_t sparseN = 0;
    for (const auto& cls : split.classes) sparseN += gradedla::sparse_rank(cls, p, threads);
    double t_sparseN = ms_since(t0);

    bool match = dense_rank == sparse1 && sparse1 == sparseN;
    all_match = all_match && match;
    std::printf("%-6d %-8zu %-10llu %-10llu %-8llu %12.1f %12.1f %12.1f %8.2fx%s\n", deg,
                split.classes.size(), (unsigned long long)rows, (unsigned long long)cols,
                (unsigned long long)sparseN, t_dense, t_sparse1, t_sparseN,
                t_sparse1 / std::max(t_sparseN, 1e-9), match ? "" : "  RANK MISMATCH");
  }

  if (!all_match) {
    std::fprintf(stderr, "rank disagreement between implementations\n");
    return 1;
  }
  return 0;
}
