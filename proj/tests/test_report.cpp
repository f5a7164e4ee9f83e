// The aggregated JSON report: quick profile passes end to end on pristine
// data, timings stay opt-in, and a corrupted data directory fails fast with
// downstream checks marked skipped.
#include <doctest.h>

#include <octocut/report.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

using namespace octocut;
using octocut::report::RunConfig;

TEST_CASE("quick profile on pristine data passes every section") {
  RunConfig cfg;
  cfg.profile = "quick";
  cfg.seed = 7;
  auto out = report::run_all(cfg);
  CHECK(out.ok);

  const auto& doc = out.doc;
  for (const char* key : {"command", "version", "profile", "seed", "config", "checks", "ok"})
    CHECK(doc.contains(key));
  CHECK(doc["profile"] == "quick");
  CHECK(doc["seed"] == 7);
  CHECK(doc["ok"] == true);

  const std::vector<std::string> sections{"data",      "e6",          "cut_constraint",
                                          "cut_match", "c3",          "rescaling",
                                          "galois",    "hilbert_op2", "hilbert_cut",
                                          "invariants"};
  const auto& checks = doc["checks"];
  for (const auto& s : sections) {
    REQUIRE(checks.contains(s));
    CHECK(checks[s]["verdict"] == "pass");
    CHECK(!checks[s].contains("elapsed_ms"));  // timings are opt-in
  }
  // full-only sections stay out of the quick profile
  for (const char* s : {"discriminant", "sampling", "transport", "hunt"})
    CHECK(!checks.contains(s));
}

TEST_CASE("corrupted data: load fails, downstream sections are skipped") {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "octocut_report_corrupt";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  for (const auto& entry : fs::directory_iterator(default_data_dir()))
    fs::copy_file(entry.path(), tmp / entry.path().filename());
  {
    std::ofstream out(tmp / "cartan_cubic.txt", std::ios::trunc);  // empty file
  }

  RunConfig cfg;
  cfg.profile = "quick";
  cfg.data_dir = tmp.string();
  cfg.timings = true;
  auto out = report::run_all(cfg);
  CHECK(!out.ok);
  const auto& checks = out.doc["checks"];
  CHECK(checks["data"]["verdict"] == "fail");
  CHECK(checks["data"].contains("error"));
  CHECK(checks["data"].contains("elapsed_ms"));  // timings were requested
  for (const char* s : {"e6", "cut_match", "hilbert_cut", "invariants"})
    CHECK(checks[s]["verdict"] == "skipped");
  CHECK(out.doc["ok"] == false);
  fs::remove_all(tmp);
}
