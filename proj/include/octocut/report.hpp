#pragma once
// End-to-end verification runs assembled into stable machine-readable JSON.
// The quick profile covers the exact and symbolic checks plus low-degree
// Hilbert data; the full profile adds the higher-degree Hilbert data, the
// discriminant suite, smoothness sampling, point transport, and the
// singular-point hunt.

#include "octocut/data.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>

namespace octocut::report {

struct RunConfig {
  std::string profile = "quick";  // "quick" | "full"
  uint64_t seed = 1;
  int nthreads = 0;               // 0 = library default
  bool timings = false;           // timings vary run to run, so they are opt-in
  std::string data_dir;           // empty = default resolution
  std::string command;            // echoed verbatim into the report
};

struct RunOutcome {
  nlohmann::ordered_json doc;
  bool ok = false;  // true iff every executed check passed
};

RunOutcome run_all(const RunConfig& cfg);

}  // namespace octocut::report
