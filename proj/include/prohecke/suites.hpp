#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "prohecke/constructions.hpp"

namespace prohecke {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Caps {
  int length = 5;  // ℓ bound for exhaustive basis and involution checks
  int orbit = 4;   // ℓ(O) bound for z_O checks and supersingularity
  int dim = 64;    // modules above this dimension are reported as flagged, not scanned
};

struct SuiteConfig {
  std::string preset = "SL2";
  int p = 3;
  int f = 1;
  std::vector<std::string> suites;  // empty or {"all"} means every suite
  uint64_t seed = 0;
  Caps caps;
  std::string output;    // empty: standard output
  bool timings = false;  // wall-clock ms in reports; off keeps reports byte-identical
};

struct CheckResult {
  std::string suite, instance;
  std::string status;   // pass | fail | flagged
  std::string witness;  // failing relation or element; empty on pass
  std::string detail;   // dimensions, ranks, intertwiner-space dimensions
  double ms = 0;
};

const std::vector<std::string>& suite_ids();
// Expands "all", rejects unknown ids, presets, primes and caps. Throws ConfigError.
SuiteConfig normalize(const SuiteConfig& cfg);
// Runs the named suites concurrently; results sorted by (suite, instance).
std::vector<CheckResult> run_suites(const SuiteConfig& cfg);
bool any_failure(const std::vector<CheckResult>& rs);
// One JSON object per line: {schema, suite, instance, status, witness?, detail?, ms}
std::string to_jsonl(const std::vector<CheckResult>& rs, bool timings);

}  // namespace prohecke
