// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "prohecke/suites.hpp"

using namespace prohecke;

namespace {

struct Run {
  std::string preset;
  int p;
};

struct Outcome {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

SuiteConfig config(const Run& r, const std::string& suite) {
  SuiteConfig c;
  c.preset = r.preset;
  c.p = r.p;
  c.suites = {suite};
  c.seed = 20261016;
  return normalize(c);
}

// Every check of `suite` on every preset passes; flagged counts as unverified.
// `extra` inspects the results of one preset.
Outcome all_pass(const std::string& suite, const std::vector<Run>& runs, double budget_s = 0,
                 const std::function<void(const Run&, const std::vector<CheckResult>&, Outcome&)>& extra = {}) {
  Outcome o;
  int checks = 0;
  for (auto& r : runs) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> rs;
    try {
      rs = run_suites(config(r, suite));
    } catch (const std::exception& e) {
      o.fail(r.preset + " p=" + std::to_string(r.p) + ": " + e.what());
      continue;
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && s > budget_s) o.fail(r.preset + " took " + std::to_string(s) + " s");
    if (rs.empty()) o.fail(r.preset + ": no checks ran");
    for (auto& c : rs)
      if (c.status != "pass") o.fail(r.preset + " p=" + std::to_string(r.p) + " " + c.status + ": " + c.instance);
    if (extra) extra(r, rs, o);
    checks += static_cast<int>(rs.size());
  }
  if (o.ok) o.note = std::to_string(checks) + " checks";
  return o;
}

void require_instances(const std::vector<CheckResult>& rs, const std::string& prefix, size_t n, Outcome& o) {
  size_t k = 0;
  for (auto& c : rs) k += c.instance.rfind(prefix, 0) == 0;
  if (k < n) o.fail("expected " + std::to_string(n) + " instances of '" + prefix + "', got " + std::to_string(k));
}

}  // namespace

int main() {
  const std::vector<Run> three = {{"SL2", 3}, {"PGL2", 3}, {"SL3", 2}};
  const std::vector<Run> sl3 = {{"SL3", 2}, {"SL3", 3}};
  const std::vector<Run> small = {{"SL2", 3}, {"SL3", 2}};

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"algebra relations", [&] { return all_pass("algebra-relations", three, 60.0); }},
      {"basis triangularity and product formula", [&] { return all_pass("bases", three); }},
      {"involutions", [&] { return all_pass("involutions", three); }},
      {"induction dimensions and A-module formulas", [&] { return all_pass("induction", sl3); }},
      {"Moebius function", [&] {
         return all_pass("moebius", sl3, 0, [](const Run&, const std::vector<CheckResult>& rs, Outcome& o) {
           require_instances(rs, "deodhar vs inversion", 4, o);
           require_instances(rs, "mu^Q(w, w_G w_Q)", 4, o);
         });
       }},
      {"exactness for the trivial character of H_B", [&] {
         return all_pass("exactness", sl3, 0, [](const Run&, const std::vector<CheckResult>& rs, Outcome& o) {
           require_instances(rs, "P(sigma)=G for triv_B", 1, o);
           require_instances(rs, "exact at I_Q triv_B", 4, o);
           require_instances(rs, "exact at I'_Q triv_B", 4, o);
           require_instances(rs, "kernel by T* coordinates triv_B", 4, o);
         });
       }},
      {"twist theorems", [&] { return all_pass("twist-theorems", small); }},
      {"duality theorems", [&] { return all_pass("duality-theorems", small); }},
      {"filtration of I'_P", [&] { return all_pass("filtration", {{"SL2", 3}, {"SL3", 2}, {"SL3", 3}}); }},
      {"byte-identical reports", [&] {
         Outcome o;
         SuiteConfig c;
         c.preset = "SL3";
         c.p = 2;
         c.seed = 7;
         c = normalize(c);
         const std::string a = to_jsonl(run_suites(c), false), b = to_jsonl(run_suites(c), false);
         if (a.empty()) o.fail("empty report");
         if (a != b) o.fail("reports differ");
         if (o.ok) o.note = std::to_string(a.size()) + " bytes";
         return o;
       }},
  };

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o = criteria[i].second();
    failed += !o.ok;
    std::printf("criterion %zu: %s  %s (%s)\n", i + 1, o.ok ? "PASS" : "FAIL", criteria[i].first.c_str(), o.note.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
