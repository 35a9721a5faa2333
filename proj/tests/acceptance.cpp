// One PASS/FAIL line per acceptance criterion. Exit status is the number
// of failing criteria. argv[1], when given, is the command-line binary
// whose selftest is part of the wire criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "testkit.hpp"
#include "tropmarg/golden.hpp"

namespace {

struct Criterion {
  bool passed = true;
  std::vector<std::string> notes;

  void add(bool ok, const std::string& note) {
    passed = passed && ok;
    if (!ok || !note.empty()) notes.push_back((ok ? "" : "FAILED ") + note);
  }
  void add(const testkit::SuiteResult& r) { add(r.ok(), r.summary()); }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::string> titles = {
      {1, "golden residuation"},
      {2, "golden marginality"},
      {3, "bilinear worked example"},
      {4, "five-factor worked example"},
      {5, "protocol golden runs"},
      {6, "one-sided example with recomputed keys"},
      {7, "property suites"},
      {8, "oracle equivalence on 2x2 matrices"},
      {9, "attack demonstration"},
      {10, "wire round-trips and selftest"},
  };
  std::map<int, Criterion> results;

  for (const auto& check : tropmarg::run_golden_checks()) {
    results[check.group].add(check.passed, check.name + (check.detail.empty() ? "" : ": " + check.detail));
  }

  {
    Criterion& c = results[7];
    const auto start = std::chrono::steady_clock::now();
    for (const auto& r : testkit::sampler_suites(500)) c.add(r.ok() && r.cases >= 500, r.summary());
    for (const auto& r : testkit::key_agreement_suites(84)) c.add(r.ok() && r.cases >= 500, r.summary());
    for (const auto& r : testkit::commutation_suites(500)) c.add(r.ok() && r.cases >= 500, r.summary());
    const double elapsed = seconds_since(start);
    c.add(elapsed < 60.0, "suites took " + std::to_string(elapsed) + " s");
  }
  {
    Criterion& c = results[8];
    c.add(testkit::residuation_oracle(200));
    c.add(testkit::solver_oracle(400));
    const auto sandwich = testkit::sandwich_solver_oracle(200);
    c.add(sandwich);
    c.add(sandwich.tally.count("feasible") && sandwich.tally.count("infeasible"), "both verdicts exercised");
    c.add(testkit::cover_check_oracle(100));
  }
  {
    Criterion& c = results[9];
    const auto r = testkit::sidelnikov_attack(50);
    c.add(r.ok() && r.cases == 50 && r.tally.count("recovered") && r.tally.at("recovered") == 50, r.summary());
    for (const auto& rate : testkit::marginal_attack_rates(50)) c.add(rate.failures == 0, "reported: " + rate.summary());
  }
  if (argc > 1) {
    const std::string cmd = std::string("\"") + argv[1] + "\" selftest > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    results[10].add(status == 0, "selftest exit status " + std::to_string(status));
  } else {
    results[10].add(false, "no command-line binary given for selftest");
  }

  int failed = 0;
  for (const auto& [n, title] : titles) {
    auto it = results.find(n);
    const bool passed = it != results.end() && it->second.passed;
    if (!passed) ++failed;
    std::cout << "criterion " << n << ": " << (passed ? "PASS" : "FAIL") << "  " << title << "\n";
    if (it == results.end()) {
      std::cout << "    no checks ran\n";
      continue;
    }
    for (const auto& note : it->second.notes) std::cout << "    " << note << "\n";
  }
  return failed;
}
