#pragma once

// Seeded property suites behind `sstqp verify-paper`.

#include <cstdint>
#include <string>
#include <vector>

namespace sstqp {

struct SuiteCheck {
  std::string name;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  std::vector<std::string> failures;  // first few only

  void record(bool ok, const std::string& detail);
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;
  double seconds = 0.0;

  bool ok() const;
  std::string summary() const;
};

SuiteReport verify_rlt(std::uint64_t seed = 1, int instances = 100);
SuiteReport verify_shor(std::uint64_t seed = 2, int psd_instances = 50, int non_psd = 20);
SuiteReport verify_sdprlt(std::uint64_t seed = 3, int instances = 50, int rho1_instances = 30);
SuiteReport verify_rankone(std::uint64_t seed = 4, int points = 50);

/// "all", "rlt", "shor", "sdprlt" or "rankone"
std::vector<SuiteReport> run_verify_suite(const std::string& name, std::uint64_t seed = 0);

}  // namespace sstqp
