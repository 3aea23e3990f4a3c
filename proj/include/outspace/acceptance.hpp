#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace outspace {

struct CriterionResult {
  int id = 0;
  bool pass = false;
  std::string title;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  std::vector<int> only;  // empty: all ten
};

CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
// prints one PASS/FAIL line per criterion as it finishes
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& out);
std::string format_result(const CriterionResult& r);

}  // namespace outspace
