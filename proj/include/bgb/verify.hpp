#pragma once

#include <string>
#include <vector>

#include "bgb/oracle.hpp"

namespace bgb {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::vector<std::string> notes;
  double seconds = 0.0;
};

struct VerifyOpts {
  OracleOpts oracle;
  uint64_t seed = 0x5eed5eed; // randomized property checks; any seed must pass
};

CriterionResult verify_n2_count_law(const VerifyOpts& v);       // 1
CriterionResult verify_n3_census(const VerifyOpts& v);          // 2
CriterionResult verify_field_independence(const VerifyOpts& v); // 3
CriterionResult verify_bmb(const VerifyOpts& v);                // 4
CriterionResult verify_42(const VerifyOpts& v);                 // 5
CriterionResult verify_cases(const VerifyOpts& v);              // 6
CriterionResult verify_invariant_suite(const VerifyOpts& v);    // 7
CriterionResult verify_growth(const VerifyOpts& v);             // 8
CriterionResult verify_flag_formula(const VerifyOpts& v);       // 9

CriterionResult run_criterion(int id, const VerifyOpts& v);

// suite names accepted by the command line: n2, n3, bmb, 42, cases, growth,
// invariants, flags, all
std::vector<int> criteria_for_suite(const std::string& suite);

} // namespace bgb
