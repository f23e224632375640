// Acceptance suite: one verification criterion per invocation (1..9), or
// "all". Prints one PASS/FAIL line per criterion; exit 0 iff everything
// passed.
#include <cstdio>
#include <cstring>
#include <string>

#include "bgb/verify.hpp"

int main(int argc, char** argv) {
  bgb::VerifyOpts opts;
  std::vector<int> ids;
  if (argc < 2 || std::strcmp(argv[1], "all") == 0) {
    ids = bgb::criteria_for_suite("all");
  } else {
    int id = std::atoi(argv[1]);
    if (id < 1 || id > 9) {
      std::fprintf(stderr, "usage: %s {1..9|all} [threads]\n", argv[0]);
      return 2;
    }
    ids = {id};
  }
  if (argc >= 3) opts.oracle.threads = std::atoi(argv[2]);

  bool ok = true;
  for (int id : ids) {
    bgb::CriterionResult r = bgb::run_criterion(id, opts);
    ok = ok && r.passed;
    std::printf("criterion %d [%s]: %s (%.1fs)\n", r.id, r.name.c_str(),
                r.passed ? "PASS" : "FAIL", r.seconds);
    for (const std::string& note : r.notes) std::printf("  %s\n", note.c_str());
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
