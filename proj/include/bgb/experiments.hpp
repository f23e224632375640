#pragma once

#include <string>
#include <vector>

#include "bgb/classify.hpp"
#include "bgb/oracle.hpp"

namespace bgb {

// the 4x4 block matrix (sigma 0; tau(a) sigma) over a length-2 ring, with
// sigma the 2x2 swap and tau(a) = (pi a*pi; pi pi)
Mat build_42_matrix(const Ring& r, Elem a);
// its permutation invariant: the double swap (2,1,4,3)
Perm perm_42();

struct Experiment42Run {
  Ring ring;
  std::vector<Elem> residues;          // one lift per residue class mod pi
  std::vector<int> class_of;           // oracle class per residue
  std::vector<int> lift_class_of;      // class of the pi-shifted lift a + pi
  std::vector<IntersectionMatrix> rmats;
  std::vector<IntersectionProfile> profiles;
  std::vector<std::pair<int, int>> collisions; // inequivalent pairs sharing r and profile
};

struct Experiment42Result {
  uint32_t q = 0;
  std::vector<Experiment42Run> runs; // zpk then fqtk
  bool ok = false;
  std::vector<std::string> notes;
};

// Reproduces the length-2, n = 4 dependence experiment: the constructed
// matrices fall into exactly q classes matching residues mod pi; the class of
// a = 1 is split off by the (2,3) intersection number; for q >= 3 the other
// classes share every intersection invariant.
Experiment42Result experiment_42(uint32_t q, const OracleOpts& opts = {});

struct DependenceCell {
  int n = 0, k = 0;
  bool tested = false;
  long long count_q2 = 0, count_q3 = 0;
  char verdict = 'U'; // 'D' equal counts, 'N' different, 'U' untested
  bool matches_theory = true;
};

struct DependenceTable {
  std::vector<DependenceCell> cells;
  bool ok = true; // every tested cell matches the predicate
};

// the predicate: the count is field-independent iff n <= 2 or k = 1 or (n,k) = (3,2)
bool count_is_field_independent(int n, int k);
DependenceTable dependence_table(int max_n, int max_k, const OracleOpts& opts = {});

} // namespace bgb
