#include "bgb/experiments.hpp"

#include <algorithm>

namespace bgb {

Mat build_42_matrix(const Ring& r, Elem a) {
  if (r.k() != 2) throw error("build_42_matrix: ring must have length 2");
  Elem pi = r.pi();
  Mat m(r, 4, 4);
  m.set(0, 1, r.one());
  m.set(1, 0, r.one());
  m.set(2, 0, pi);
  m.set(2, 1, r.mul(a, pi));
  m.set(2, 3, r.one());
  m.set(3, 0, pi);
  m.set(3, 1, pi);
  m.set(3, 2, r.one());
  return m;
}

Perm perm_42() { return Perm({1, 0, 3, 2}); }

Experiment42Result experiment_42(uint32_t q, const OracleOpts& opts) {
  Experiment42Result res;
  res.q = q;
  res.ok = true;
  auto fail = [&](const std::string& why) {
    res.ok = false;
    res.notes.push_back("FAIL: " + why);
  };

  for (Flavor f : {Flavor::Zpk, Flavor::FqTk}) {
    Ring ring = Ring::make(f, q, 2);
    Experiment42Run run{ring, {}, {}, {}, {}, {}, {}};
    std::vector<Mat> seeds;
    for (uint32_t c = 0; c < q; ++c) {
      Elem a = ring.from_int(c);
      run.residues.push_back(a);
      seeds.push_back(build_42_matrix(ring, a));
      // a second lift of the same residue class
      seeds.push_back(build_42_matrix(ring, ring.add(a, ring.pi())));
    }
    for (size_t i = 0; i < seeds.size(); ++i)
      if (!(permutation_invariant(seeds[i]) == perm_42()))
        fail(ring.to_string() + ": constructed matrix is not over the expected permutation");

    std::vector<int> cls = flag_class_partition(seeds, opts);
    for (uint32_t c = 0; c < q; ++c) {
      run.class_of.push_back(cls[2 * c]);
      run.lift_class_of.push_back(cls[2 * c + 1]);
    }

    // same residue mod pi <=> same double coset
    for (uint32_t c = 0; c < q; ++c)
      if (run.class_of[c] != run.lift_class_of[c])
        fail(ring.to_string() + ": a and a + pi landed in different classes");
    for (uint32_t c = 0; c < q; ++c)
      for (uint32_t d = c + 1; d < q; ++d)
        if (run.class_of[c] == run.class_of[d])
          fail(ring.to_string() + ": distinct residues mod pi landed in one class");

    // q distinct classes over the fixed permutation witness the fiber size
    std::vector<int> distinct = run.class_of;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() != q) fail(ring.to_string() + ": expected exactly q classes");

    for (uint32_t c = 0; c < q; ++c) {
      run.rmats.push_back(intersection_numbers(seeds[2 * c]));
      run.profiles.push_back(intersection_profile(seeds[2 * c]));
    }
    // the residue 1 class is split off by the (3,2) intersection number, and
    // the degenerate residue 0 class by the (1,3) one
    for (uint32_t c = 0; c < q; ++c) {
      if (c != 1 && run.rmats[c].at(2, 1) == run.rmats[1].at(2, 1))
        fail(ring.to_string() + ": (3,2) intersection number fails to split off a = 1");
      if (c != 0 && run.rmats[c].at(0, 2) == run.rmats[0].at(0, 2))
        fail(ring.to_string() + ": (1,3) intersection number fails to split off a = 0");
    }
    // the unit classes away from 1 are indistinguishable by both invariants
    for (uint32_t c = 0; c < q; ++c)
      for (uint32_t d = c + 1; d < q; ++d)
        if (run.rmats[c] == run.rmats[d] && run.profiles[c] == run.profiles[d])
          run.collisions.push_back({static_cast<int>(c), static_cast<int>(d)});
    size_t expected_collisions = q >= 3 ? (static_cast<size_t>(q) - 2) * (q - 3) / 2 : 0;
    if (run.collisions.size() != expected_collisions)
      fail(ring.to_string() + ": unexpected invariant-collision pattern");
    for (auto [c, d] : run.collisions)
      if (c <= 1 || d <= 1)
        fail(ring.to_string() + ": residues 0 and 1 must not collide");

    res.runs.push_back(std::move(run));
  }

  if (res.runs.size() == 2) {
    std::vector<int> a = res.runs[0].class_of, b = res.runs[1].class_of;
    if (a != b) fail("the two ring flavors disagree on the class pattern");
  }
  if (res.ok)
    res.notes.push_back("q = " + std::to_string(q) + ": " + std::to_string(q) +
                        " classes over the fixed permutation, matching residues mod pi");
  return res;
}

bool count_is_field_independent(int n, int k) {
  return n <= 2 || k == 1 || (n == 3 && k == 2);
}

DependenceTable dependence_table(int max_n, int max_k, const OracleOpts& opts) {
  DependenceTable table;
  for (int n = 2; n <= max_n; ++n)
    for (int k = 1; k <= max_k; ++k) {
      DependenceCell cell;
      cell.n = n;
      cell.k = k;
      Ring r2 = Ring::zpk(2, k), r3 = Ring::zpk(3, k);
      if (flag_count(r2, n) <= opts.budget && flag_count(r3, n) <= opts.budget) {
        cell.tested = true;
        cell.count_q2 = double_cosets(r2, n, opts).num_cosets();
        cell.count_q3 = double_cosets(r3, n, opts).num_cosets();
        cell.verdict = cell.count_q2 == cell.count_q3 ? 'D' : 'N';
        cell.matches_theory =
            (cell.verdict == 'D') == count_is_field_independent(n, k);
        if (!cell.matches_theory) table.ok = false;
      }
      table.cells.push_back(cell);
    }
  return table;
}

} // namespace bgb
