#include "doctest.h"

#include "bgb/experiments.hpp"

using namespace bgb;

TEST_CASE("the 4x4 block construction") {
  Ring z4 = Ring::zpk(2, 2);
  Mat m = build_42_matrix(z4, z4.zero());
  CHECK(m == Mat::parse(z4, "0,1,0,0;1,0,0,0;2,0,0,1;2,2,1,0"));
  CHECK(is_invertible(m));
  for (uint32_t a = 0; a < z4.size(); ++a)
    CHECK(permutation_invariant(build_42_matrix(z4, z4.elem(a))) == perm_42());
  CHECK_THROWS_AS(build_42_matrix(Ring::zpk(2, 3), Ring::zpk(2, 3).one()), error);
}

TEST_CASE("q=2 dependence experiment end to end") {
  Experiment42Result res = experiment_42(2);
  CHECK(res.ok);
  REQUIRE(res.runs.size() == 2);
  for (const auto& run : res.runs) {
    CHECK(run.class_of.size() == 2);
    CHECK(run.class_of[0] != run.class_of[1]);
    CHECK(run.collisions.empty());
    // residue 1 is split off by the (3,2) intersection number
    CHECK(run.rmats[0].at(2, 1) != run.rmats[1].at(2, 1));
  }
}

TEST_CASE("theory predicate") {
  CHECK(count_is_field_independent(2, 5));
  CHECK(count_is_field_independent(5, 1));
  CHECK(count_is_field_independent(3, 2));
  CHECK_FALSE(count_is_field_independent(3, 3));
  CHECK_FALSE(count_is_field_independent(4, 2));
}

TEST_CASE("dependence cells within a small budget") {
  OracleOpts opts;
  opts.budget = 2000;
  DependenceTable t = dependence_table(3, 2, opts);
  CHECK(t.ok);
  for (const auto& cell : t.cells) {
    if (cell.n == 2 || cell.k == 1 || (cell.n == 3 && cell.k == 2)) {
      CHECK(cell.tested);
      CHECK(cell.verdict == 'D');
    }
  }
}
