#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "bgb/classify.hpp"
#include "bgb/oracle.hpp"

using namespace bgb;

TEST_CASE("n=2 classification") {
  Ring z4 = Ring::zpk(2, 2);
  CHECK(classify_n2(Mat::identity(z4, 2)).r == 2); // pi^k = 0
  CHECK(classify_n2(Mat::parse(z4, "0,1;1,0")).r == 0);
  CHECK(classify_n2(Mat::parse(z4, "1,0;2,1")).r == 1);
  for (int r = 0; r <= 2; ++r) CHECK(classify_n2(rep_n2(z4, {r})).r == r);
  CHECK(count_n2(3) == 4);
}

TEST_CASE("n=2 labels partition the group exhaustively") {
  for (Ring r : {Ring::zpk(2, 2), Ring::fqtk(3, 2)}) {
    std::vector<Mat> gl;
    const uint64_t space = r.size() * r.size() * r.size() * r.size();
    for (uint64_t code = 0; code < space; ++code) {
      Mat m(r, 2, 2);
      uint64_t x = code;
      for (int b = 0; b < 4; ++b) {
        m.set(b / 2, b % 2, r.elem(x % r.size()));
        x /= r.size();
      }
      if (is_invertible(m)) gl.push_back(m);
    }
    // equal label <=> equal oracle class, exhaustively over the whole group
    std::vector<int> cls = flag_class_partition(gl);
    std::vector<int> labels(gl.size());
    for (size_t i = 0; i < gl.size(); ++i) labels[i] = classify_n2(gl[i]).r;
    for (size_t i = 0; i < gl.size(); ++i)
      for (size_t j = i + 1; j < gl.size(); ++j)
        if ((cls[i] == cls[j]) != (labels[i] == labels[j])) {
          CHECK((cls[i] == cls[j]) == (labels[i] == labels[j]));
          i = j = gl.size();
          break;
        }
    // and the label census matches the closed form
    std::set<int> distinct(labels.begin(), labels.end());
    CHECK(static_cast<long long>(distinct.size()) == count_n2(r.k()));
  }
}

TEST_CASE("standard form of one-unit-corner matrices") {
  Ring z8 = Ring::zpk(2, 3);
  M2Std s = standard_form_m2(Mat::parse(z8, "2,1;0,2"));
  CHECK(s.i == 1);
  CHECK(s.j == 3); // v(0) = k
  CHECK(s.l == 1);
  CHECK_FALSE(s.a.has_value());

  Ring z16 = Ring::zpk(2, 4);
  M2Std t = standard_form_m2(Mat::parse(z16, "2,1;8,4"));
  CHECK(t.i == 1);
  CHECK(t.j == 3);
  CHECK(t.l == 2);
  REQUIRE(t.a.has_value());
  CHECK(t.a->code == 1);

  M2Std u = standard_form_m2(Mat::parse(z16, "2,1;12,2"));
  CHECK(u.i == 1);
  CHECK(u.j == 2);
  CHECK(u.l == 1);
  REQUIRE(u.a.has_value());
  CHECK(u.a->code == 3);
  // label: delta = v(3 - 1) = 1, residue kept mod pi^2
  M2Label lab = classify_m2(Mat::parse(z16, "2,1;12,2"));
  CHECK(lab.kind == M2Label::Kind::Special);
  CHECK(lab.delta == 1);
  CHECK(lab.a_code == 3);

  CHECK_THROWS_AS(standard_form_m2(Mat::identity(z8, 2)), not_in_m2);
}

TEST_CASE("one-unit-corner labels match the orbit partition exhaustively") {
  // length 4 brings in the generic strata (unit residues with i + l != j)
  for (Ring r : {Ring::zpk(2, 2), Ring::zpk(2, 3), Ring::fqtk(3, 2), Ring::zpk(3, 2),
                 Ring::zpk(2, 4), Ring::fqtk(2, 4), Ring::zpk(3, 3)}) {
    auto all = enumerate_m2(r);
    auto cls = m2_all_classes_torus(r);
    std::map<M2Label, std::set<int>> label_to_classes;
    std::map<int, std::set<std::string>> class_to_labels;
    for (size_t i = 0; i < all.size(); ++i) {
      M2Label lab = classify_m2(all[i]);
      label_to_classes[lab].insert(cls[i]);
      class_to_labels[cls[i]].insert(lab.to_string());
    }
    for (const auto& [lab, classes] : label_to_classes) CHECK(classes.size() == 1);
    for (const auto& [c, labels] : class_to_labels) CHECK(labels.size() == 1);
    CHECK(label_to_classes.size() == count_m2(r.q(), r.k()));
    // every enumerated label is realised and round-trips through its representative
    auto labels = enumerate_labels_m2(r);
    CHECK(labels.size() == count_m2(r.q(), r.k()));
    for (const M2Label& lab : labels) CHECK(classify_m2(rep_m2(r, lab)) == lab);
  }
}

TEST_CASE("one-unit-corner counts") {
  CHECK(count_m2(2, 1) == 1);
  CHECK(count_m2(2, 2) == 5);
  CHECK(count_m2(3, 2) == 5);
  CHECK(count_m2(2, 3) == 14); // 9 + 1 + 2 + (q - 1)
  CHECK(count_m2(3, 3) == 15);
}

TEST_CASE("standard-form equivalence closed form") {
  Ring z32 = Ring::zpk(2, 5);
  // (i,j,l) = (1,4,2): eps = 1, k-j = 1, compare mod pi
  CHECK(bmb_equiv(z32, 1, 4, 2, z32.one(), z32.add(z32.one(), z32.pi())));
  Ring z16 = Ring::zpk(2, 4);
  // (i,j,l) = (1,2,1): delta(1) = 2 vs delta(1+pi) = 1
  CHECK_FALSE(bmb_equiv(z16, 1, 2, 1, z16.one(), z16.add(z16.one(), z16.pi())));
  // reflexivity
  for (Elem a : z16.quotient(2).units()) CHECK(bmb_equiv(z16, 1, 2, 1, a, a));
  CHECK_THROWS_AS(bmb_equiv(z16, 0, 2, 1, z16.one(), z16.one()), error);
  CHECK_THROWS_AS(bmb_equiv(z16, 1, 2, 1, z16.pi(), z16.one()), non_unit);
}

TEST_CASE("n=3 fiber dictionary") {
  for (Fiber f : {Fiber::One, Fiber::S1, Fiber::S2, Fiber::S1S2, Fiber::S2S1, Fiber::W0})
    CHECK(fiber_of(fiber_perm(f)) == f);
}

TEST_CASE("n=3 classification of explicit matrices") {
  Ring z8 = Ring::zpk(2, 3);
  N3Label id = classify_n3(Mat::identity(z8, 3));
  CHECK(id.fiber == Fiber::One);
  CHECK(id.m2.kind == M2Label::Kind::Discrete);
  CHECK(id.m2.i == 3);
  CHECK(id.m2.j == 3);
  CHECK(id.m2.l == 3);

  N3Label anti = classify_n3(Mat::parse(z8, "0,0,1;0,1,0;1,0,0"));
  CHECK(anti.fiber == Fiber::W0);

  N3Label s1 = classify_n3(Mat::parse(z8, "0,1,0;1,0,0;2,4,1"));
  CHECK(s1.fiber == Fiber::S1);
  CHECK(s1.i == 1);
  CHECK(s1.j == 2);
}

TEST_CASE("n=3 label round trip on every enumerated label") {
  for (Ring r : {Ring::zpk(2, 2), Ring::zpk(2, 3), Ring::fqtk(3, 2), Ring::zpk(3, 2),
                 Ring::zpk(2, 4), Ring::fqtk(2, 4), Ring::zpk(3, 4), Ring::zpk(5, 2),
                 Ring::zpk(2, 6)}) {
    auto labels = enumerate_labels_n3(r);
    CHECK(labels.size() == count_n3(r.q(), r.k()));
    std::set<std::string> distinct;
    for (const N3Label& lab : labels) {
      Mat rep = rep_of_label(r, lab);
      CHECK(is_invertible(rep));
      CHECK(classify_n3(rep) == lab);
      distinct.insert(lab.to_string());
    }
    CHECK(distinct.size() == labels.size());
  }
}

TEST_CASE("n=3 labels are constant on random cosets") {
  for (Ring r : {Ring::zpk(2, 2), Ring::fqtk(3, 2), Ring::zpk(2, 3)}) {
    Rng rng(53);
    for (int t = 0; t < 80; ++t) {
      Mat a = random_gl(r, 3, rng);
      Mat moved = mat_mul(random_borel(r, 3, rng), mat_mul(a, random_borel(r, 3, rng)));
      CHECK(classify_n3(a) == classify_n3(moved));
    }
  }
}

TEST_CASE("n=3 census closed forms") {
  CHECK(count_n3(2, 1) == 6);
  CHECK(count_n3(3, 1) == 6);
  CHECK(count_n3(2, 2) == 18);
  CHECK(count_n3(3, 2) == 18); // length 2 is field-independent
  CHECK(count_n3(2, 3) == 39);
  CHECK(count_n3(3, 3) == 40); // length 3 is not
  CHECK(count_n3(2, 2) == count_n3(3, 2));
  CHECK(count_n3(2, 3) != count_n3(3, 3));
  for (uint64_t q : {2, 3})
    CHECK(enumerate_labels_n3(Ring::zpk(q, 2)).size() == count_n3(q, 2));
}

TEST_CASE("n=3 labels are constant on orbits and separate them, exhaustively") {
  for (Ring r : {Ring::zpk(2, 2), Ring::fqtk(2, 2), Ring::zpk(2, 3), Ring::fqtk(3, 2)}) {
    std::vector<Mat> flags = enumerate_flags(r, 3);
    std::vector<int> cls = flag_class_partition(flags);
    const int classes = 1 + *std::max_element(cls.begin(), cls.end());
    CHECK(classes == static_cast<int>(count_n3(r.q(), r.k())));
    std::vector<std::string> label_of_class(classes);
    bool constant = true;
    for (size_t i = 0; i < flags.size(); ++i) {
      std::string lab = classify_n3(flags[i]).to_string();
      std::string& slot = label_of_class[cls[i]];
      if (slot.empty())
        slot = lab;
      else if (slot != lab)
        constant = false;
    }
    CHECK(constant);
    std::set<std::string> distinct(label_of_class.begin(), label_of_class.end());
    CHECK(distinct.size() == label_of_class.size());
  }
}

TEST_CASE("growth data") {
  CHECK(max_q_exponent(2) == 0); // no admissible strata at length 2
  CHECK(max_q_exponent(3) == 1);
  CHECK(max_q_exponent(4) == 1);
  CHECK(max_q_exponent(6) == 2);
  CHECK(max_q_exponent(12) == 4);
  StratumWitness w = max_q_exponent_witness(6);
  CHECK(w.exponent == 2);
  CHECK(std::min({w.j - w.i, w.j - w.l, w.i, w.l, 6 - w.j}) == 2);

  auto rows = growth_table(2, 6);
  CHECK(rows.size() == 6);
  CHECK(rows[0].count == 6);
  CHECK(rows[1].count == 18);
  CHECK(rows[2].count == 39);
  for (const auto& row : rows)
    if (row.k >= 2) CHECK(row.realized == row.k / 3);
}
