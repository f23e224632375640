#include "doctest.h"

#include <map>

#include "bgb/ring.hpp"

using namespace bgb;

TEST_CASE("ring construction and basic shape") {
  Ring z4 = Ring::zpk(2, 2);
  CHECK(z4.size() == 4);
  CHECK(z4.num_units() == 2);
  CHECK(z4.pi().code == 2);

  Ring f9 = Ring::fqtk(3, 2);
  CHECK(f9.size() == 9);
  CHECK(f9.num_units() == 6);

  CHECK_THROWS_AS(Ring::zpk(4, 2), error); // 4 is not prime
  CHECK_THROWS_AS(Ring::zpk(2, 0), error);
}

TEST_CASE("ring parsing round trip") {
  for (std::string s : {"zpk:p=2,k=3", "fqtk:q=3,k=2", "zpk:p=5,k=1"}) {
    Ring r = Ring::parse(s);
    CHECK(r.to_string() == s);
  }
  CHECK_THROWS_AS(Ring::parse("zpk:q=2,k=3"), parse_error);
  CHECK_THROWS_AS(Ring::parse("watislas"), parse_error);
}

TEST_CASE("arithmetic basics") {
  Ring z4 = Ring::zpk(2, 2);
  CHECK(z4.inv(z4.elem(3)).code == 3); // 3*3 = 9 = 1 mod 4
  CHECK_THROWS_AS(z4.inv(z4.elem(2)), non_unit);

  Ring f4 = Ring::fqtk(2, 2);
  Elem one_plus_t = f4.elem(3);
  CHECK(f4.mul(one_plus_t, one_plus_t) == f4.one()); // (1+t)^2 = 1
  CHECK(f4.inv(one_plus_t) == one_plus_t);

  // inv * x = 1 over every unit of a few rings
  for (Ring r : {Ring::zpk(3, 3), Ring::fqtk(3, 3), Ring::zpk(2, 5), Ring::fqtk(5, 2)})
    for (Elem u : r.units()) CHECK(r.mul(u, r.inv(u)) == r.one());
}

TEST_CASE("valuation convention") {
  Ring z8 = Ring::zpk(2, 3);
  CHECK(z8.val(z8.elem(4)) == 2);
  CHECK(z8.val(z8.zero()) == 3); // v(0) = k
  CHECK(z8.val(z8.elem(3)) == 0);
  CHECK(z8.val(z8.pi()) == 1);

  // v(xy) = min(v(x) + v(y), k)
  for (Ring r : {Ring::zpk(2, 3), Ring::fqtk(3, 2), Ring::zpk(5, 2)})
    for (Elem x : r.elements())
      for (Elem y : r.elements())
        CHECK(r.val(r.mul(x, y)) == std::min(r.val(x) + r.val(y), r.k()));
}

TEST_CASE("unit part and exact division") {
  for (Ring r : {Ring::zpk(2, 4), Ring::fqtk(3, 3)}) {
    for (Elem x : r.elements()) {
      if (r.is_zero(x)) continue;
      Elem u = r.unit_part(x);
      CHECK(r.is_unit(u));
      CHECK(r.mul(r.pi(r.val(x)), u) == x);
    }
    for (Elem a : r.elements())
      for (Elem b : r.elements()) {
        if (r.is_zero(b) || r.val(a) < r.val(b)) continue;
        CHECK(r.mul(r.divide_exact(a, b), b) == a);
      }
  }
}

TEST_CASE("element enumeration sizes") {
  Ring z4 = Ring::zpk(2, 2);
  CHECK(z4.elements().size() == 4);
  CHECK(z4.units().size() == 2);
  Ring f4 = Ring::fqtk(2, 2);
  CHECK(f4.elements().size() == 4);
  CHECK(f4.units().size() == 2);
  Ring z8 = Ring::zpk(2, 3);
  CHECK(z8.elements().size() == 8);
  CHECK(z8.units().size() == 4);
}

TEST_CASE("unit counts against enumeration") {
  for (Ring r : {Ring::zpk(2, 4), Ring::fqtk(2, 4), Ring::zpk(3, 3), Ring::fqtk(3, 3),
                 Ring::zpk(5, 2)}) {
    for (int m = 1; m <= r.k(); ++m) {
      Ring rm = r.quotient(m);
      CHECK(Ring::unit_count(r.q(), m) == rm.units().size());
      uint64_t sum = 0;
      for (int delta = 0; delta <= m; ++delta) {
        uint64_t closed = Ring::units_with_delta_count(r.q(), m, delta);
        uint64_t seen = 0;
        for (Elem a : rm.units())
          if (rm.val(rm.sub(a, rm.one())) == delta) ++seen;
        CHECK(closed == seen);
        sum += closed;
      }
      CHECK(sum == Ring::unit_count(r.q(), m));
    }
    CHECK(Ring::unit_count(r.q(), 0) == 1);
  }
  CHECK_THROWS_AS(Ring::units_with_delta_count(3, 2, 3), error); // delta > m
}

TEST_CASE("delta-count spot values") {
  CHECK(Ring::unit_count(3, 1) == 2);
  CHECK(Ring::unit_count(2, 2) == 2);
  CHECK(Ring::units_with_delta_count(3, 1, 0) == 1); // only a = 2
}

TEST_CASE("flavors with equal (p,k) look alike") {
  for (auto [p, k] : {std::pair<uint64_t, int>{2, 3}, {3, 2}, {5, 2}}) {
    Ring a = Ring::zpk(p, k), b = Ring::fqtk(p, k);
    CHECK(a.size() == b.size());
    CHECK(a.units().size() == b.units().size());
    std::map<int, int> ha, hb;
    for (Elem x : a.elements()) ha[a.val(x)]++;
    for (Elem x : b.elements()) hb[b.val(x)]++;
    CHECK(ha == hb);
  }
}

TEST_CASE("quotient and reduce") {
  Ring z8 = Ring::zpk(2, 3);
  Ring z4 = z8.quotient(2);
  CHECK(z4 == Ring::zpk(2, 2));
  CHECK(z8.reduce(z8.elem(7), 2).code == 3);
  Ring f27 = Ring::fqtk(3, 3);
  CHECK(f27.reduce(f27.elem(26), 2).code == 8); // drop the t^2 digit
}

TEST_CASE("element text round trip") {
  Ring z8 = Ring::zpk(2, 3);
  CHECK(z8.elem_to_string(z8.elem(6)) == "6");
  CHECK(z8.parse_elem("6").code == 6);

  Ring f27 = Ring::fqtk(3, 3);
  CHECK(f27.elem_to_string(f27.elem(0)) == "0");
  CHECK(f27.elem_to_string(f27.elem(5)) == "2+t");
  CHECK(f27.elem_to_string(f27.elem(9)) == "t^2");
  for (Elem x : f27.elements()) CHECK(f27.parse_elem(f27.elem_to_string(x)) == x);
  CHECK(f27.parse_elem("1+2t") == f27.elem(7));
  CHECK_THROWS_AS(f27.parse_elem("1+x"), parse_error);
}

TEST_CASE("untabled rings agree with tabled ones") {
  // 3^7 = 2187 exceeds the table cap; compare against the tabled quotient
  Ring big = Ring::fqtk(3, 7);
  Ring small = Ring::fqtk(3, 3);
  CHECK(big.add_table() == nullptr);
  CHECK(small.add_table() != nullptr);
  for (Elem x : small.elements())
    for (Elem y : small.elements()) {
      CHECK(big.reduce(big.mul(big.elem(x.code), big.elem(y.code)), 3) == small.mul(x, y));
      CHECK(big.reduce(big.add(big.elem(x.code), big.elem(y.code)), 3) == small.add(x, y));
    }
  Ring bigz = Ring::zpk(5, 6); // 15625
  CHECK(bigz.add_table() == nullptr);
  CHECK(bigz.mul(bigz.elem(3124), bigz.elem(5)).code == 15620);
  CHECK(bigz.inv(bigz.elem(7)).code * 7 % 15625 == 1);
}
