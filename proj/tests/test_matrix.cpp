#include "doctest.h"

#include <set>

#include "bgb/matrix.hpp"

using namespace bgb;

namespace {

// every element of the column span, by direct enumeration of coefficient tuples
std::set<std::vector<uint32_t>> span_set(const Mat& m) {
  const Ring& r = m.ring();
  std::set<std::vector<uint32_t>> out;
  std::vector<uint32_t> coef(m.cols(), 0);
  for (;;) {
    std::vector<uint32_t> v(m.rows(), 0);
    for (int row = 0; row < m.rows(); ++row) {
      Elem s = r.zero();
      for (int c = 0; c < m.cols(); ++c) s = r.add(s, r.mul(m.at(row, c), r.elem(coef[c])));
      v[row] = s.code;
    }
    out.insert(v);
    int t = 0;
    for (; t < m.cols(); ++t) {
      if (++coef[t] < r.size()) break;
      coef[t] = 0;
    }
    if (t == m.cols()) break;
  }
  return out;
}

int log_size(const Ring& r, size_t n) {
  int e = 0;
  size_t x = 1;
  while (x < n) {
    x *= r.q();
    ++e;
  }
  REQUIRE(x == n);
  return e;
}

} // namespace

TEST_CASE("matrix parse and print") {
  Ring z4 = Ring::zpk(2, 2);
  Mat m = Mat::parse(z4, "1,0;2,1");
  CHECK(m.rows() == 2);
  CHECK(m.at(1, 0).code == 2);
  CHECK(m.to_string() == "1,0;2,1");
  Ring f4 = Ring::fqtk(2, 2);
  Mat f = Mat::parse(f4, "1,1+t;0,t");
  CHECK(f.at(0, 1).code == 3);
  CHECK(f.to_string() == "1,1+t;0,t");
}

TEST_CASE("det, inverse, borel") {
  Ring z4 = Ring::zpk(2, 2);
  CHECK(det(Mat::parse(z4, "1,0;2,1")) == z4.one());
  Mat a = Mat::parse(z4, "2,1;1,0");
  CHECK(z4.is_unit(det(a))); // det = -1
  Mat ai = inverse(a);
  CHECK(mat_mul(ai, a) == Mat::identity(z4, 2));
  CHECK(mat_mul(a, ai) == Mat::identity(z4, 2));
  CHECK_THROWS_AS(inverse(Mat::parse(z4, "2,1;0,2")), non_invertible);

  CHECK(is_borel(Mat::identity(z4, 2)));
  CHECK_FALSE(is_borel(Mat::parse(z4, "1,0;2,1")));
  CHECK_FALSE(is_borel(Mat::parse(z4, "2,1;0,1"))); // non-unit diagonal
}

TEST_CASE("identity is neutral") {
  Ring f9 = Ring::fqtk(3, 2);
  Rng rng(7);
  Mat a = random_gl(f9, 3, rng);
  CHECK(mat_mul(Mat::identity(f9, 3), a) == a);
  CHECK(mat_mul(a, Mat::identity(f9, 3)) == a);
}

TEST_CASE("reduce_mod_p is a ring homomorphism on matrices") {
  Ring z4 = Ring::zpk(2, 2);
  CHECK(reduce_mod_p(Mat::parse(z4, "1,0;2,1")) == Mat::identity(Ring::zpk(2, 1), 2));
  Ring z9 = Ring::zpk(3, 2);
  CHECK(reduce_mod_p(Mat::parse(z9, "3,1;1,3")) ==
        Mat::parse(Ring::zpk(3, 1), "0,1;1,0"));
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    Mat a = random_mat(z9, 3, 3, rng), b = random_mat(z9, 3, 3, rng);
    CHECK(reduce_mod_p(mat_mul(a, b)) == mat_mul(reduce_mod_p(a), reduce_mod_p(b)));
  }
  Mat g = random_gl(z9, 3, rng);
  CHECK(is_invertible(reduce_mod_p(g)));
}

TEST_CASE("lower-left corners") {
  Ring z4 = Ring::zpk(2, 2);
  Mat a = Mat::parse(z4, "1,2,3;0,1,2;2,2,1");
  CHECK(lower_left_submatrix(a, 0, 3) == a);
  CHECK(lower_left_submatrix(a, 3, 2).rows() == 0);
  Mat ll = lower_left_submatrix(a, 1, 2);
  CHECK(ll.rows() == 2);
  CHECK(ll.cols() == 2);
  CHECK(ll.at(0, 0).code == 0);
  CHECK(ll.at(1, 1).code == 2);
  CHECK_THROWS_AS(lower_left_submatrix(a, 4, 1), error);
}

TEST_CASE("smith diagonalisation structure") {
  for (Ring r : {Ring::zpk(2, 2), Ring::fqtk(3, 2), Ring::zpk(2, 3)}) {
    Rng rng(5);
    for (int t = 0; t < 30; ++t) {
      Mat a = random_mat(r, 2 + t % 2, 2 + (t / 2) % 2, rng);
      Smith s = smith(a);
      CHECK(mat_mul(s.u, mat_mul(a, s.v)) == s.d);
      CHECK(is_invertible(s.u));
      CHECK(is_invertible(s.v));
      for (size_t i = 1; i < s.vals.size(); ++i) CHECK(s.vals[i - 1] <= s.vals[i]);
      for (int i = 0; i < s.d.rows(); ++i)
        for (int j = 0; j < s.d.cols(); ++j) {
          if (i == j && i < static_cast<int>(s.vals.size()))
            CHECK(s.d.at(i, j) == r.pi(s.vals[i]));
          else
            CHECK(r.is_zero(s.d.at(i, j)));
        }
    }
  }
}

TEST_CASE("module type examples") {
  Ring z8 = Ring::zpk(2, 3);
  CHECK(module_type(Mat::identity(z8, 3)) == Partition{{3, 3, 3}});
  CHECK(module_type(Mat(z8, 2, 2)) == Partition{{}});
  // the span of 4 in Z/8 is {0, 4}, one cyclic factor of length 1
  Mat m(z8, 1, 1);
  m.set(0, 0, z8.elem(4));
  CHECK(module_type(m) == Partition{{1}});
  CHECK(span_set(m).size() == 2);
}

TEST_CASE("module type matches direct span enumeration") {
  for (Ring r : {Ring::zpk(2, 2), Ring::fqtk(2, 2)}) {
    // all 2x2 matrices
    for (uint32_t code = 0; code < 256; ++code) {
      Mat m(r, 2, 2);
      for (int b = 0; b < 4; ++b) m.set(b / 2, b % 2, r.elem((code >> (2 * b)) & 3));
      CHECK(module_type(m).length() == log_size(r, span_set(m).size()));
    }
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
      Mat m = random_mat(r, 3, 3, rng);
      CHECK(module_type(m).length() == log_size(r, span_set(m).size()));
    }
  }
}

TEST_CASE("module type is a two-sided GL invariant") {
  for (Ring r : {Ring::zpk(2, 2), Ring::fqtk(3, 2)}) {
    Rng rng(13);
    for (int t = 0; t < 50; ++t) {
      Mat a = random_mat(r, 3, 3, rng);
      Mat g = random_gl(r, 3, rng), h = random_gl(r, 3, rng);
      CHECK(module_type(a) == module_type(mat_mul(g, mat_mul(a, h))));
    }
    CHECK(module_type(random_gl(r, 3, rng)) ==
          Partition{std::vector<int>(3, r.k())});
  }
}

TEST_CASE("kernel generates the set-theoretic kernel") {
  for (Ring r : {Ring::zpk(2, 2), Ring::fqtk(2, 2)}) {
    CHECK(span_set(kernel(Mat::identity(r, 2))).size() == 1); // only zero
    Mat pi1(r, 1, 1);
    pi1.set(0, 0, r.pi());
    Mat kp = kernel(pi1);
    std::set<std::vector<uint32_t>> kset = span_set(kp);
    CHECK(kset.size() == 2); // {0, pi}
    CHECK(kset.count({r.pi().code}) == 1);

    for (uint32_t code = 0; code < 256; ++code) {
      Mat m(r, 2, 2);
      for (int b = 0; b < 4; ++b) m.set(b / 2, b % 2, r.elem((code >> (2 * b)) & 3));
      Mat k = kernel(m);
      // a * kernel(a) = 0
      Mat prod = mat_mul(m, k);
      for (int i = 0; i < prod.rows(); ++i)
        for (int j = 0; j < prod.cols(); ++j) CHECK(r.is_zero(prod.at(i, j)));
      // generated span = set-theoretic kernel
      std::set<std::vector<uint32_t>> gen = span_set(k);
      size_t direct = 0;
      for (uint32_t x = 0; x < r.size(); ++x)
        for (uint32_t y = 0; y < r.size(); ++y) {
          Elem r0 = r.add(r.mul(m.at(0, 0), r.elem(x)), r.mul(m.at(0, 1), r.elem(y)));
          Elem r1 = r.add(r.mul(m.at(1, 0), r.elem(x)), r.mul(m.at(1, 1), r.elem(y)));
          if (r.is_zero(r0) && r.is_zero(r1)) {
            ++direct;
            CHECK(gen.count({x, y}) == 1);
          }
        }
      CHECK(gen.size() == direct);
    }
  }
  // full kernel of the zero map
  Ring z4 = Ring::zpk(2, 2);
  CHECK(span_set(kernel(Mat(z4, 2, 2))).size() == 16);
}

TEST_CASE("random sampling is deterministic and well-shaped") {
  Ring z4 = Ring::zpk(2, 2);
  CHECK(random_gl(z4, 3, 42u) == random_gl(z4, 3, 42u));
  CHECK(is_invertible(random_gl(z4, 4, 1u)));
  Mat b = random_borel(z4, 4, 9u);
  CHECK(is_borel(b));
  CHECK(random_borel(z4, 4, 9u) == b);
}

TEST_CASE("partition containment") {
  CHECK(Partition{{3, 1}}.contains(Partition{{2, 1}}));
  CHECK_FALSE(Partition{{2, 2}}.contains(Partition{{3}}));
  CHECK(Partition{{2}}.contains(Partition{{}}));
}
