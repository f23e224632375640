#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "bgb/ring.hpp"

namespace bgb {

// Module type: weakly decreasing parts in [1, k], so the module is
// the direct sum of A/pi^{parts[r]}. Empty partition = zero module.
struct Partition {
  std::vector<int> parts;

  int length() const { // composition length = sum of parts
    int s = 0;
    for (int p : parts) s += p;
    return s;
  }
  // containment of Young diagrams (rows sorted decreasing)
  bool contains(const Partition& other) const;
  friend bool operator==(const Partition&, const Partition&) = default;
  std::string to_string() const;
};

// Dense matrix over a chain ring. Operations return fresh values; in-place
// mutation is internal plumbing only.
class Mat {
public:
  Mat(Ring ring, int rows, int cols);
  static Mat identity(const Ring& r, int n);
  static Mat from_codes(const Ring& r, int rows, int cols,
                        std::initializer_list<uint32_t> codes);

  const Ring& ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Elem at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }
  void set(int r, int c, Elem x) { e_[static_cast<size_t>(r) * cols_ + c] = x; }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  // rows separated by ';', entries by ',' in the ring's element syntax
  std::string to_string() const;
  static Mat parse(const Ring& r, std::string_view text);

private:
  Ring ring_;
  int rows_, cols_;
  std::vector<Elem> e_;
};

Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Elem det(const Mat& a);
Mat inverse(const Mat& a); // throws non_invertible
bool is_invertible(const Mat& a);
bool is_borel(const Mat& a); // upper triangular with unit diagonal

// entrywise reduction to the residue field (a ring of length 1)
Mat reduce_mod_p(const Mat& a);
// image in the quotient A_m
Mat reduce_mod(const Mat& a, int m);

// rows i+1..n, columns 1..j (1-based corner indices); empty shapes allowed
Mat lower_left_submatrix(const Mat& a, int i, int j);
Mat hconcat(const Mat& a, const Mat& b);

// Diagonalisation over the chain ring: u * a * v = d with u, v invertible and
// d = diag(pi^{vals[0]}, pi^{vals[1]}, ...), vals ascending. Pivoting picks the
// entry of minimal valuation, ties broken by row-major scan order.
struct Smith {
  Mat u, d, v;
  std::vector<int> vals; // valuations of the nonzero diagonal entries
};
Smith smith(const Mat& a);

// type of the column span: lambda_r = k - vals[r]
Partition module_type(const Mat& a);

// columns generate { x : a x = 0 }
Mat kernel(const Mat& a);

Mat random_gl(const Ring& r, int n, uint64_t seed);
Mat random_borel(const Ring& r, int n, uint64_t seed);

// streaming variants used by the property tests
class Rng {
public:
  explicit Rng(uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  uint64_t next();
  uint64_t below(uint64_t bound); // unbiased in [0, bound)
private:
  uint64_t s_;
};
Mat random_mat(const Ring& r, int rows, int cols, Rng& rng);
Mat random_gl(const Ring& r, int n, Rng& rng);
Mat random_borel(const Ring& r, int n, Rng& rng);

} // namespace bgb
