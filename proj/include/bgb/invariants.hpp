#pragma once

#include <utility>
#include <vector>

#include "bgb/matrix.hpp"

namespace bgb {

// Permutation as a matrix pattern: to_row[j] = row of the 1 in column j (0-based).
class Perm {
public:
  explicit Perm(std::vector<int> to_row);
  static Perm identity(int n);

  int n() const { return static_cast<int>(to_row_.size()); }
  int operator[](int col) const { return to_row_[col]; }
  bool is_identity() const;
  Perm inverse() const;

  Mat to_mat(const Ring& r) const;
  std::vector<int> one_line_1based() const; // [w(1),...,w(n)]
  std::string to_string() const;            // "213" style

  friend bool operator==(const Perm&, const Perm&) = default;
  friend bool operator<(const Perm& a, const Perm& b) { return a.to_row_ < b.to_row_; }

private:
  std::vector<int> to_row_;
};

// The Bruhat permutation of the mod-pi reduction, read off lower-left rank
// jumps: w(j) = max{ i : rank drops between the lower-left (i-1,j) and
// (i-1,j-1) corners }. Requires an invertible matrix.
Perm permutation_invariant(const Mat& a);

// length of the module F^j meet F_0^i, where F = a*F_0 is the flag of a
int intersection_length(const Mat& a, int i, int j);

struct IntersectionMatrix {
  int n = 0;
  std::vector<int> r; // row-major n x n, entries in [0, k]
  int at(int i, int j) const { return r[static_cast<size_t>(i) * n + j]; }
  friend bool operator==(const IntersectionMatrix&, const IntersectionMatrix&) = default;
  std::string to_string() const;
};

// r_ij by inclusion-exclusion on intersection lengths
IntersectionMatrix intersection_numbers(const Mat& a);

// module types of all intersections F^j meet F_0^i, (i,j) in [0,n]^2
struct IntersectionProfile {
  int n = 0;
  std::vector<Partition> table; // (n+1) x (n+1), row-major by (i, j)
  const Partition& at(int i, int j) const {
    return table[static_cast<size_t>(i) * (n + 1) + j];
  }
  friend bool operator==(const IntersectionProfile&, const IntersectionProfile&) = default;
};
IntersectionProfile intersection_profile(const Mat& a);

// Block reduction for alpha = (X1 a1; a2 X2) with a1 the top-right n1 x n1
// block and a2 the lower-left n2 x n2 block. Requires a2 invertible. Returns
// (a2, a1 - X1 a2^{-1} X2); alpha ~ alpha' iff the returned pairs are
// equivalent componentwise.
std::pair<Mat, Mat> block_reduce(const Mat& a, int n1, int n2);

// Two-sided Borel reduction to W + residue: output has a 1 at (w(j), j) for
// each column, zeros at every position clearable by triangular row/column
// operations, and entries of positive valuation at the surviving positions
// (w(j'), j) with j < j' and w(j) < w(j').
Mat bruhat_normal_form(const Mat& a);

} // namespace bgb
