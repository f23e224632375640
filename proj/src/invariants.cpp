#include "bgb/invariants.hpp"

#include <algorithm>

namespace bgb {

Perm::Perm(std::vector<int> to_row) : to_row_(std::move(to_row)) {
  std::vector<char> seen(to_row_.size(), 0);
  for (int r : to_row_) {
    if (r < 0 || r >= n() || seen[r]) throw error("Perm: not a bijection");
    seen[r] = 1;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return Perm(std::move(v));
}

bool Perm::is_identity() const {
  for (int j = 0; j < n(); ++j)
    if (to_row_[j] != j) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<int> v(to_row_.size());
  for (int j = 0; j < n(); ++j) v[to_row_[j]] = j;
  return Perm(std::move(v));
}

Mat Perm::to_mat(const Ring& r) const {
  Mat m(r, n(), n());
  for (int j = 0; j < n(); ++j) m.set(to_row_[j], j, r.one());
  return m;
}

std::vector<int> Perm::one_line_1based() const {
  std::vector<int> v(to_row_.size());
  for (int j = 0; j < n(); ++j) v[j] = to_row_[j] + 1;
  return v;
}

std::string Perm::to_string() const {
  std::string s;
  for (int j = 0; j < n(); ++j) s += std::to_string(to_row_[j] + 1);
  return s;
}

namespace {

// rank over the residue field by Gaussian elimination
int field_rank(const Mat& m) {
  const Ring& R = m.ring();
  Mat a = m;
  int rank = 0;
  for (int c = 0; c < a.cols() && rank < a.rows(); ++c) {
    int piv = -1;
    for (int r = rank; r < a.rows(); ++r)
      if (!R.is_zero(a.at(r, c))) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int cc = 0; cc < a.cols(); ++cc) {
      Elem t = a.at(rank, cc);
      a.set(rank, cc, a.at(piv, cc));
      a.set(piv, cc, t);
    }
    Elem inv = R.inv(a.at(rank, c));
    for (int r = rank + 1; r < a.rows(); ++r)
      if (!R.is_zero(a.at(r, c))) {
        Elem f = R.mul(a.at(r, c), inv);
        for (int cc = c; cc < a.cols(); ++cc)
          a.set(r, cc, R.sub(a.at(r, cc), R.mul(f, a.at(rank, cc))));
      }
    ++rank;
  }
  return rank;
}

} // namespace

Perm permutation_invariant(const Mat& a) {
  if (!is_invertible(a)) throw non_invertible("permutation_invariant: not in GL");
  Mat ab = reduce_mod_p(a);
  const int n = a.rows();
  // rk[i][j] = rank of the lower-left (n-i) x j corner of the reduction
  std::vector<std::vector<int>> rk(n + 1, std::vector<int>(n + 1, 0));
  for (int i = 0; i <= n; ++i)
    for (int j = 1; j <= n; ++j) rk[i][j] = field_rank(lower_left_submatrix(ab, i, j));
  std::vector<int> w(n, -1);
  for (int j = 1; j <= n; ++j) {
    for (int i = n; i >= 1; --i)
      if (rk[i - 1][j] > rk[i - 1][j - 1]) {
        w[j - 1] = i - 1;
        break;
      }
    if (w[j - 1] < 0) throw error("permutation_invariant: no rank jump (bug)");
  }
  return Perm(std::move(w));
}

int intersection_length(const Mat& a, int i, int j) {
  const int n = a.rows();
  if (i < 0 || i > n || j < 0 || j > n) throw error("intersection_length: index out of range");
  return j * a.ring().k() - module_type(lower_left_submatrix(a, i, j)).length();
}

std::string IntersectionMatrix::to_string() const {
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (i) s += ";";
    for (int j = 0; j < n; ++j) {
      if (j) s += ",";
      s += std::to_string(at(i, j));
    }
  }
  return s;
}

IntersectionMatrix intersection_numbers(const Mat& a) {
  if (!is_invertible(a)) throw non_invertible("intersection_numbers: not in GL");
  const int n = a.rows();
  std::vector<std::vector<int>> len(n + 1, std::vector<int>(n + 1, 0));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) len[i][j] = intersection_length(a, i, j);
  IntersectionMatrix out{n, std::vector<int>(static_cast<size_t>(n) * n, 0)};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      out.r[static_cast<size_t>(i - 1) * n + (j - 1)] =
          len[i][j] - len[i - 1][j] - len[i][j - 1] + len[i - 1][j - 1];
  return out;
}

IntersectionProfile intersection_profile(const Mat& a) {
  if (!is_invertible(a)) throw non_invertible("intersection_profile: not in GL");
  const Ring& R = a.ring();
  const int n = a.rows();
  IntersectionProfile out;
  out.n = n;
  out.table.resize(static_cast<size_t>(n + 1) * (n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (i == 0 || j == 0) continue; // zero module
      // F^j meet F_0^i = { N u : N u = E v }, via the kernel of [N | E]
      Mat N(R, n, j);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < j; ++c) N.set(r, c, a.at(r, c));
      Mat E(R, n, i);
      for (int c = 0; c < i; ++c) E.set(c, c, R.one());
      Mat K = kernel(hconcat(N, E));
      Mat Ku(R, j, K.cols());
      for (int r = 0; r < j; ++r)
        for (int c = 0; c < K.cols(); ++c) Ku.set(r, c, K.at(r, c));
      out.table[static_cast<size_t>(i) * (n + 1) + j] = module_type(mat_mul(N, Ku));
    }
  return out;
}

std::pair<Mat, Mat> block_reduce(const Mat& a, int n1, int n2) {
  const Ring& R = a.ring();
  const int n = a.rows();
  if (a.cols() != n || n1 + n2 != n || n1 < 1 || n2 < 1)
    throw error("block_reduce: need square alpha with n = n1 + n2");
  auto block = [&](int r0, int c0, int rs, int cs) {
    Mat m(R, rs, cs);
    for (int r = 0; r < rs; ++r)
      for (int c = 0; c < cs; ++c) m.set(r, c, a.at(r0 + r, c0 + c));
    return m;
  };
  Mat x1 = block(0, 0, n1, n2);
  Mat a1 = block(0, n2, n1, n1);
  Mat a2 = block(n1, 0, n2, n2);
  Mat x2 = block(n1, n2, n2, n1);
  if (!is_invertible(a2))
    throw block_not_invertible("block_reduce: lower-left block not invertible");
  return {a2, mat_sub(a1, mat_mul(x1, mat_mul(inverse(a2), x2)))};
}

Mat bruhat_normal_form(const Mat& a) {
  if (!is_invertible(a)) throw non_invertible("bruhat_normal_form: not in GL");
  const Ring& R = a.ring();
  const int n = a.rows();
  Mat T = a;
  // right-Borel column reduction; pivot of column j is the lowest unit row
  std::vector<int> piv(n, -1);
  for (int j = 0; j < n; ++j) {
    for (int jj = 0; jj < j; ++jj) {
      Elem c = T.at(piv[jj], j);
      if (!R.is_zero(c))
        for (int r = 0; r < n; ++r) T.set(r, j, R.sub(T.at(r, j), R.mul(c, T.at(r, jj))));
    }
    for (int r = n - 1; r >= 0; --r)
      if (R.is_unit(T.at(r, j))) {
        piv[j] = r;
        break;
      }
    if (piv[j] < 0) throw non_invertible("bruhat_normal_form: no unit pivot (bug)");
    Elem u = R.inv(T.at(piv[j], j));
    if (!(u == R.one()))
      for (int r = 0; r < n; ++r) T.set(r, j, R.mul(u, T.at(r, j)));
  }
  // left-Borel pass: clear (piv[j'], j) with j' > j and piv[j'] < piv[j],
  // columns processed right to left so the dirt lands in columns not yet done
  for (int j = n - 1; j >= 0; --j)
    for (int jp = j + 1; jp < n; ++jp)
      if (piv[jp] < piv[j]) {
        Elem f = T.at(piv[jp], j);
        if (!R.is_zero(f))
          for (int c = 0; c < n; ++c)
            T.set(piv[jp], c, R.sub(T.at(piv[jp], c), R.mul(f, T.at(piv[j], c))));
      }
  return T;
}

} // namespace bgb
