#include "bgb/matrix.hpp"

#include <algorithm>

namespace bgb {

bool Partition::contains(const Partition& other) const {
  if (other.parts.size() > parts.size()) return false;
  for (size_t i = 0; i < other.parts.size(); ++i)
    if (other.parts[i] > parts[i]) return false;
  return true;
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s + ")";
}

Mat::Mat(Ring ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      e_(static_cast<size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) throw error("matrix shape must be nonnegative");
}

Mat Mat::identity(const Ring& r, int n) {
  Mat m(r, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, r.one());
  return m;
}

Mat Mat::from_codes(const Ring& r, int rows, int cols,
                    std::initializer_list<uint32_t> codes) {
  Mat m(r, rows, cols);
  if (static_cast<int>(codes.size()) != rows * cols) throw error("from_codes: size mismatch");
  int i = 0;
  for (uint32_t c : codes) m.e_[i++] = r.elem(c);
  return m;
}

std::string Mat::to_string() const {
  std::string s;
  for (int r = 0; r < rows_; ++r) {
    if (r) s += ';';
    for (int c = 0; c < cols_; ++c) {
      if (c) s += ',';
      s += ring_.elem_to_string(at(r, c));
    }
  }
  return s;
}

Mat Mat::parse(const Ring& ring, std::string_view text) {
  std::vector<std::vector<Elem>> rows;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t semi = text.find(';', pos);
    std::string_view row =
        text.substr(pos, semi == std::string_view::npos ? semi : semi - pos);
    std::vector<Elem> entries;
    size_t rp = 0;
    while (rp <= row.size()) {
      size_t comma = row.find(',', rp);
      std::string_view cell =
          row.substr(rp, comma == std::string_view::npos ? comma : comma - rp);
      entries.push_back(ring.parse_elem(cell));
      if (comma == std::string_view::npos) break;
      rp = comma + 1;
    }
    rows.push_back(std::move(entries));
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  if (rows.empty()) throw parse_error("empty matrix");
  size_t cols = rows[0].size();
  for (auto& r : rows)
    if (r.size() != cols) throw parse_error("ragged matrix rows");
  Mat m(ring, static_cast<int>(rows.size()), static_cast<int>(cols));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m.set(r, c, rows[r][c]);
  return m;
}

namespace {

void check_same_ring(const Mat& a, const Mat& b, const char* op) {
  if (!(a.ring() == b.ring())) throw ring_mismatch(std::string(op) + ": ring mismatch");
}

void swap_rows(Mat& m, int r1, int r2) {
  if (r1 == r2) return;
  for (int c = 0; c < m.cols(); ++c) {
    Elem t = m.at(r1, c);
    m.set(r1, c, m.at(r2, c));
    m.set(r2, c, t);
  }
}

void swap_cols(Mat& m, int c1, int c2) {
  if (c1 == c2) return;
  for (int r = 0; r < m.rows(); ++r) {
    Elem t = m.at(r, c1);
    m.set(r, c1, m.at(r, c2));
    m.set(r, c2, t);
  }
}

// row r1 -= f * row r2
void row_submul(Mat& m, int r1, int r2, Elem f) {
  const Ring& R = m.ring();
  for (int c = 0; c < m.cols(); ++c)
    m.set(r1, c, R.sub(m.at(r1, c), R.mul(f, m.at(r2, c))));
}

void col_submul(Mat& m, int c1, int c2, Elem f) {
  const Ring& R = m.ring();
  for (int r = 0; r < m.rows(); ++r)
    m.set(r, c1, R.sub(m.at(r, c1), R.mul(f, m.at(r, c2))));
}

void scale_row(Mat& m, int r, Elem u) {
  const Ring& R = m.ring();
  for (int c = 0; c < m.cols(); ++c) m.set(r, c, R.mul(u, m.at(r, c)));
}

} // namespace

Mat mat_mul(const Mat& a, const Mat& b) {
  check_same_ring(a, b, "mat_mul");
  if (a.cols() != b.rows()) throw error("mat_mul: shape mismatch");
  const Ring& R = a.ring();
  Mat out(R, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Elem s = R.zero();
      for (int l = 0; l < a.cols(); ++l) s = R.add(s, R.mul(a.at(i, l), b.at(l, j)));
      out.set(i, j, s);
    }
  return out;
}

Mat mat_add(const Mat& a, const Mat& b) {
  check_same_ring(a, b, "mat_add");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw error("mat_add: shape mismatch");
  Mat out(a.ring(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.set(i, j, a.ring().add(a.at(i, j), b.at(i, j)));
  return out;
}

Mat mat_sub(const Mat& a, const Mat& b) {
  check_same_ring(a, b, "mat_sub");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw error("mat_sub: shape mismatch");
  Mat out(a.ring(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.set(i, j, a.ring().sub(a.at(i, j), b.at(i, j)));
  return out;
}

Smith smith(const Mat& a) {
  const Ring& R = a.ring();
  const int n = a.rows(), m = a.cols(), k = R.k();
  Smith s{Mat::identity(R, n), a, Mat::identity(R, m), {}};
  Mat& D = s.d;
  Mat& U = s.u;
  Mat& V = s.v;
  for (int t = 0; t < std::min(n, m); ++t) {
    int br = -1, bc = -1, bv = k;
    for (int r = t; r < n; ++r)
      for (int c = t; c < m; ++c)
        if (int v = R.val(D.at(r, c)); v < bv) {
          bv = v;
          br = r;
          bc = c;
        }
    if (bv >= k) break; // remaining block is zero
    swap_rows(D, t, br);
    swap_rows(U, t, br);
    swap_cols(D, t, bc);
    swap_cols(V, t, bc);
    // normalize the pivot to an exact power of pi
    Elem scale = R.inv(R.unit_part(D.at(t, t)));
    if (!(scale == R.one())) {
      scale_row(D, t, scale);
      scale_row(U, t, scale);
    }
    Elem piv = D.at(t, t);
    // the pivot has minimal valuation, so it divides every remaining entry
    for (int r = t + 1; r < n; ++r)
      if (!R.is_zero(D.at(r, t))) {
        Elem f = R.divide_exact(D.at(r, t), piv);
        row_submul(D, r, t, f);
        row_submul(U, r, t, f);
      }
    for (int c = t + 1; c < m; ++c)
      if (!R.is_zero(D.at(t, c))) {
        Elem f = R.divide_exact(D.at(t, c), piv);
        col_submul(D, c, t, f);
        col_submul(V, c, t, f);
      }
    s.vals.push_back(bv);
  }
  return s;
}

Partition module_type(const Mat& a) {
  Smith s = smith(a);
  Partition out;
  for (int v : s.vals) out.parts.push_back(a.ring().k() - v); // vals ascending => parts descending
  return out;
}

Mat kernel(const Mat& a) {
  const Ring& R = a.ring();
  const int m = a.cols(), k = R.k();
  Smith s = smith(a);
  std::vector<int> gen_cols; // columns of V * (generators of ker D)
  std::vector<Elem> gen_scale;
  int rank = static_cast<int>(s.vals.size());
  for (int t = 0; t < rank; ++t)
    if (s.vals[t] > 0) {
      gen_cols.push_back(t);
      gen_scale.push_back(R.pi(k - s.vals[t]));
    }
  for (int t = rank; t < m; ++t) {
    gen_cols.push_back(t);
    gen_scale.push_back(R.one());
  }
  Mat out(R, m, static_cast<int>(gen_cols.size()));
  for (size_t g = 0; g < gen_cols.size(); ++g)
    for (int r = 0; r < m; ++r)
      out.set(r, static_cast<int>(g), R.mul(gen_scale[g], s.v.at(r, gen_cols[g])));
  return out;
}

Elem det(const Mat& a) {
  if (a.rows() != a.cols()) throw error("det: square matrices only");
  const Ring& R = a.ring();
  if (a.rows() == 0) return R.one();
  // eliminate with min-valuation pivots, tracking the scaling applied
  Mat D = a;
  const int n = a.rows(), k = R.k();
  Elem unit_factor = R.one(); // det(D_final) = unit_factor * det(a)
  for (int t = 0; t < n; ++t) {
    int br = -1, bc = -1, bv = k;
    for (int r = t; r < n; ++r)
      for (int c = t; c < n; ++c)
        if (int v = R.val(D.at(r, c)); v < bv) {
          bv = v;
          br = r;
          bc = c;
        }
    if (bv >= k) return R.zero();
    if (br != t) {
      swap_rows(D, t, br);
      unit_factor = R.neg(unit_factor);
    }
    if (bc != t) {
      swap_cols(D, t, bc);
      unit_factor = R.neg(unit_factor);
    }
    Elem piv = D.at(t, t);
    for (int r = t + 1; r < n; ++r)
      if (!R.is_zero(D.at(r, t))) row_submul(D, r, t, R.divide_exact(D.at(r, t), piv));
  }
  Elem d = R.one();
  for (int t = 0; t < n; ++t) d = R.mul(d, D.at(t, t));
  return R.mul(d, R.inv(unit_factor));
}

bool is_invertible(const Mat& a) {
  return a.rows() == a.cols() && a.ring().is_unit(det(a));
}

Mat inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw non_invertible("inverse: square matrices only");
  const Ring& R = a.ring();
  const int n = a.rows();
  // Gauss-Jordan on [a | I]; a is invertible iff every pivot is a unit
  Mat D = a;
  Mat X = Mat::identity(R, n);
  for (int t = 0; t < n; ++t) {
    int piv_row = -1;
    for (int r = t; r < n; ++r)
      if (R.is_unit(D.at(r, t))) {
        piv_row = r;
        break;
      }
    if (piv_row < 0) throw non_invertible("inverse: determinant is not a unit");
    swap_rows(D, t, piv_row);
    swap_rows(X, t, piv_row);
    Elem u = R.inv(D.at(t, t));
    scale_row(D, t, u);
    scale_row(X, t, u);
    for (int r = 0; r < n; ++r)
      if (r != t && !R.is_zero(D.at(r, t))) {
        Elem f = D.at(r, t);
        row_submul(D, r, t, f);
        row_submul(X, r, t, f);
      }
  }
  return X;
}

bool is_borel(const Mat& a) {
  if (a.rows() != a.cols()) throw error("is_borel: square matrices only");
  const Ring& R = a.ring();
  for (int r = 0; r < a.rows(); ++r) {
    if (!R.is_unit(a.at(r, r))) return false;
    for (int c = 0; c < r; ++c)
      if (!R.is_zero(a.at(r, c))) return false;
  }
  return true;
}

Mat reduce_mod(const Mat& a, int m) {
  Ring Rm = a.ring().quotient(m);
  Mat out(Rm, a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.set(r, c, a.ring().reduce(a.at(r, c), m));
  return out;
}

Mat reduce_mod_p(const Mat& a) { return reduce_mod(a, 1); }

Mat lower_left_submatrix(const Mat& a, int i, int j) {
  const int n = a.rows();
  if (i < 0 || i > n || j < 0 || j > a.cols())
    throw error("lower_left_submatrix: index out of range");
  Mat out(a.ring(), n - i, j);
  for (int r = i; r < n; ++r)
    for (int c = 0; c < j; ++c) out.set(r - i, c, a.at(r, c));
  return out;
}

Mat hconcat(const Mat& a, const Mat& b) {
  check_same_ring(a, b, "hconcat");
  if (a.rows() != b.rows()) throw error("hconcat: row mismatch");
  Mat out(a.ring(), a.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) out.set(r, c, a.at(r, c));
    for (int c = 0; c < b.cols(); ++c) out.set(r, a.cols() + c, b.at(r, c));
  }
  return out;
}

// ---- random sampling ----

uint64_t Rng::next() { // splitmix64: portable and deterministic
  uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint64_t Rng::below(uint64_t bound) {
  uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

Mat random_mat(const Ring& r, int rows, int cols, Rng& rng) {
  Mat m(r, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, r.elem(rng.below(r.size())));
  return m;
}

Mat random_gl(const Ring& r, int n, Rng& rng) {
  for (;;) {
    Mat m = random_mat(r, n, n, rng);
    if (is_invertible(m)) return m;
  }
}

Mat random_borel(const Ring& r, int n, Rng& rng) {
  std::vector<Elem> units = r.units();
  Mat m(r, n, n);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, units[rng.below(units.size())]);
    for (int j = i + 1; j < n; ++j) m.set(i, j, r.elem(rng.below(r.size())));
  }
  return m;
}

Mat random_gl(const Ring& r, int n, uint64_t seed) {
  Rng rng(seed);
  return random_gl(r, n, rng);
}

Mat random_borel(const Ring& r, int n, uint64_t seed) {
  Rng rng(seed);
  return random_borel(r, n, rng);
}

} // namespace bgb
