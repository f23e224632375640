#include "bgb/classify.hpp"

#include <algorithm>

namespace bgb {

// ---- n = 2 ----

N2Label classify_n2(const Mat& a) {
  if (a.rows() != 2 || a.cols() != 2 || !is_invertible(a))
    throw non_invertible("classify_n2: need an invertible 2x2 matrix");
  Perm w = permutation_invariant(a);
  if (!w.is_identity()) return {0};
  return {intersection_length(a, 1, 1)};
}

Mat rep_n2(const Ring& r, const N2Label& label) {
  if (label.r < 0 || label.r > r.k()) throw error("rep_n2: r out of range");
  Mat m = Mat::identity(r, 2);
  m.set(1, 0, r.pi(label.r));
  return m;
}

// ---- one-unit-corner 2x2 ----

namespace {

void require_m2(const Mat& beta) {
  const Ring& r = beta.ring();
  if (beta.rows() != 2 || beta.cols() != 2 || !r.is_unit(beta.at(0, 1)) ||
      r.is_unit(beta.at(0, 0)) || r.is_unit(beta.at(1, 0)) || r.is_unit(beta.at(1, 1)))
    throw not_in_m2("expected a 2x2 matrix whose only unit entry is the top-right one");
}

// the unit carried to the bottom-left slot when the other three entries are
// scaled to exact powers of pi
Elem standard_unit(const Ring& r, Elem x, Elem u, Elem y, Elem z) {
  return r.mul(r.mul(u, r.unit_part(y)),
               r.inv(r.mul(r.unit_part(x), r.unit_part(z))));
}

} // namespace

M2Std standard_form_m2(const Mat& beta) {
  require_m2(beta);
  const Ring& r = beta.ring();
  const int k = r.k();
  Elem x = beta.at(0, 0), u = beta.at(0, 1), y = beta.at(1, 0), z = beta.at(1, 1);
  const int vx = r.val(x), j = r.val(y), vz = r.val(z);
  if (j == k) return {vx, k, vz, std::nullopt};
  // a bottom-left entry of minimal valuation clears whichever of the other
  // corners it divides
  const bool clear_x = vx >= j, clear_z = vz >= j;
  if (clear_x && clear_z) return {k, j, k, std::nullopt};
  if (clear_x) return {k, j, vz, std::nullopt};
  if (clear_z) return {vx, j, k, std::nullopt};
  return {vx, j, vz, standard_unit(r, x, u, y, z)};
}

int m2_residue_modulus(int k, const M2Label& label) {
  const int K = k - label.j;
  const int eps = std::min({label.j - label.i, label.j - label.l, label.i, label.l});
  if (label.kind == M2Label::Kind::Generic) return std::min(eps, K);
  if (label.kind == M2Label::Kind::Special) return std::min(eps + label.delta, K);
  return 0;
}

M2Label classify_m2(const Mat& beta) {
  const Ring& r = beta.ring();
  const int k = r.k();
  M2Std s = standard_form_m2(beta);
  if (!s.a) return {M2Label::Kind::Discrete, s.i, s.j, s.l, 0, 0};
  M2Label label;
  label.i = s.i;
  label.j = s.j;
  label.l = s.l;
  const int K = k - s.j;
  if (s.i + s.l != s.j) {
    label.kind = M2Label::Kind::Generic;
    label.a_code = r.reduce(*s.a, m2_residue_modulus(k, label)).code;
  } else {
    label.kind = M2Label::Kind::Special;
    label.delta = std::min(r.val(r.sub(*s.a, r.one())), K);
    label.a_code = r.reduce(*s.a, m2_residue_modulus(k, label)).code;
  }
  return label;
}

Mat rep_m2(const Ring& r, const M2Label& label) {
  const int k = r.k();
  auto in_range = [&](int v) { return v >= 1 && v <= k; };
  if (!in_range(label.i) || !in_range(label.j) || !in_range(label.l))
    throw error("rep_m2: valuations out of range");
  Mat m(r, 2, 2);
  m.set(0, 0, r.pi(label.i));
  m.set(0, 1, r.one());
  m.set(1, 1, r.pi(label.l));
  if (label.kind == M2Label::Kind::Discrete) {
    const bool ok = (label.j == k) || (label.i == k && label.l == k) ||
                    (label.i < label.j && label.l == k) ||
                    (label.l < label.j && label.i == k);
    if (!ok) throw error("rep_m2: not a discrete valuation triple");
    m.set(1, 0, r.pi(label.j));
    return m;
  }
  if (!(label.j < k && label.j > label.i && label.j > label.l))
    throw error("rep_m2: need k > j > max(i, l)");
  Elem a = r.elem(label.a_code); // canonical lift of the residue
  if (!r.is_unit(a)) throw error("rep_m2: residue is not a unit");
  if (label.kind == M2Label::Kind::Special &&
      std::min(r.val(r.sub(a, r.one())), k - label.j) != label.delta)
    throw error("rep_m2: residue inconsistent with delta");
  m.set(1, 0, r.mul(r.pi(label.j), a));
  return m;
}

std::vector<M2Label> enumerate_labels_m2(const Ring& r) {
  const int k = r.k();
  std::vector<M2Label> out;
  for (int i = 1; i <= k; ++i)
    for (int l = 1; l <= k; ++l) out.push_back({M2Label::Kind::Discrete, i, k, l, 0, 0});
  for (int j = 1; j < k; ++j) out.push_back({M2Label::Kind::Discrete, k, j, k, 0, 0});
  for (int j = 2; j < k; ++j)
    for (int i = 1; i < j; ++i) out.push_back({M2Label::Kind::Discrete, i, j, k, 0, 0});
  for (int j = 2; j < k; ++j)
    for (int l = 1; l < j; ++l) out.push_back({M2Label::Kind::Discrete, k, j, l, 0, 0});
  for (int j = 2; j < k; ++j)
    for (int i = 1; i < j; ++i)
      for (int l = 1; l < j; ++l) {
        const int K = k - j;
        if (i + l != j) {
          M2Label proto{M2Label::Kind::Generic, i, j, l, 0, 0};
          Ring q = r.quotient(m2_residue_modulus(k, proto));
          for (Elem a : q.units()) {
            proto.a_code = a.code;
            out.push_back(proto);
          }
        } else {
          // delta <= min(eps+delta, K) always, so the valuation of a-1 in the
          // residue ring pins delta exactly (delta = modulus forces a = 1)
          for (int delta = 0; delta <= K; ++delta) {
            M2Label proto{M2Label::Kind::Special, i, j, l, delta, 0};
            Ring q = r.quotient(m2_residue_modulus(k, proto));
            for (Elem a : q.units())
              if (q.val(q.sub(a, q.one())) == delta) {
                proto.a_code = a.code;
                out.push_back(proto);
              }
          }
        }
      }
  return out;
}

unsigned long long count_m2(uint64_t q, int k) {
  unsigned long long total = static_cast<unsigned long long>(k) * k; // j = k
  total += static_cast<unsigned long long>(k - 1);                   // i = l = k, j < k
  for (int j = 2; j < k; ++j) total += 2ull * (j - 1);               // one corner cleared
  for (int j = 2; j < k; ++j)
    for (int i = 1; i < j; ++i)
      for (int l = 1; l < j; ++l) {
        const int K = k - j;
        const int eps = std::min({j - i, j - l, i, l});
        if (i + l != j) {
          total += Ring::unit_count(q, std::min(eps, K));
        } else {
          for (int delta = 0; delta <= K; ++delta) {
            const int m = std::min(eps + delta, K);
            total += Ring::units_with_delta_count(q, m, std::min(delta, m));
          }
        }
      }
  return total;
}

// ---- equivalence of the two standard forms ----

bool bmb_equiv(const Ring& ring, int i, int j, int l, Elem a, Elem a_prime) {
  const int k = ring.k();
  if (!(k > j && j > std::max(i, l) && std::min(i, l) > 0))
    throw error("bmb_equiv: need k > j > max(i,l) >= min(i,l) > 0");
  const int K = k - j;
  Ring Rk = ring.quotient(K);
  Elem ar{ring.reduce(a, K)}, br{ring.reduce(a_prime, K)};
  if (!Rk.is_unit(ar) || !Rk.is_unit(br)) throw non_unit("bmb_equiv: residues must be units");
  const int eps = std::min({j - i, j - l, i, l});
  if (i + l != j) {
    const int m = std::min(eps, K);
    return ring.reduce(a, m) == ring.reduce(a_prime, m);
  }
  const int da = Rk.val(Rk.sub(ar, Rk.one()));
  const int db = Rk.val(Rk.sub(br, Rk.one()));
  if (da != db) return false;
  const int m = std::min(eps + da, K);
  return ring.reduce(a, m) == ring.reduce(a_prime, m);
}

// ---- n = 3 ----

const char* fiber_name(Fiber f) {
  switch (f) {
    case Fiber::One: return "1";
    case Fiber::S1: return "s1";
    case Fiber::S2: return "s2";
    case Fiber::S1S2: return "s1s2";
    case Fiber::S2S1: return "s2s1";
    case Fiber::W0: return "w0";
  }
  return "?";
}

Perm fiber_perm(Fiber f) {
  switch (f) {
    case Fiber::One: return Perm({0, 1, 2});
    case Fiber::S1: return Perm({1, 0, 2});
    case Fiber::S2: return Perm({0, 2, 1});
    case Fiber::S1S2: return Perm({1, 2, 0});
    case Fiber::S2S1: return Perm({2, 0, 1});
    case Fiber::W0: return Perm({2, 1, 0});
  }
  throw error("fiber_perm: bad fiber");
}

Fiber fiber_of(const Perm& w) {
  if (w.n() != 3) throw error("fiber_of: n = 3 only");
  for (Fiber f : {Fiber::One, Fiber::S1, Fiber::S2, Fiber::S1S2, Fiber::S2S1, Fiber::W0})
    if (fiber_perm(f) == w) return f;
  throw error("fiber_of: not a permutation of 3 letters");
}

std::string M2Label::to_string() const {
  std::string s = "(i=" + std::to_string(i) + ",j=" + std::to_string(j) +
                  ",l=" + std::to_string(l);
  if (kind == Kind::Generic) s += ",a=" + std::to_string(a_code);
  if (kind == Kind::Special)
    s += ",delta=" + std::to_string(delta) + ",a=" + std::to_string(a_code);
  return s + ")";
}

std::string N3Label::to_string() const {
  std::string s = fiber_name(fiber);
  switch (fiber) {
    case Fiber::One: return s + m2.to_string();
    case Fiber::S1:
    case Fiber::S2:
      return s + "(i=" + std::to_string(i) + ",j=" + std::to_string(j) + ")";
    case Fiber::S1S2:
    case Fiber::S2S1: return s + "(i=" + std::to_string(i) + ")";
    case Fiber::W0: return s;
  }
  return s;
}

N3Label classify_n3(const Mat& a) {
  if (a.rows() != 3 || a.cols() != 3 || !is_invertible(a))
    throw non_invertible("classify_n3: need an invertible 3x3 matrix");
  const Ring& r = a.ring();
  Perm w = permutation_invariant(a);
  N3Label label;
  label.fiber = fiber_of(w);
  switch (label.fiber) {
    case Fiber::One:
      // the trivial fiber is determined by the lower-left 2x2 block, which the
      // three-by-three triangular action moves exactly by the 2x2 one
      label.m2 = classify_m2(lower_left_submatrix(a, 1, 2));
      break;
    case Fiber::S1: {
      Mat t = bruhat_normal_form(a);
      label.i = r.val(t.at(2, 0));
      label.j = r.val(t.at(2, 1));
      break;
    }
    case Fiber::S2: {
      Mat t = bruhat_normal_form(a);
      label.i = r.val(t.at(1, 0));
      label.j = r.val(t.at(2, 0));
      break;
    }
    case Fiber::S1S2: {
      Mat t = bruhat_normal_form(a);
      label.i = r.val(t.at(2, 0));
      break;
    }
    case Fiber::S2S1: {
      Mat t = bruhat_normal_form(a);
      label.i = r.val(t.at(1, 1));
      break;
    }
    case Fiber::W0: break;
  }
  return label;
}

Mat rep_of_label(const Ring& r, const N3Label& label) {
  auto in_range = [&](int v) { return v >= 1 && v <= r.k(); };
  Mat m(r, 3, 3);
  switch (label.fiber) {
    case Fiber::One: {
      Mat block = rep_m2(r, label.m2);
      m.set(0, 0, r.one());
      m.set(1, 0, block.at(0, 0));
      m.set(1, 1, r.one()); // the block's unit corner sits on the diagonal
      m.set(2, 0, block.at(1, 0));
      m.set(2, 1, block.at(1, 1));
      m.set(2, 2, r.one());
      return m;
    }
    case Fiber::S1:
      if (!in_range(label.i) || !in_range(label.j)) throw error("rep_of_label: bad payload");
      m.set(0, 1, r.one());
      m.set(1, 0, r.one());
      m.set(2, 0, r.pi(label.i));
      m.set(2, 1, r.pi(label.j));
      m.set(2, 2, r.one());
      return m;
    case Fiber::S2:
      if (!in_range(label.i) || !in_range(label.j)) throw error("rep_of_label: bad payload");
      m.set(0, 0, r.one());
      m.set(1, 0, r.pi(label.i));
      m.set(1, 2, r.one());
      m.set(2, 0, r.pi(label.j));
      m.set(2, 1, r.one());
      return m;
    case Fiber::S1S2:
      if (!in_range(label.i)) throw error("rep_of_label: bad payload");
      m.set(0, 2, r.one());
      m.set(1, 0, r.one());
      m.set(2, 0, r.pi(label.i));
      m.set(2, 1, r.one());
      return m;
    case Fiber::S2S1:
      if (!in_range(label.i)) throw error("rep_of_label: bad payload");
      m.set(0, 1, r.one());
      m.set(1, 1, r.pi(label.i));
      m.set(1, 2, r.one());
      m.set(2, 0, r.one());
      return m;
    case Fiber::W0:
      m.set(0, 2, r.one());
      m.set(1, 1, r.one());
      m.set(2, 0, r.one());
      return m;
  }
  throw error("rep_of_label: bad fiber");
}

std::vector<N3Label> enumerate_labels_n3(const Ring& r) {
  const int k = r.k();
  std::vector<N3Label> out;
  for (const M2Label& m2 : enumerate_labels_m2(r)) {
    N3Label l;
    l.fiber = Fiber::One;
    l.m2 = m2;
    out.push_back(l);
  }
  for (Fiber f : {Fiber::S1, Fiber::S2})
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j) {
        N3Label l;
        l.fiber = f;
        l.i = i;
        l.j = j;
        out.push_back(l);
      }
  for (Fiber f : {Fiber::S1S2, Fiber::S2S1})
    for (int i = 1; i <= k; ++i) {
      N3Label l;
      l.fiber = f;
      l.i = i;
      out.push_back(l);
    }
  N3Label w0;
  w0.fiber = Fiber::W0;
  out.push_back(w0);
  return out;
}

std::vector<unsigned long long> fiber_counts_n3(uint64_t q, int k) {
  const unsigned long long k2 = static_cast<unsigned long long>(k) * k;
  return {count_m2(q, k), k2, k2, static_cast<unsigned long long>(k),
          static_cast<unsigned long long>(k), 1ull};
}

unsigned long long count_n3(uint64_t q, int k) {
  unsigned long long total = 0;
  for (unsigned long long c : fiber_counts_n3(q, k)) total += c;
  return total;
}

StratumWitness max_q_exponent_witness(int k) {
  StratumWitness best;
  for (int j = 2; j < k; ++j)
    for (int i = 1; i < j; ++i)
      for (int l = 1; l < j; ++l) {
        const int deg = std::min(std::min({j - i, j - l, i, l}), k - j);
        if (deg > best.exponent) best = {i, j, l, deg};
      }
  return best;
}

int max_q_exponent(int k) {
  if (k < 2) throw error("max_q_exponent: k >= 2");
  return max_q_exponent_witness(k).exponent;
}

std::vector<GrowthRow> growth_table(uint64_t q, int k_max) {
  std::vector<GrowthRow> rows;
  for (int k = 1; k <= k_max; ++k) {
    GrowthRow row;
    row.k = k;
    row.count = count_n3(q, k);
    row.floor_k3 = k / 3;
    row.ceil_k3 = (k + 2) / 3;
    row.witness = k >= 2 ? max_q_exponent_witness(k) : StratumWitness{};
    row.realized = row.witness.exponent;
    rows.push_back(row);
  }
  return rows;
}

} // namespace bgb
