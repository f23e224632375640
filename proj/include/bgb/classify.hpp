#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bgb/invariants.hpp"
#include "bgb/matrix.hpp"

namespace bgb {

// ---- n = 2 ----

// r in [0, k]; r = 0 exactly on the fiber over the nontrivial permutation
struct N2Label {
  int r = 0;
  friend bool operator==(const N2Label&, const N2Label&) = default;
  friend auto operator<=>(const N2Label&, const N2Label&) = default;
};

N2Label classify_n2(const Mat& a);
Mat rep_n2(const Ring& r, const N2Label& label);
inline long long count_n2(int k) { return k + 1; }

// ---- the 2x2 one-unit-corner space (trivial fiber of n = 3) ----

// Raw standard-form data: the valuations (i = top-left, j = bottom-left,
// l = bottom-right) of the reduced matrix, with value k for entries that the
// reduction clears to zero, plus the surviving unit when no valuation is k.
struct M2Std {
  int i, j, l;
  std::optional<Elem> a;
};
M2Std standard_form_m2(const Mat& beta); // throws not_in_m2

// Canonical coset label on the one-unit-corner space.
//
// Discrete strata, one coset per valuation triple:
//   j = k with i, l in [1, k];  i < j < k = l;  l < j < k = i;
//   i = l = k with j in [1, k-1].
// Non-discrete strata (k > j > max(i, l) >= min(i, l) > 0) carry a unit
// residue a: modulo pi^min(eps, k-j) when i + l != j (Generic), and modulo
// pi^min(eps+delta, k-j) with the extra invariant delta = v(a - 1) when
// i + l = j (Special), where eps = min(j-i, j-l, i, l).
struct M2Label {
  enum class Kind { Discrete, Generic, Special };
  Kind kind = Kind::Discrete;
  int i = 0, j = 0, l = 0;
  int delta = 0;       // Special only
  uint32_t a_code = 0; // canonical residue code (Generic/Special)
  friend bool operator==(const M2Label&, const M2Label&) = default;
  friend auto operator<=>(const M2Label&, const M2Label&) = default;
  std::string to_string() const;
};

M2Label classify_m2(const Mat& beta);
Mat rep_m2(const Ring& r, const M2Label& label);
std::vector<M2Label> enumerate_labels_m2(const Ring& r);
unsigned long long count_m2(uint64_t q, int k);
// residue modulus of a label's unit датum
int m2_residue_modulus(int k, const M2Label& label);

// The equivalence of the two standard forms alpha(a), alpha(a') with
// valuations (i, j, l): a, a' are units of A_{k-j} (codes reduced mod
// pi^{k-j} internally).
bool bmb_equiv(const Ring& ring, int i, int j, int l, Elem a, Elem a_prime);

// ---- n = 3 ----

enum class Fiber { One, S1, S2, S1S2, S2S1, W0 };
const char* fiber_name(Fiber f); // "1", "s1", "s2", "s1s2", "s2s1", "w0"
Perm fiber_perm(Fiber f);
Fiber fiber_of(const Perm& w); // n = 3 only

// payload per fiber: One -> m2; S1/S2 -> (i, j) in [1,k]^2; S1S2/S2S1 -> i;
// W0 -> nothing
struct N3Label {
  Fiber fiber = Fiber::W0;
  M2Label m2;
  int i = 0, j = 0;
  friend bool operator==(const N3Label&, const N3Label&) = default;
  friend auto operator<=>(const N3Label&, const N3Label&) = default;
  std::string to_string() const;
};

N3Label classify_n3(const Mat& a);
Mat rep_of_label(const Ring& r, const N3Label& label);
std::vector<N3Label> enumerate_labels_n3(const Ring& r);
unsigned long long count_n3(uint64_t q, int k);
// per-fiber closed-form counts, in fiber order One, S1, S2, S1S2, S2S1, W0
std::vector<unsigned long long> fiber_counts_n3(uint64_t q, int k);

// Highest q-degree among the per-stratum cardinalities of the non-discrete
// part; 0 when there are no such strata (k <= 2). Equals floor(k/3) for
// k >= 3: the three gaps i, j-i, k-j sum to k, which pins the maximum of
// min(eps, k-j).
int max_q_exponent(int k);
struct StratumWitness {
  int i = 0, j = 0, l = 0;
  int exponent = 0;
};
StratumWitness max_q_exponent_witness(int k);

struct GrowthRow {
  int k;
  unsigned long long count;
  int floor_k3, ceil_k3, realized;
  StratumWitness witness;
};
std::vector<GrowthRow> growth_table(uint64_t q, int k_max);

} // namespace bgb
