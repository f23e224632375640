#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bgb/invariants.hpp"
#include "bgb/matrix.hpp"

namespace bgb {

struct OracleOpts {
  long long budget = 2'000'000; // maximum admissible |G/B|
  int threads = 1;              // frontier expansion workers; output independent of this
};

// Right-Borel column reduction to the unique coset normal form: column j gets
// a 1 in its pivot row (the lowest row carrying a unit after clearing previous
// pivot rows) and zeros in the pivot rows of earlier columns. Constant on
// cosets gB, distinct across cosets; both properties are enforced by tests.
Mat canonical_flag(const Mat& g);

// number of complete flags over the q-element field
long long flag_count_field(uint64_t q, int n);
// |G/B| = N1(q,n) * q^((k-1) n (n-1) / 2)
long long flag_count(const Ring& r, int n);

// all flags, as canonical matrices in ascending serialized order
std::vector<Mat> enumerate_flags(const Ring& r, int n, long long budget = 2'000'000);

struct OrbitReport {
  explicit OrbitReport(Ring r) : ring(std::move(r)) {}
  Ring ring;
  int n = 0;
  long long num_flags = 0;
  std::vector<Mat> representatives; // per orbit: the minimal canonical flag
  std::vector<long long> orbit_sizes;
  std::vector<std::pair<Perm, long long>> fiber_counts; // N(w), sorted by w
  long long num_cosets() const { return static_cast<long long>(representatives.size()); }
  long long fiber_count(const Perm& w) const;
  // byte-stable text used by the determinism tests
  std::string serialize() const;
};

// Double cosets as orbits of the left B-action on G/B, by breadth-first
// closure over the elementary generators {I + a E_uv : u < v, a != 0} and the
// one-spot unit diagonals.
OrbitReport double_cosets(const Ring& r, int n, const OracleOpts& opts = {});

// Orbit-membership partition of a few explicit invertible matrices: entries
// with equal class index lie in the same double coset.
std::vector<int> flag_class_partition(const std::vector<Mat>& seeds,
                                      const OracleOpts& opts = {});

// same B x B orbit? (both invertible, or both in the 2x2 one-unit-corner set)
bool equiv(const Mat& a, const Mat& b, const OracleOpts& opts = {});

// ---- the 2x2 one-unit-corner ambient action (lower-left blocks of the
// ---- trivial-permutation fiber at n = 3) ----

bool is_m2_pattern(const Mat& m);

// lexicographically least member of the two-sided diagonal-scaling orbit
Mat m2_torus_canonical(const Mat& m);

// class partition of explicit seeds under the full upper-triangular action,
// computed by BFS on torus-canonical states
std::vector<int> m2_class_partition(const std::vector<Mat>& seeds);
bool equiv_m2(const Mat& a, const Mat& b);

// validation counterparts (exhaustive over the whole pattern set)
long long m2_orbit_count_torus(const Ring& r);
long long m2_orbit_count_raw(const Ring& r);
// per-matrix class ids over all pattern matrices in enumeration order
std::vector<int> m2_all_classes_torus(const Ring& r);
std::vector<int> m2_all_classes_raw(const Ring& r);
std::vector<Mat> enumerate_m2(const Ring& r);

// ground-truth fallback: union-find over two-sided generator moves on raw
// invertible matrices; only for tiny groups
long long double_coset_count_unionfind(const Ring& r, int n, long long max_group = 200'000);

} // namespace bgb
