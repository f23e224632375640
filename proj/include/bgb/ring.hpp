#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bgb/errors.hpp"

namespace bgb {

enum class Flavor { Zpk, FqTk };

// One element of a finite chain ring, stored as its canonical code.
//
// Zpk : code is the least nonnegative residue in [0, p^k).
// FqTk: code packs the coefficient vector (c_0,...,c_{k-1}) base p,
//       code = sum c_i p^i, so code p stands for t in both flavors.
struct Elem {
  uint32_t code = 0;
  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

// A finite chain ring A of length k with residue field of prime order q = p:
// either Z/p^k (uniformizer p) or F_p[t]/t^k (uniformizer t).
//
// Ring is an immutable value; arithmetic is pure and thread-safe. Small rings
// carry shared lookup tables for the hot paths.
class Ring {
public:
  static Ring make(Flavor f, uint64_t p, int k);
  static Ring zpk(uint64_t p, int k) { return make(Flavor::Zpk, p, k); }
  static Ring fqtk(uint64_t q, int k) { return make(Flavor::FqTk, q, k); }

  // "zpk:p=2,k=3" or "fqtk:q=3,k=2"
  static Ring parse(std::string_view spec);
  std::string to_string() const;

  Flavor flavor() const { return flavor_; }
  uint32_t p() const { return p_; }
  uint32_t q() const { return p_; }
  int k() const { return k_; }
  uint32_t size() const { return size_; }
  uint64_t num_units() const;

  bool operator==(const Ring& o) const {
    return flavor_ == o.flavor_ && p_ == o.p_ && k_ == o.k_;
  }

  Elem zero() const { return {0}; }
  Elem one() const { return {1}; }
  Elem pi(int r = 1) const; // pi^r; zero when r >= k
  Elem elem(uint64_t code) const;
  Elem from_int(int64_t v) const; // image of the integer v in A

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const; // throws non_unit
  Elem pow(Elem a, uint64_t e) const;

  // v(x) = max r with x in (pi^r); v(0) = k
  int val(Elem a) const;
  bool is_zero(Elem a) const { return a.code == 0; }
  bool is_unit(Elem a) const;

  // x = pi^v(x) * unit_part(x); requires x != 0
  Elem unit_part(Elem a) const;
  // quotient c with c*b = a; requires b != 0 and val(a) >= val(b)
  Elem divide_exact(Elem a, Elem b) const;

  // image of a in the quotient A_m = A/pi^m, as a code < p^m
  Elem reduce(Elem a, int m) const;
  Ring quotient(int m) const; // the ring A_m, 1 <= m <= k

  // deterministic (ascending code) enumerations
  std::vector<Elem> elements() const;
  std::vector<Elem> units() const;
  std::vector<Elem> nonunits() const;

  // |A_m^x| and |A_m^{x,delta}| = #{a unit in A_m : v(a-1) = delta}.
  // Closed forms; the tests check them against enumeration.
  static uint64_t unit_count(uint64_t q, int m);
  static uint64_t units_with_delta_count(uint64_t q, int m, int delta);
  uint64_t unit_count(int m) const { return unit_count(p_, m); }
  uint64_t units_with_delta_count(int m, int delta) const {
    return units_with_delta_count(p_, m, delta);
  }

  // element text: decimal for Zpk, polynomial in t ("1+2t", "t^2") for FqTk
  std::string elem_to_string(Elem a) const;
  Elem parse_elem(std::string_view s) const;

  // raw table access for hot loops; null when the ring is above the table cap
  const uint16_t* add_table() const;
  const uint16_t* mul_table() const;
  const uint16_t* inv_table() const;
  const uint16_t* neg_table() const;
  const uint8_t* val_table() const;

private:
  Ring() = default;

  struct Tables {
    std::vector<uint16_t> add, mul;
    std::vector<uint16_t> inv; // 0 for non-units
    std::vector<uint16_t> neg;
    std::vector<uint8_t> val;
  };

  Elem add_direct(Elem, Elem) const;
  Elem mul_direct(Elem, Elem) const;
  Elem inv_direct(Elem) const;
  int val_direct(Elem) const;

  Flavor flavor_ = Flavor::Zpk;
  uint32_t p_ = 0;
  int k_ = 0;
  uint32_t size_ = 0;
  std::shared_ptr<const Tables> t_; // null above the table size cap
};

uint64_t ipow(uint64_t base, unsigned exp);
bool is_prime(uint64_t n);

} // namespace bgb
