#include "bgb/ring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace bgb {

namespace {
// build tables only for rings small enough that the two size^2 tables stay cheap
constexpr uint32_t kTableCap = 1024;
} // namespace

uint64_t ipow(uint64_t base, unsigned exp) {
  uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Ring Ring::make(Flavor f, uint64_t p, int k) {
  if (!is_prime(p)) throw error("ring: p must be prime, got " + std::to_string(p));
  if (k < 1) throw error("ring: length k must be >= 1, got " + std::to_string(k));
  uint64_t size = 1;
  for (int i = 0; i < k; ++i) {
    size *= p;
    if (size > (1u << 24)) throw error("ring: p^k too large (cap 2^24)");
  }
  Ring r;
  r.flavor_ = f;
  r.p_ = static_cast<uint32_t>(p);
  r.k_ = k;
  r.size_ = static_cast<uint32_t>(size);

  if (size <= kTableCap) {
    auto t = std::make_shared<Tables>();
    t->add.resize(size * size);
    t->mul.resize(size * size);
    t->inv.assign(size, 0);
    t->neg.resize(size);
    t->val.resize(size);
    for (uint32_t a = 0; a < size; ++a) {
      t->val[a] = static_cast<uint8_t>(r.val_direct({a}));
      t->neg[a] = static_cast<uint16_t>(r.neg({a}).code);
      for (uint32_t b = 0; b < size; ++b) {
        t->add[a * size + b] = static_cast<uint16_t>(r.add_direct({a}, {b}).code);
        t->mul[a * size + b] = static_cast<uint16_t>(r.mul_direct({a}, {b}).code);
      }
    }
    for (uint32_t a = 0; a < size; ++a)
      if (t->val[a] == 0) t->inv[a] = static_cast<uint16_t>(r.inv_direct({a}).code);
    r.t_ = std::move(t);
  }
  return r;
}

const uint16_t* Ring::add_table() const { return t_ ? t_->add.data() : nullptr; }
const uint16_t* Ring::mul_table() const { return t_ ? t_->mul.data() : nullptr; }
const uint16_t* Ring::inv_table() const { return t_ ? t_->inv.data() : nullptr; }
const uint16_t* Ring::neg_table() const { return t_ ? t_->neg.data() : nullptr; }
const uint8_t* Ring::val_table() const { return t_ ? t_->val.data() : nullptr; }

Elem Ring::elem(uint64_t code) const {
  if (code >= size_) throw error("elem code out of range");
  return {static_cast<uint32_t>(code)};
}

Elem Ring::from_int(int64_t v) const {
  int64_t m = (flavor_ == Flavor::Zpk) ? static_cast<int64_t>(size_) : p_;
  int64_t r = v % m;
  if (r < 0) r += m;
  return {static_cast<uint32_t>(r)};
}

Elem Ring::pi(int r) const {
  if (r >= k_) return zero();
  if (r < 0) throw error("pi: negative exponent");
  return {static_cast<uint32_t>(ipow(p_, static_cast<unsigned>(r)))};
}

Elem Ring::add_direct(Elem a, Elem b) const {
  if (flavor_ == Flavor::Zpk) {
    uint64_t s = static_cast<uint64_t>(a.code) + b.code;
    if (s >= size_) s -= size_;
    return {static_cast<uint32_t>(s)};
  }
  // digitwise mod p, no carries
  uint32_t out = 0, mult = 1, x = a.code, y = b.code;
  for (int i = 0; i < k_; ++i) {
    out += ((x + y) % p_) * mult;
    x /= p_;
    y /= p_;
    mult *= p_;
  }
  return {out};
}

Elem Ring::neg(Elem a) const {
  if (flavor_ == Flavor::Zpk) return {a.code == 0 ? 0 : size_ - a.code};
  uint32_t out = 0, mult = 1, x = a.code;
  for (int i = 0; i < k_; ++i) {
    uint32_t d = x % p_;
    out += (d == 0 ? 0 : p_ - d) * mult;
    x /= p_;
    mult *= p_;
  }
  return {out};
}

Elem Ring::mul_direct(Elem a, Elem b) const {
  if (flavor_ == Flavor::Zpk)
    return {static_cast<uint32_t>((static_cast<uint64_t>(a.code) * b.code) % size_)};
  // truncated polynomial product
  uint32_t da[32], db[32];
  uint32_t x = a.code, y = b.code;
  for (int i = 0; i < k_; ++i) {
    da[i] = x % p_;
    db[i] = y % p_;
    x /= p_;
    y /= p_;
  }
  uint32_t out = 0, mult = 1;
  for (int i = 0; i < k_; ++i) {
    uint64_t c = 0;
    for (int j = 0; j <= i; ++j) c += static_cast<uint64_t>(da[j]) * db[i - j];
    out += static_cast<uint32_t>(c % p_) * mult;
    mult *= p_;
  }
  return {out};
}

int Ring::val_direct(Elem a) const {
  if (a.code == 0) return k_;
  if (flavor_ == Flavor::Zpk) {
    int v = 0;
    uint32_t x = a.code;
    while (x % p_ == 0) {
      x /= p_;
      ++v;
    }
    return v;
  }
  int v = 0;
  uint32_t x = a.code;
  while (x % p_ == 0) {
    x /= p_;
    ++v;
  }
  return v;
}

Elem Ring::inv_direct(Elem a) const {
  if (val_direct(a) != 0) throw non_unit("inv of a non-unit");
  if (flavor_ == Flavor::Zpk) {
    // extended Euclid against p^k
    int64_t r0 = size_, r1 = a.code, s0 = 0, s1 = 1;
    while (r1 != 0) {
      int64_t qt = r0 / r1;
      int64_t r2 = r0 - qt * r1;
      int64_t s2 = s0 - qt * s1;
      r0 = r1; r1 = r2;
      s0 = s1; s1 = s2;
    }
    int64_t inv = s0 % static_cast<int64_t>(size_);
    if (inv < 0) inv += size_;
    return {static_cast<uint32_t>(inv)};
  }
  // Hensel: invert c_0 mod p, then y <- y(2 - a y) doubles t-adic precision
  uint32_t c0 = a.code % p_;
  uint32_t y0 = 1;
  for (uint32_t e = p_ - 2, b = c0; e; e >>= 1, b = (b * b) % p_)
    if (e & 1) y0 = (y0 * b) % p_;
  Elem y{y0};
  Elem two = from_int(2);
  for (int s = 1; s < k_; s *= 2) y = mul_direct(y, sub(two, mul_direct(a, y)));
  return y;
}

Elem Ring::add(Elem a, Elem b) const {
  if (t_) return {t_->add[a.code * size_ + b.code]};
  return add_direct(a, b);
}

Elem Ring::mul(Elem a, Elem b) const {
  if (t_) return {t_->mul[a.code * size_ + b.code]};
  return mul_direct(a, b);
}

Elem Ring::inv(Elem a) const {
  if (t_) {
    if (t_->val[a.code] != 0) throw non_unit("inv of a non-unit");
    return {t_->inv[a.code]};
  }
  return inv_direct(a);
}

int Ring::val(Elem a) const {
  if (t_) return t_->val[a.code];
  return val_direct(a);
}

bool Ring::is_unit(Elem a) const { return val(a) == 0; }

Elem Ring::pow(Elem a, uint64_t e) const {
  Elem r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Elem Ring::unit_part(Elem a) const {
  if (a.code == 0) throw error("unit_part of zero");
  int v = val(a);
  // codes are base-p positional in both flavors, so dividing the code by p^v
  // strips pi^v exactly
  return {a.code / static_cast<uint32_t>(ipow(p_, static_cast<unsigned>(v)))};
}

Elem Ring::divide_exact(Elem a, Elem b) const {
  if (b.code == 0) throw error("divide_exact by zero");
  if (a.code == 0) return zero();
  int va = val(a), vb = val(b);
  if (va < vb) throw error("divide_exact: valuation too small");
  return mul(mul(pi(va - vb), unit_part(a)), inv(unit_part(b)));
}

Elem Ring::reduce(Elem a, int m) const {
  if (m < 0 || m > k_) throw error("reduce: bad target length");
  return {a.code % static_cast<uint32_t>(ipow(p_, static_cast<unsigned>(m)))};
}

Ring Ring::quotient(int m) const {
  if (m < 1 || m > k_) throw error("quotient: length out of range");
  return make(flavor_, p_, m);
}

uint64_t Ring::num_units() const { return unit_count(p_, k_); }

std::vector<Elem> Ring::elements() const {
  std::vector<Elem> out;
  out.reserve(size_);
  for (uint32_t c = 0; c < size_; ++c) out.push_back({c});
  return out;
}

std::vector<Elem> Ring::units() const {
  std::vector<Elem> out;
  out.reserve(num_units());
  for (uint32_t c = 0; c < size_; ++c)
    if (is_unit({c})) out.push_back({c});
  return out;
}

std::vector<Elem> Ring::nonunits() const {
  std::vector<Elem> out;
  for (uint32_t c = 0; c < size_; ++c)
    if (!is_unit({c})) out.push_back({c});
  return out;
}

uint64_t Ring::unit_count(uint64_t q, int m) {
  if (m < 0) throw error("unit_count: m < 0");
  if (m == 0) return 1; // trivial ring
  return ipow(q, static_cast<unsigned>(m - 1)) * (q - 1);
}

uint64_t Ring::units_with_delta_count(uint64_t q, int m, int delta) {
  if (delta < 0 || delta > m) throw error("units_with_delta_count: need 0 <= delta <= m");
  if (delta == m) return 1; // only a = 1
  if (delta == 0) return (q - 2) * ipow(q, static_cast<unsigned>(m - 1));
  return (q - 1) * ipow(q, static_cast<unsigned>(m - delta - 1));
}

// ---- text ----

namespace {

uint64_t parse_u64(std::string_view s, std::string_view what) {
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw parse_error("bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

} // namespace

Ring Ring::parse(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw parse_error("ring spec needs 'flavor:...'");
  std::string_view head = spec.substr(0, colon), rest = spec.substr(colon + 1);
  Flavor f;
  std::string_view pkey;
  if (head == "zpk") {
    f = Flavor::Zpk;
    pkey = "p";
  } else if (head == "fqtk") {
    f = Flavor::FqTk;
    pkey = "q";
  } else {
    throw parse_error("unknown ring flavor '" + std::string(head) + "' (want zpk or fqtk)");
  }
  auto comma = rest.find(',');
  if (comma == std::string_view::npos) throw parse_error("ring spec needs 'p=..,k=..'");
  auto kv = [&](std::string_view part, std::string_view key) {
    auto eq = part.find('=');
    if (eq == std::string_view::npos || part.substr(0, eq) != key)
      throw parse_error("ring spec: expected '" + std::string(key) + "=', got '" +
                        std::string(part) + "'");
    return parse_u64(part.substr(eq + 1), key);
  };
  uint64_t p = kv(rest.substr(0, comma), pkey);
  uint64_t k = kv(rest.substr(comma + 1), "k");
  return make(f, p, static_cast<int>(k));
}

std::string Ring::to_string() const {
  if (flavor_ == Flavor::Zpk)
    return "zpk:p=" + std::to_string(p_) + ",k=" + std::to_string(k_);
  return "fqtk:q=" + std::to_string(p_) + ",k=" + std::to_string(k_);
}

std::string Ring::elem_to_string(Elem a) const {
  if (flavor_ == Flavor::Zpk) return std::to_string(a.code);
  if (a.code == 0) return "0";
  std::string out;
  uint32_t x = a.code;
  for (int i = 0; i < k_ && x; ++i, x /= p_) {
    uint32_t c = x % p_;
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += 't';
      if (i > 1) out += '^' + std::to_string(i);
    }
  }
  return out;
}

Elem Ring::parse_elem(std::string_view s) const {
  if (s.empty()) throw parse_error("empty element");
  if (flavor_ == Flavor::Zpk) {
    uint64_t v = parse_u64(s, "element");
    return from_int(static_cast<int64_t>(v % size_));
  }
  // sum of terms: c | t | ct | t^e | ct^e
  Elem acc = zero();
  size_t pos = 0;
  while (pos < s.size()) {
    size_t next = s.find('+', pos);
    std::string_view term = s.substr(pos, next == std::string_view::npos ? next : next - pos);
    pos = (next == std::string_view::npos) ? s.size() : next + 1;
    if (term.empty()) throw parse_error("empty term in element");
    uint64_t coef = 1;
    size_t i = 0;
    while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) ++i;
    if (i > 0) coef = parse_u64(term.substr(0, i), "coefficient");
    unsigned expn = 0;
    if (i < term.size()) {
      if (term[i] != 't') throw parse_error("bad element term '" + std::string(term) + "'");
      ++i;
      expn = 1;
      if (i < term.size()) {
        if (term[i] != '^') throw parse_error("bad element term '" + std::string(term) + "'");
        expn = static_cast<unsigned>(parse_u64(term.substr(i + 1), "exponent"));
        i = term.size();
      }
    }
    if (expn >= static_cast<unsigned>(k_)) continue; // t^e = 0
    uint32_t c = static_cast<uint32_t>(coef % p_);
    acc = add(acc, {static_cast<uint32_t>(c * ipow(p_, expn))});
  }
  return acc;
}

} // namespace bgb
