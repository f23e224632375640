#include "bgb/oracle.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cstring>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace bgb {

namespace {

// table-backed ring ops on raw codes; falls back to Ring for untabled rings
struct Ctx {
  const Ring* R;
  uint32_t size;
  int n, k;
  const uint16_t *tadd, *tmul, *tinv, *tneg;
  const uint8_t* tval;

  Ctx(const Ring& r, int n_) : R(&r), size(r.size()), n(n_), k(r.k()) {
    tadd = r.add_table();
    tmul = r.mul_table();
    tinv = r.inv_table();
    tneg = r.neg_table();
    tval = r.val_table();
  }
  uint32_t add(uint32_t a, uint32_t b) const {
    return tadd ? tadd[a * size + b] : R->add({a}, {b}).code;
  }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return tmul ? tmul[a * size + b] : R->mul({a}, {b}).code;
  }
  uint32_t neg(uint32_t a) const { return tneg ? tneg[a] : R->neg({a}).code; }
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  uint32_t inv(uint32_t a) const { return tinv ? tinv[a] : R->inv({a}).code; }
  bool unit(uint32_t a) const { return (tval ? tval[a] : R->val({a})) == 0; }
};

constexpr size_t kKeyBytes = 40;
using Key = std::array<uint8_t, kKeyBytes>;

struct KeyHash {
  size_t operator()(const Key& key) const {
    uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < 5; ++i) {
      uint64_t w;
      std::memcpy(&w, key.data() + 8 * i, 8);
      h ^= w;
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 33;
    }
    return static_cast<size_t>(h);
  }
};

Key sentinel_key() {
  Key key;
  key.fill(0xff);
  return key;
}

// insert-only open-addressing set; all-0xFF is reserved (serialized states
// always carry zero padding bytes)
class KeySet {
public:
  explicit KeySet(size_t expected) {
    size_t cap = 64;
    while (cap < expected * 2) cap <<= 1;
    slots_.assign(cap, sentinel_key());
    mask_ = cap - 1;
  }
  bool insert(const Key& key) {
    if ((count_ + 1) * 2 > slots_.size()) grow();
    return insert_nogrow(key);
  }
  bool contains(const Key& key) const {
    const Key sent = sentinel_key();
    for (size_t i = KeyHash{}(key) & mask_;; i = (i + 1) & mask_) {
      if (slots_[i] == key) return true;
      if (slots_[i] == sent) return false;
    }
  }
  size_t size() const { return count_; }

private:
  bool insert_nogrow(const Key& key) {
    const Key sent = sentinel_key();
    for (size_t i = KeyHash{}(key) & mask_;; i = (i + 1) & mask_) {
      if (slots_[i] == key) return false;
      if (slots_[i] == sent) {
        slots_[i] = key;
        ++count_;
        return true;
      }
    }
  }
  void grow() {
    std::vector<Key> old;
    old.swap(slots_);
    slots_.assign(old.size() * 2, sentinel_key());
    mask_ = slots_.size() - 1;
    count_ = 0;
    const Key sent = sentinel_key();
    for (const Key& key : old)
      if (!(key == sent)) insert_nogrow(key);
  }
  std::vector<Key> slots_;
  size_t mask_ = 0;
  size_t count_ = 0;
};

int key_bytes_per_entry(const Ring& r) { return r.size() <= 256 ? 1 : 2; }

void serialize(const Ctx& c, const uint32_t* m, int bper, Key& out) {
  out.fill(0);
  const int nn = c.n * c.n;
  if (bper == 1) {
    for (int i = 0; i < nn; ++i) out[static_cast<size_t>(i)] = static_cast<uint8_t>(m[i]);
  } else {
    for (int i = 0; i < nn; ++i) {
      out[static_cast<size_t>(2 * i)] = static_cast<uint8_t>(m[i] >> 8);
      out[static_cast<size_t>(2 * i) + 1] = static_cast<uint8_t>(m[i]);
    }
  }
}

void deserialize(const Ctx& c, const Key& in, int bper, uint32_t* m) {
  const int nn = c.n * c.n;
  if (bper == 1) {
    for (int i = 0; i < nn; ++i) m[i] = in[static_cast<size_t>(i)];
  } else {
    for (int i = 0; i < nn; ++i)
      m[i] = (static_cast<uint32_t>(in[static_cast<size_t>(2 * i)]) << 8) |
             in[static_cast<size_t>(2 * i) + 1];
  }
}

bool canon_inplace(const Ctx& c, uint32_t* M, int* piv_out = nullptr) {
  const int n = c.n;
  int piv[8];
  for (int j = 0; j < n; ++j) {
    for (int jj = 0; jj < j; ++jj) {
      uint32_t f = M[piv[jj] * n + j];
      if (f)
        for (int r = 0; r < n; ++r) M[r * n + j] = c.sub(M[r * n + j], c.mul(f, M[r * n + jj]));
    }
    int pr = -1;
    for (int r = n - 1; r >= 0; --r)
      if (c.unit(M[r * n + j])) {
        pr = r;
        break;
      }
    if (pr < 0) return false;
    piv[j] = pr;
    uint32_t u = c.inv(M[pr * n + j]);
    if (u != 1)
      for (int r = 0; r < n; ++r) M[r * n + j] = c.mul(u, M[r * n + j]);
  }
  if (piv_out)
    for (int j = 0; j < n; ++j) piv_out[j] = piv[j];
  return true;
}

// left-Borel generators: I + a E_uv (u < v, a != 0) and one-spot unit diagonals
struct Gen {
  uint8_t kind; // 0: row u += a * row v; 1: row u *= a
  int u, v;
  uint32_t a;
};

std::vector<Gen> left_gens(const Ctx& c) {
  std::vector<Gen> g;
  for (int u = 0; u < c.n; ++u)
    for (int v = u + 1; v < c.n; ++v)
      for (uint32_t a = 1; a < c.size; ++a) g.push_back({0, u, v, a});
  for (int d = 0; d < c.n; ++d)
    for (uint32_t a = 2; a < c.size; ++a)
      if (c.unit(a)) g.push_back({1, d, 0, a});
  return g;
}

void apply_gen(const Ctx& c, const Gen& g, uint32_t* M) {
  const int n = c.n;
  if (g.kind == 0) {
    for (int col = 0; col < n; ++col)
      M[g.u * n + col] = c.add(M[g.u * n + col], c.mul(g.a, M[g.v * n + col]));
  } else {
    for (int col = 0; col < n; ++col) M[g.u * n + col] = c.mul(g.a, M[g.u * n + col]);
  }
}

Mat decode_mat(const Ring& r, const Ctx& c, const Key& key, int bper) {
  uint32_t m[36];
  deserialize(c, key, bper, m);
  Mat out(r, c.n, c.n);
  for (int i = 0; i < c.n; ++i)
    for (int j = 0; j < c.n; ++j) out.set(i, j, r.elem(m[i * c.n + j]));
  return out;
}

std::vector<Key> enumerate_flag_keys(const Ring& r, int n, long long budget) {
  long long total = flag_count(r, n);
  if (total > budget)
    throw budget_exceeded("flag space has " + std::to_string(total) +
                          " elements, budget is " + std::to_string(budget));
  Ctx c(r, n);
  const int bper = key_bytes_per_entry(r);
  if (static_cast<size_t>(n) * n * bper > kKeyBytes)
    throw budget_exceeded("state too large for the serialized key");

  std::vector<uint32_t> nonunit_codes;
  for (uint32_t x = 0; x < r.size(); ++x)
    if (!c.unit(x)) nonunit_codes.push_back(x);

  std::vector<Key> keys;
  keys.reserve(static_cast<size_t>(total));

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  uint32_t M[36];
  do {
    struct Pos {
      int idx;
      bool below; // below the pivot: non-units only
    };
    std::vector<Pos> free_pos;
    std::vector<char> prior(n, 0);
    std::memset(M, 0, sizeof(M));
    for (int j = 0; j < n; ++j) {
      prior[perm[j]] = 1;
      M[perm[j] * n + j] = 1;
      for (int row = 0; row < n; ++row)
        if (!prior[row]) free_pos.push_back({row * n + j, row > perm[j]});
    }
    std::vector<size_t> odo(free_pos.size(), 0);
    for (;;) {
      for (size_t t = 0; t < free_pos.size(); ++t)
        M[free_pos[t].idx] =
            free_pos[t].below ? nonunit_codes[odo[t]] : static_cast<uint32_t>(odo[t]);
      Key key;
      serialize(c, M, bper, key);
      keys.push_back(key);
      size_t t = 0;
      for (; t < free_pos.size(); ++t) {
        size_t dom = free_pos[t].below ? nonunit_codes.size() : r.size();
        if (++odo[t] < dom) break;
        odo[t] = 0;
      }
      if (t == free_pos.size()) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (static_cast<long long>(keys.size()) != total)
    throw error("flag enumeration does not match the counting formula (bug)");
  std::sort(keys.begin(), keys.end());
  return keys;
}

// expand one BFS level; identical results for any thread count
void expand_level(const Ctx& c, int bper, const std::vector<Gen>& gens,
                  const std::vector<Key>& frontier, int threads, KeySet& visited,
                  std::vector<Key>& next, long long& orbit,
                  const std::vector<Key>* watch = nullptr,
                  std::vector<int>* watch_hit = nullptr) {
  auto note_watch = [&](const Key& kk) {
    if (!watch) return;
    for (size_t t = 0; t < watch->size(); ++t)
      if ((*watch)[t] == kk) (*watch_hit)[t] = 1;
  };
  if (threads <= 1) {
    uint32_t base[36], work[36];
    for (const Key& key : frontier) {
      deserialize(c, key, bper, base);
      for (const Gen& g : gens) {
        std::memcpy(work, base, sizeof(uint32_t) * c.n * c.n);
        apply_gen(c, g, work);
        bool ok = canon_inplace(c, work);
        assert(ok);
        (void)ok;
        Key kk;
        serialize(c, work, bper, kk);
        if (visited.insert(kk)) {
          next.push_back(kk);
          ++orbit;
          note_watch(kk);
        }
      }
    }
    return;
  }
  const size_t block = 8192;
  std::vector<std::vector<Key>> cand(static_cast<size_t>(threads));
  for (size_t lo = 0; lo < frontier.size(); lo += block) {
    const size_t hi = std::min(lo + block, frontier.size());
    const size_t span = hi - lo;
    const size_t per = (span + threads - 1) / threads;
    std::vector<std::thread> workers;
    for (int w = 0; w < threads; ++w) {
      cand[static_cast<size_t>(w)].clear();
      const size_t a = lo + static_cast<size_t>(w) * per;
      const size_t b = std::min(a + per, hi);
      if (a >= b) continue;
      workers.emplace_back([&, a, b, w] {
        uint32_t base[36], work[36];
        auto& out = cand[static_cast<size_t>(w)];
        for (size_t i = a; i < b; ++i) {
          deserialize(c, frontier[i], bper, base);
          for (const Gen& g : gens) {
            std::memcpy(work, base, sizeof(uint32_t) * c.n * c.n);
            apply_gen(c, g, work);
            canon_inplace(c, work);
            Key kk;
            serialize(c, work, bper, kk);
            out.push_back(kk);
          }
        }
      });
    }
    for (auto& t : workers) t.join();
    for (int w = 0; w < threads; ++w)
      for (const Key& kk : cand[static_cast<size_t>(w)])
        if (visited.insert(kk)) {
          next.push_back(kk);
          ++orbit;
          note_watch(kk);
        }
  }
}

} // namespace

Mat canonical_flag(const Mat& g) {
  if (g.rows() != g.cols()) throw non_invertible("canonical_flag: square matrices only");
  const Ring& r = g.ring();
  Ctx c(r, g.rows());
  uint32_t m[36];
  if (g.rows() > 6) throw budget_exceeded("canonical_flag: n > 6 unsupported");
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) m[i * g.cols() + j] = g.at(i, j).code;
  if (!canon_inplace(c, m)) throw non_invertible("canonical_flag: matrix not in GL");
  Mat out(r, g.rows(), g.cols());
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) out.set(i, j, r.elem(m[i * g.cols() + j]));
  return out;
}

long long flag_count_field(uint64_t q, int n) {
  long long total = 1;
  for (int d = 1; d <= n; ++d) {
    long long s = 0, t = 1;
    for (int e = 0; e < d; ++e) {
      s += t;
      t *= static_cast<long long>(q);
    }
    total *= s;
  }
  return total;
}

long long flag_count(const Ring& r, int n) {
  long long total = flag_count_field(r.q(), n);
  long long e = static_cast<long long>(r.k() - 1) * n * (n - 1) / 2;
  for (long long i = 0; i < e; ++i) {
    if (total > std::numeric_limits<long long>::max() / r.q() / 2)
      return std::numeric_limits<long long>::max() / 2; // saturate; only compared to budgets
    total *= r.q();
  }
  return total;
}

std::vector<Mat> enumerate_flags(const Ring& r, int n, long long budget) {
  auto keys = enumerate_flag_keys(r, n, budget);
  Ctx c(r, n);
  const int bper = key_bytes_per_entry(r);
  std::vector<Mat> out;
  out.reserve(keys.size());
  for (const Key& key : keys) out.push_back(decode_mat(r, c, key, bper));
  return out;
}

long long OrbitReport::fiber_count(const Perm& w) const {
  for (const auto& [p, c] : fiber_counts)
    if (p == w) return c;
  return 0;
}

std::string OrbitReport::serialize() const {
  std::string s = ring.to_string() + " n=" + std::to_string(n) +
                  " flags=" + std::to_string(num_flags) +
                  " cosets=" + std::to_string(num_cosets()) + "\n";
  for (size_t i = 0; i < representatives.size(); ++i)
    s += representatives[i].to_string() + " size=" + std::to_string(orbit_sizes[i]) + "\n";
  for (const auto& [w, c] : fiber_counts) s += "N(" + w.to_string() + ")=" + std::to_string(c) + "\n";
  return s;
}

OrbitReport double_cosets(const Ring& r, int n, const OracleOpts& opts) {
  auto keys = enumerate_flag_keys(r, n, opts.budget);
  Ctx c(r, n);
  const int bper = key_bytes_per_entry(r);
  auto gens = left_gens(c);

  KeySet visited(keys.size());
  OrbitReport rep(r);
  rep.n = n;
  rep.num_flags = static_cast<long long>(keys.size());

  std::vector<Key> frontier, next;
  for (const Key& seed : keys) {
    if (visited.contains(seed)) continue;
    visited.insert(seed);
    frontier.assign(1, seed);
    long long orbit = 1;
    while (!frontier.empty()) {
      next.clear();
      expand_level(c, bper, gens, frontier, opts.threads, visited, next, orbit);
      frontier.swap(next);
    }
    rep.representatives.push_back(decode_mat(r, c, seed, bper));
    rep.orbit_sizes.push_back(orbit);
  }

  long long covered = std::accumulate(rep.orbit_sizes.begin(), rep.orbit_sizes.end(), 0ll);
  if (covered != rep.num_flags) throw error("orbit sizes do not cover the flag space (bug)");

  std::map<Perm, long long> fibers;
  for (const Mat& m : rep.representatives) fibers[permutation_invariant(m)]++;
  rep.fiber_counts.assign(fibers.begin(), fibers.end());
  return rep;
}

std::vector<int> flag_class_partition(const std::vector<Mat>& seeds, const OracleOpts& opts) {
  if (seeds.empty()) return {};
  const Ring& r = seeds[0].ring();
  const int n = seeds[0].rows();
  for (const Mat& m : seeds) {
    if (!(m.ring() == r)) throw ring_mismatch("flag_class_partition: mixed rings");
    if (m.rows() != n || m.cols() != n) throw error("flag_class_partition: mixed shapes");
  }
  long long total = flag_count(r, n);
  if (total > opts.budget)
    throw budget_exceeded("flag space has " + std::to_string(total) + " elements, budget is " +
                          std::to_string(opts.budget));
  Ctx c(r, n);
  const int bper = key_bytes_per_entry(r);
  auto gens = left_gens(c);

  std::vector<Key> seed_keys(seeds.size());
  for (size_t i = 0; i < seeds.size(); ++i) {
    Mat f = canonical_flag(seeds[i]);
    uint32_t m[36];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) m[a * n + b] = f.at(a, b).code;
    serialize(c, m, bper, seed_keys[i]);
  }

  std::vector<int> cls(seeds.size(), -1);
  KeySet visited(static_cast<size_t>(std::min<long long>(total, 1 << 20)));
  int next_class = 0;
  std::vector<Key> frontier, next;
  std::vector<int> hit(seeds.size(), 0);
  for (size_t s = 0; s < seeds.size(); ++s) {
    if (cls[s] >= 0) continue;
    const int me = next_class++;
    cls[s] = me;
    if (visited.contains(seed_keys[s])) {
      // already swept by an earlier orbit, but no class was recorded: cannot
      // happen, since every sweep tags all seed keys it meets
      throw error("flag_class_partition: unreached visited seed (bug)");
    }
    visited.insert(seed_keys[s]);
    for (size_t t = s + 1; t < seeds.size(); ++t)
      if (cls[t] < 0 && seed_keys[t] == seed_keys[s]) cls[t] = me;
    frontier.assign(1, seed_keys[s]);
    long long orbit = 1;
    std::fill(hit.begin(), hit.end(), 0);
    while (!frontier.empty()) {
      next.clear();
      expand_level(c, bper, gens, frontier, opts.threads, visited, next, orbit, &seed_keys, &hit);
      frontier.swap(next);
    }
    for (size_t t = s + 1; t < seeds.size(); ++t)
      if (hit[t] && cls[t] < 0) cls[t] = me;
  }
  return cls;
}

bool equiv(const Mat& a, const Mat& b, const OracleOpts& opts) {
  if (!(a.ring() == b.ring())) throw ring_mismatch("equiv: ring mismatch");
  if (a.rows() == 2 && a.cols() == 2 && is_m2_pattern(a) && is_m2_pattern(b))
    return equiv_m2(a, b);
  if (!is_invertible(a) || !is_invertible(b))
    throw non_invertible("equiv: inputs must both be invertible or both match the 2x2 pattern");
  auto cls = flag_class_partition({a, b}, opts);
  return cls[0] == cls[1];
}

// ---- 2x2 one-unit-corner machinery ----

bool is_m2_pattern(const Mat& m) {
  if (m.rows() != 2 || m.cols() != 2) return false;
  const Ring& r = m.ring();
  return r.is_unit(m.at(0, 1)) && !r.is_unit(m.at(0, 0)) && !r.is_unit(m.at(1, 0)) &&
         !r.is_unit(m.at(1, 1));
}

Mat m2_torus_canonical(const Mat& m) {
  if (m.rows() != 2 || m.cols() != 2) throw error("m2_torus_canonical: 2x2 only");
  const Ring& r = m.ring();
  const int k = r.k();
  Elem x = m.at(0, 0), u = m.at(0, 1), y = m.at(1, 0), z = m.at(1, 1);
  Mat out(r, 2, 2);
  out.set(0, 0, r.is_zero(x) ? r.zero() : r.pi(r.val(x)));
  out.set(0, 1, r.is_zero(u) ? r.zero() : r.pi(r.val(u)));
  out.set(1, 0, r.is_zero(y) ? r.zero() : r.pi(r.val(y)));
  if (r.is_zero(z)) {
    out.set(1, 1, r.zero());
    return out;
  }
  if (r.is_zero(x) || r.is_zero(u) || r.is_zero(y)) {
    // a scaling slot is unconstrained, so the whole unit orbit of z is reachable
    out.set(1, 1, r.pi(r.val(z)));
    return out;
  }
  // multiplier of the (1,1) slot is s*t/r with r,s,t pinned to the three
  // normalized entries up to 1 + p^(k - v) factors
  Elem w0 = r.mul(r.mul(r.inv(r.unit_part(u)), r.inv(r.unit_part(y))), r.unit_part(x));
  Elem base = r.mul(w0, z);
  int ew = std::min({k - r.val(x), k - r.val(u), k - r.val(y)});
  int mexp = ew + r.val(z);
  if (mexp >= k) {
    out.set(1, 1, base);
    return out;
  }
  // minimize over the additive coset base + (pi^mexp)
  uint32_t stride = static_cast<uint32_t>(ipow(r.p(), static_cast<unsigned>(mexp)));
  Elem best = base;
  for (uint32_t c = 1; c * stride < r.size(); ++c) {
    Elem cand = r.add(base, r.elem(static_cast<uint64_t>(c) * stride));
    if (cand.code < best.code) best = cand;
  }
  out.set(1, 1, best);
  return out;
}

namespace {

uint64_t m2_key(const Mat& m) {
  return static_cast<uint64_t>(m.at(0, 0).code) | (static_cast<uint64_t>(m.at(0, 1).code) << 16) |
         (static_cast<uint64_t>(m.at(1, 0).code) << 32) |
         (static_cast<uint64_t>(m.at(1, 1).code) << 48);
}

Mat m2_from_key(const Ring& r, uint64_t key) {
  Mat m(r, 2, 2);
  m.set(0, 0, r.elem(key & 0xffff));
  m.set(0, 1, r.elem((key >> 16) & 0xffff));
  m.set(1, 0, r.elem((key >> 32) & 0xffff));
  m.set(1, 1, r.elem((key >> 48) & 0xffff));
  return m;
}

// unipotent moves on torus-canonical states; the torus normalizes the move
// set, so BFS over canonical states computes the full two-sided orbits
std::vector<uint64_t> m2_torus_moves(const Ring& r, uint64_t state) {
  Mat m = m2_from_key(r, state);
  std::vector<uint64_t> out;
  out.reserve(2 * (r.size() - 1));
  for (uint32_t c = 1; c < r.size(); ++c) {
    Elem ce = r.elem(c);
    Mat a = m; // row 0 += c * row 1
    a.set(0, 0, r.add(a.at(0, 0), r.mul(ce, a.at(1, 0))));
    a.set(0, 1, r.add(a.at(0, 1), r.mul(ce, a.at(1, 1))));
    out.push_back(m2_key(m2_torus_canonical(a)));
    Mat b = m; // col 1 += c * col 0
    b.set(0, 1, r.add(b.at(0, 1), r.mul(ce, b.at(0, 0))));
    b.set(1, 1, r.add(b.at(1, 1), r.mul(ce, b.at(1, 0))));
    out.push_back(m2_key(m2_torus_canonical(b)));
  }
  return out;
}

} // namespace

std::vector<int> m2_class_partition(const std::vector<Mat>& seeds) {
  if (seeds.empty()) return {};
  const Ring& r = seeds[0].ring();
  std::vector<uint64_t> seed_keys(seeds.size());
  for (size_t i = 0; i < seeds.size(); ++i) {
    if (!(seeds[i].ring() == r)) throw ring_mismatch("m2_class_partition: mixed rings");
    if (!is_m2_pattern(seeds[i]))
      throw not_in_m2("m2_class_partition: top-right entry must be the only unit");
    seed_keys[i] = m2_key(m2_torus_canonical(seeds[i]));
  }
  std::vector<int> cls(seeds.size(), -1);
  std::unordered_set<uint64_t> visited;
  int next_class = 0;
  for (size_t s = 0; s < seeds.size(); ++s) {
    if (cls[s] >= 0) continue;
    const int me = next_class++;
    cls[s] = me;
    std::vector<uint64_t> frontier{seed_keys[s]};
    visited.insert(seed_keys[s]);
    std::unordered_set<uint64_t> orbit{seed_keys[s]};
    while (!frontier.empty()) {
      std::vector<uint64_t> nxt;
      for (uint64_t st : frontier)
        for (uint64_t mv : m2_torus_moves(r, st))
          if (visited.insert(mv).second) {
            nxt.push_back(mv);
            orbit.insert(mv);
          }
      frontier.swap(nxt);
    }
    for (size_t t = s + 1; t < seeds.size(); ++t)
      if (cls[t] < 0 && orbit.count(seed_keys[t])) cls[t] = me;
  }
  return cls;
}

bool equiv_m2(const Mat& a, const Mat& b) {
  if (!(a.ring() == b.ring())) throw ring_mismatch("equiv_m2: ring mismatch");
  auto cls = m2_class_partition({a, b});
  return cls[0] == cls[1];
}

std::vector<Mat> enumerate_m2(const Ring& r) {
  std::vector<Mat> out;
  auto nu = r.nonunits();
  auto un = r.units();
  out.reserve(nu.size() * nu.size() * nu.size() * un.size());
  for (Elem x : nu)
    for (Elem u : un)
      for (Elem y : nu)
        for (Elem z : nu) {
          Mat m(r, 2, 2);
          m.set(0, 0, x);
          m.set(0, 1, u);
          m.set(1, 0, y);
          m.set(1, 1, z);
          out.push_back(m);
        }
  return out;
}

std::vector<int> m2_all_classes_torus(const Ring& r) {
  auto all = enumerate_m2(r);
  std::vector<uint64_t> can(all.size());
  for (size_t i = 0; i < all.size(); ++i) can[i] = m2_key(m2_torus_canonical(all[i]));
  std::unordered_map<uint64_t, int> cls_of;
  int next_class = 0;
  for (size_t i = 0; i < all.size(); ++i) {
    if (cls_of.count(can[i])) continue;
    const int me = next_class++;
    std::vector<uint64_t> frontier{can[i]};
    cls_of[can[i]] = me;
    while (!frontier.empty()) {
      std::vector<uint64_t> nxt;
      for (uint64_t st : frontier)
        for (uint64_t mv : m2_torus_moves(r, st))
          if (cls_of.emplace(mv, me).second) nxt.push_back(mv);
      frontier.swap(nxt);
    }
  }
  std::vector<int> out(all.size());
  for (size_t i = 0; i < all.size(); ++i) out[i] = cls_of.at(can[i]);
  return out;
}

std::vector<int> m2_all_classes_raw(const Ring& r) {
  auto all = enumerate_m2(r);
  std::unordered_map<uint64_t, int> cls_of;
  cls_of.reserve(all.size() * 2);
  auto moves = [&](uint64_t state, std::vector<uint64_t>& out) {
    Mat m = m2_from_key(r, state);
    out.clear();
    for (uint32_t c = 1; c < r.size(); ++c) {
      Elem ce = r.elem(c);
      Mat a = m;
      a.set(0, 0, r.add(a.at(0, 0), r.mul(ce, a.at(1, 0))));
      a.set(0, 1, r.add(a.at(0, 1), r.mul(ce, a.at(1, 1))));
      out.push_back(m2_key(a));
      Mat b = m;
      b.set(0, 1, r.add(b.at(0, 1), r.mul(ce, b.at(0, 0))));
      b.set(1, 1, r.add(b.at(1, 1), r.mul(ce, b.at(1, 0))));
      out.push_back(m2_key(b));
      if (r.is_unit(ce) && c != 1) {
        for (int spot = 0; spot < 4; ++spot) {
          Mat s = m;
          int rr = spot < 2 ? 0 : 1;
          bool is_row = spot % 2 == 0;
          if (is_row) {
            s.set(rr, 0, r.mul(ce, s.at(rr, 0)));
            s.set(rr, 1, r.mul(ce, s.at(rr, 1)));
          } else {
            s.set(0, rr, r.mul(ce, s.at(0, rr)));
            s.set(1, rr, r.mul(ce, s.at(1, rr)));
          }
          out.push_back(m2_key(s));
        }
      }
    }
  };
  int next_class = 0;
  std::vector<uint64_t> scratch;
  for (const Mat& m : all) {
    uint64_t k0 = m2_key(m);
    if (cls_of.count(k0)) continue;
    const int me = next_class++;
    cls_of[k0] = me;
    std::vector<uint64_t> frontier{k0};
    while (!frontier.empty()) {
      std::vector<uint64_t> nxt;
      for (uint64_t st : frontier) {
        moves(st, scratch);
        for (uint64_t mv : scratch)
          if (cls_of.emplace(mv, me).second) nxt.push_back(mv);
      }
      frontier.swap(nxt);
    }
  }
  std::vector<int> out(all.size());
  for (size_t i = 0; i < all.size(); ++i) out[i] = cls_of.at(m2_key(all[i]));
  return out;
}

long long m2_orbit_count_torus(const Ring& r) {
  auto cls = m2_all_classes_torus(r);
  return cls.empty() ? 0 : 1 + *std::max_element(cls.begin(), cls.end());
}

long long m2_orbit_count_raw(const Ring& r) {
  auto cls = m2_all_classes_raw(r);
  return cls.empty() ? 0 : 1 + *std::max_element(cls.begin(), cls.end());
}

// ---- raw union-find ground truth for tiny groups ----

long long double_coset_count_unionfind(const Ring& r, int n, long long max_group) {
  const uint64_t cells = static_cast<uint64_t>(n) * n;
  uint64_t space = 1;
  for (uint64_t i = 0; i < cells; ++i) {
    space *= r.size();
    if (space > static_cast<uint64_t>(max_group) * 64)
      throw budget_exceeded("double_coset_count_unionfind: matrix space too large");
  }
  // dense index over all matrices; keep only the invertible ones
  std::vector<int32_t> id_of(space, -1);
  std::vector<Mat> gl;
  std::vector<uint32_t> digits(cells);
  for (uint64_t code = 0; code < space; ++code) {
    uint64_t x = code;
    for (uint64_t i = 0; i < cells; ++i) {
      digits[i] = static_cast<uint32_t>(x % r.size());
      x /= r.size();
    }
    Mat m(r, n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) m.set(a, b, r.elem(digits[static_cast<size_t>(a) * n + b]));
    if (is_invertible(m)) {
      id_of[code] = static_cast<int32_t>(gl.size());
      gl.push_back(m);
    }
  }
  if (static_cast<long long>(gl.size()) > max_group)
    throw budget_exceeded("double_coset_count_unionfind: group too large");

  auto index_of = [&](const Mat& m) {
    uint64_t code = 0, mult = 1;
    for (uint64_t i = 0; i < cells; ++i) {
      code += m.at(static_cast<int>(i) / n, static_cast<int>(i) % n).code * mult;
      mult *= r.size();
    }
    int32_t id = id_of[code];
    if (id < 0) throw error("union-find: generator left GL (bug)");
    return id;
  };

  std::vector<int32_t> parent(gl.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int32_t(int32_t)> find = [&](int32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  };

  for (size_t i = 0; i < gl.size(); ++i) {
    const Mat& m = gl[i];
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        for (uint32_t a = 1; a < r.size(); ++a) {
          Elem ae = r.elem(a);
          Mat left = m; // row u += a * row v
          for (int col = 0; col < n; ++col)
            left.set(u, col, r.add(left.at(u, col), r.mul(ae, left.at(v, col))));
          unite(static_cast<int32_t>(i), index_of(left));
          Mat right = m; // col v += a * col u
          for (int row = 0; row < n; ++row)
            right.set(row, v, r.add(right.at(row, v), r.mul(ae, right.at(row, u))));
          unite(static_cast<int32_t>(i), index_of(right));
        }
    for (int d = 0; d < n; ++d)
      for (uint32_t a = 2; a < r.size(); ++a) {
        if (!r.is_unit(r.elem(a))) continue;
        Elem ae = r.elem(a);
        Mat left = m;
        for (int col = 0; col < n; ++col) left.set(d, col, r.mul(ae, left.at(d, col)));
        unite(static_cast<int32_t>(i), index_of(left));
        Mat right = m;
        for (int row = 0; row < n; ++row) right.set(row, d, r.mul(ae, right.at(row, d)));
        unite(static_cast<int32_t>(i), index_of(right));
      }
  }
  long long roots = 0;
  for (size_t i = 0; i < gl.size(); ++i)
    if (find(static_cast<int32_t>(i)) == static_cast<int32_t>(i)) ++roots;
  return roots;
}

} // namespace bgb
