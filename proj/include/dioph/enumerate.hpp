#pragma once

// Enumeration of all rational subspaces of R^n of dimension e and height at
// most H, and record tracking of how well they approximate a real target.
//
// Every saturated lattice L = B ∩ Z^n of rank e <= 4 has a Minkowski-reduced
// basis v_1, ..., v_e: norms non-decreasing, |2 v_i . v_k| <= |v_k|^2 for
// k < i, and prod |v_i| <= gamma_e^(e/2) det L (second theorem; the reduced
// vectors realize the successive minima). The sweep visits every tuple of
// sign-canonical integer vectors meeting those necessary conditions, with the
// product bound widened by a safety factor, and keeps the tuples that span a
// saturated lattice of determinant at most H. Subspaces with 2e > n are
// obtained as orthogonal complements, which preserves the height.
//
// Work is split into shards of consecutive first vectors. Completed shards
// can be appended to an on-disk cache and are skipped on the next run.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "dioph/angles.hpp"
#include "dioph/error.hpp"
#include "dioph/exactcore.hpp"
#include "dioph/grassmann.hpp"
#include "dioph/parallel.hpp"

namespace dioph {

struct EnumerationOptions {
  unsigned workers = default_workers();
  std::uint64_t budget = 0;  // cap on candidate tuples examined, 0 = none
  std::string cache_dir;     // empty disables the cache
  double safety_factor = 2.0;
};

// Enumerated subspaces in compact form: normalized Plücker vectors stored
// flat, sorted by (height, Plücker vector).
struct Enumeration {
  int n = 0;
  int e = 0;
  std::size_t width = 0;  // C(n, e)
  BigInt height_sq_max;
  std::vector<long> coords;
  std::vector<long> heights_sq;
  bool truncated = false;
  std::size_t shards_total = 0;
  std::size_t shards_used = 0;
  std::size_t shards_from_cache = 0;

  std::size_t size() const { return heights_sq.size(); }
  std::span<const long> plucker(std::size_t i) const { return {coords.data() + i * width, width}; }
  long height_sq(std::size_t i) const { return heights_sq[i]; }

  IntVec plucker_int(std::size_t i) const {
    IntVec v;
    for (long x : plucker(i)) v.emplace_back(x);
    return v;
  }
  std::string key(std::size_t i) const {
    std::string s = std::to_string(n) + " " + std::to_string(e) + " :";
    for (long x : plucker(i)) s += " " + std::to_string(x);
    return s;
  }
  // Exact subspace with a saturated lattice basis.
  RationalSubspace subspace(std::size_t i) const {
    return RationalSubspace::from_plucker(PluckerVec{n, e, plucker_int(i)});
  }
  // Orthonormal basis at `bits`, computed from vectors read off the Plücker
  // vector (so it depends only on the subspace).
  RealSubspace real_view(std::size_t i, unsigned bits) const {
    const std::vector<long> p(plucker(i).begin(), plucker(i).end());
    std::vector<RealVec> vs;
    for (const auto& w : plucker_span_vectors(p, n, e)) {
      RealVec r;
      for (long x : w) r.emplace_back(x, bits);
      vs.push_back(std::move(r));
    }
    return RealSubspace::from_vectors(std::move(vs), bits);
  }
};

// Largest integer k with sqrt(k) <= height_max.
inline BigInt height_sq_bound(double height_max) {
  if (!(height_max >= 1.0)) throw Error(ErrorKind::kDomain, "height_max must be at least 1");
  const BigRat h(height_max);
  const BigRat sq = h * h;
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), sq.get_num_mpz_t(), sq.get_den_mpz_t());
  return out;
}

namespace detail {

using Int128 = __int128;

// gamma_e^e for the Hermite constants known exactly (e <= 8); a standard
// upper bound beyond.
inline long double hermite_power(int e) {
  static const long double table[] = {1.0L, 1.0L, 4.0L / 3, 2.0L, 4.0L, 8.0L, 64.0L / 3, 64.0L, 256.0L};
  if (e <= 8) return table[e];
  return std::pow(1.0L + e / 4.0L, static_cast<long double>(e));
}

// Sign-canonical nonzero integer vectors of R^n with squared norm <= r2,
// sorted by (norm, coordinates).
struct VectorTable {
  int n = 0;
  std::vector<long> coords;
  std::vector<long> norm;

  std::size_t size() const { return norm.size(); }
  const long* at(std::size_t i) const { return coords.data() + i * static_cast<std::size_t>(n); }
};

inline VectorTable sign_canonical_vectors(int n, long r2) {
  std::vector<long> flat;
  std::vector<long> norms;
  std::vector<long> cur(static_cast<std::size_t>(n), 0);
  // Coordinates before the first nonzero one are 0; the first nonzero is > 0.
  auto rec = [&](auto&& self, int pos, long used, bool leading) -> void {
    if (pos == n) {
      if (!leading) {
        flat.insert(flat.end(), cur.begin(), cur.end());
        norms.push_back(used);
      }
      return;
    }
    const long room = r2 - used;
    long lim = static_cast<long>(std::floor(std::sqrt(static_cast<long double>(room))));
    while (lim * lim > room) --lim;
    while ((lim + 1) * (lim + 1) <= room) ++lim;
    for (long x = leading ? 0 : -lim; x <= lim; ++x) {
      cur[pos] = x;
      self(self, pos + 1, used + x * x, leading && x == 0);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, 0, true);
  const std::size_t w = static_cast<std::size_t>(n);
  std::vector<std::size_t> order(norms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (norms[x] != norms[y]) return norms[x] < norms[y];
    return std::lexicographical_compare(flat.begin() + x * w, flat.begin() + (x + 1) * w, flat.begin() + y * w,
                                        flat.begin() + (y + 1) * w);
  });
  VectorTable t;
  t.n = n;
  t.norm.reserve(order.size());
  t.coords.reserve(flat.size());
  for (std::size_t i : order) {
    t.norm.push_back(norms[i]);
    t.coords.insert(t.coords.end(), flat.begin() + i * w, flat.begin() + (i + 1) * w);
  }
  return t;
}

inline long dot_raw(const long* a, const long* b, int n) {
  long s = 0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Fraction-free determinant of a small integer matrix.
inline Int128 det_small(std::vector<Int128> m, int k) {
  Int128 prev = 1;
  int sign = 1;
  for (int c = 0; c < k; ++c) {
    int p = c;
    while (p < k && m[p * k + c] == 0) ++p;
    if (p == k) return 0;
    if (p != c) {
      for (int j = 0; j < k; ++j) std::swap(m[p * k + j], m[c * k + j]);
      sign = -sign;
    }
    for (int i = c + 1; i < k; ++i) {
      for (int j = c + 1; j < k; ++j) m[i * k + j] = (m[i * k + j] * m[c * k + c] - m[i * k + c] * m[c * k + j]) / prev;
      m[i * k + c] = 0;
    }
    prev = m[c * k + c];
  }
  return sign * m[(k - 1) * k + (k - 1)];
}

inline long gcd_long(long a, long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    const long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct ShardOutput {
  std::vector<long> keys;  // normalized Plücker vectors, flat
  std::size_t count = 0;
  std::uint64_t work = 0;
  bool complete = false;
};

class Sweep {
 public:
  Sweep(int n, int e, long height_sq_max, double safety) : n_(n), e_(e), hsq_(height_sq_max) {
    bound_ = static_cast<long double>(safety) * safety * hermite_power(e) * static_cast<long double>(height_sq_max);
    bound_ *= 1.0L + 1e-12L;
    const long r2 = e <= 2 ? height_sq_max : static_cast<long>(std::floor(bound_));
    table_ = sign_canonical_vectors(n, r2);
    // First vectors: |v_1|^(2e) <= bound, and |v_1|^4 <= 4/3 H^2 when e = 2.
    for (std::size_t i = 0; i < table_.size(); ++i) {
      const long double nv = static_cast<long double>(table_.norm[i]);
      bool ok = std::pow(nv, static_cast<long double>(e)) <= bound_;
      if (e == 2) ok = ok && 3 * static_cast<Int128>(table_.norm[i]) * table_.norm[i] <= 4 * static_cast<Int128>(hsq_);
      if (e == 1) ok = ok && table_.norm[i] <= hsq_;
      if (!ok) break;
      ++first_count_;
    }
    subsets_ = lex_subsets(n, e);
  }

  std::size_t shard_count() const { return (first_count_ + kShardSize - 1) / kShardSize; }

  ShardOutput run_shard(std::size_t shard, std::uint64_t work_cap) const {
    ShardOutput out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(e_));
    const std::size_t lo = shard * kShardSize;
    const std::size_t hi = std::min(first_count_, lo + kShardSize);
    for (std::size_t i = lo; i < hi; ++i) {
      idx[0] = i;
      if (!descend(1, static_cast<long double>(table_.norm[i]), idx, out, work_cap)) return out;
    }
    out.complete = true;
    return out;
  }

 private:
  static constexpr std::size_t kShardSize = 16;

  bool descend(int level, long double prod, std::vector<std::size_t>& idx, ShardOutput& out,
               std::uint64_t cap) const {
    if (level == e_) {
      emit(idx, out);
      return true;
    }
    const int remaining = e_ - level;
    const long n1 = table_.norm[idx[0]];
    for (std::size_t j = idx[level - 1] + 1; j < table_.size(); ++j) {
      const long nj = table_.norm[j];
      if (e_ == 2) {
        // Exact for a reduced pair: |v_2|^2 <= H^2 / |v_1|^2 + |v_1|^2 / 4.
        if (4 * static_cast<Int128>(n1) * nj > 4 * static_cast<Int128>(hsq_) + static_cast<Int128>(n1) * n1) break;
      } else if (prod * std::pow(static_cast<long double>(nj), static_cast<long double>(remaining)) > bound_) {
        break;
      }
      if (++out.work > cap) return false;
      const long* v = table_.at(j);
      bool reduced = true;
      for (int k = 0; k < level && reduced; ++k) {
        const long d = dot_raw(v, table_.at(idx[k]), n_);
        reduced = 2 * std::labs(d) <= table_.norm[idx[k]];
      }
      if (!reduced) continue;
      idx[level] = j;
      if (!descend(level + 1, prod * static_cast<long double>(nj), idx, out, cap)) return false;
    }
    return true;
  }

  void emit(const std::vector<std::size_t>& idx, ShardOutput& out) const {
    const int e = e_;
    if (e > 1) {
      std::vector<Int128> gram(static_cast<std::size_t>(e * e));
      for (int a = 0; a < e; ++a)
        for (int b = 0; b < e; ++b) gram[a * e + b] = dot_raw(table_.at(idx[a]), table_.at(idx[b]), n_);
      const Int128 det = det_small(gram, e);
      if (det <= 0 || det > hsq_) return;
    } else if (table_.norm[idx[0]] > hsq_) {
      return;
    }
    const std::size_t start = out.keys.size();
    long g = 0;
    std::vector<Int128> minor(static_cast<std::size_t>(e * e));
    for (const auto& rows : subsets_) {
      for (int r = 0; r < e; ++r)
        for (int c = 0; c < e; ++c) minor[r * e + c] = table_.at(idx[c])[rows[r]];
      const long m = static_cast<long>(det_small(minor, e));
      out.keys.push_back(m);
      g = gcd_long(g, m);
    }
    if (g != 1) {
      out.keys.resize(start);
      return;
    }
    for (std::size_t i = start; i < out.keys.size(); ++i) {
      if (out.keys[i] == 0) continue;
      if (out.keys[i] < 0)
        for (std::size_t k = start; k < out.keys.size(); ++k) out.keys[k] = -out.keys[k];
      break;
    }
    ++out.count;
  }

  int n_;
  int e_;
  long hsq_;
  long double bound_;
  VectorTable table_;
  std::size_t first_count_ = 0;
  std::vector<std::vector<int>> subsets_;
};

inline std::string cache_header(int n, int e, long hsq, double safety, std::size_t shards) {
  std::ostringstream os;
  os << "# dioph-enumeration n=" << n << " e=" << e << " height_sq_max=" << hsq << " safety=" << safety
     << " shards=" << shards;
  return os.str();
}

inline std::filesystem::path cache_path(const std::string& dir, int n, int e, long hsq, double safety) {
  std::ostringstream os;
  os << "enum_n" << n << "_e" << e << "_h" << hsq << "_s" << safety << ".txt";
  return std::filesystem::path(dir) / os.str();
}

// Parse and re-validate a cache file. Lines after the last shard marker
// belong to an interrupted shard and are ignored.
inline std::map<std::size_t, ShardOutput> load_cache(const std::filesystem::path& path, const std::string& header,
                                                     int n, int e, long hsq) {
  std::map<std::size_t, ShardOutput> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::kCache, "invalid cache file " + path.string() + ": line " + std::to_string(lineno) + ": " + why);
  };
  if (!std::getline(in, line)) return out;
  ++lineno;
  if (line != header) fail("header does not match the requested enumeration");
  const std::string prefix = std::to_string(n) + " " + std::to_string(e) + " :";
  ShardOutput pending;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# shard ", 0) == 0) {
      std::istringstream is(line.substr(8));
      std::size_t id = 0, count = 0;
      std::string w1, w2;
      std::uint64_t work = 0;
      if (!(is >> id >> w1 >> count >> w2 >> work) || w1 != "complete" || w2 != "work")
        fail("malformed shard marker");
      if (count != pending.count) fail("shard marker count disagrees with the preceding entries");
      pending.work = work;
      pending.complete = true;
      out[id] = std::move(pending);
      pending = ShardOutput{};
      continue;
    }
    PluckerVec p;
    try {
      p = parse_plucker_key(line, lineno);
    } catch (const ParseError& err) {
      fail(err.what());
    }
    if (p.n != n || p.e != e) fail("entry has the wrong dimensions");
    if (prefix + " " + to_string(p.coords) != line) fail("entry is not in normalized form");
    if (!plucker_relations_check(p.coords, n, e)) fail("entry violates the Plücker relations");
    if (p.norm_sq() > hsq) fail("entry exceeds the height bound");
    for (const auto& x : p.coords) pending.keys.push_back(x.get_si());
    ++pending.count;
  }
  return out;
}

inline void append_shard(std::ostream& os, int n, int e, std::size_t width, std::size_t id, const ShardOutput& s) {
  for (std::size_t k = 0; k < s.count; ++k) {
    os << n << ' ' << e << " :";
    for (std::size_t i = 0; i < width; ++i) os << ' ' << s.keys[k * width + i];
    os << '\n';
  }
  os << "# shard " << id << " complete " << s.count << " work " << s.work << '\n';
  os.flush();
}

// Sort flat keys by (height, coordinates), dropping duplicates.
inline void finalize(Enumeration& out, std::vector<long>&& keys) {
  const std::size_t w = out.width;
  const std::size_t count = keys.size() / w;
  std::vector<long> hsq(count, 0);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t k = 0; k < w; ++k) hsq[i] += keys[i * w + k] * keys[i * w + k];
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    if (hsq[a] != hsq[b]) return hsq[a] < hsq[b];
    return std::lexicographical_compare(keys.begin() + a * w, keys.begin() + (a + 1) * w, keys.begin() + b * w,
                                        keys.begin() + (b + 1) * w);
  };
  std::sort(order.begin(), order.end(), less);
  out.coords.clear();
  out.heights_sq.clear();
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    if (k > 0 && !less(order[k - 1], i)) continue;
    out.coords.insert(out.coords.end(), keys.begin() + i * w, keys.begin() + (i + 1) * w);
    out.heights_sq.push_back(hsq[i]);
  }
}

inline Enumeration enumerate_direct(int n, int e, const BigInt& height_sq_max, const EnumerationOptions& opt) {
  if (!height_sq_max.fits_slong_p() || height_sq_max > BigInt(1) << 40)
    throw Error(ErrorKind::kBudget, "height bound is beyond the supported range");
  const long hsq = height_sq_max.get_si();
  Sweep sweep(n, e, hsq, opt.safety_factor);
  const std::size_t shards = sweep.shard_count();
  const std::string header = cache_header(n, e, hsq, opt.safety_factor, shards);
  const std::size_t width = binomial(n, e);

  std::map<std::size_t, ShardOutput> done;
  std::optional<std::ofstream> cache_out;
  std::size_t from_cache = 0;
  if (!opt.cache_dir.empty()) {
    std::filesystem::create_directories(opt.cache_dir);
    const auto path = cache_path(opt.cache_dir, n, e, hsq, opt.safety_factor);
    const bool exists = std::filesystem::exists(path) && std::filesystem::file_size(path) > 0;
    if (exists) {
      done = load_cache(path, header, n, e, hsq);
      from_cache = done.size();
    }
    cache_out.emplace(path, std::ios::app);
    if (!*cache_out) throw Error(ErrorKind::kCache, "cannot open cache file " + path.string());
    if (!exists) *cache_out << header << '\n';
  }

  std::vector<std::size_t> todo;
  for (std::size_t s = 0; s < shards; ++s)
    if (!done.count(s)) todo.push_back(s);

  const std::uint64_t cap = opt.budget ? opt.budget : UINT64_MAX;
  std::uint64_t cached_work = 0;
  for (const auto& [id, s] : done) cached_work += s.work;
  std::atomic<std::uint64_t> finished_work{cached_work};
  std::mutex mu;
  std::vector<ShardOutput> fresh(todo.size());
  parallel_for(todo.size(), opt.workers, [&](std::size_t i) {
    if (opt.budget && finished_work.load() > opt.budget) return;
    ShardOutput s = sweep.run_shard(todo[i], cap);
    if (!s.complete) {
      finished_work += cap;
      return;
    }
    finished_work += s.work;
    std::lock_guard<std::mutex> lock(mu);
    if (cache_out) append_shard(*cache_out, n, e, width, todo[i], s);
    fresh[i] = std::move(s);
  });
  for (std::size_t i = 0; i < todo.size(); ++i)
    if (fresh[i].complete) done[todo[i]] = std::move(fresh[i]);

  // Keep the longest prefix of shards within budget. Each shard's work count
  // is deterministic, so the kept set does not depend on scheduling.
  Enumeration out;
  out.n = n;
  out.e = e;
  out.width = width;
  out.height_sq_max = height_sq_max;
  out.shards_total = shards;
  out.shards_from_cache = from_cache;
  std::vector<long> keys;
  std::uint64_t cumulative = 0;
  for (std::size_t s = 0; s < shards; ++s) {
    auto it = done.find(s);
    if (it == done.end()) {
      out.truncated = true;
      break;
    }
    cumulative += it->second.work;
    if (opt.budget && cumulative > opt.budget) {
      out.truncated = true;
      break;
    }
    keys.insert(keys.end(), it->second.keys.begin(), it->second.keys.end());
    it->second.keys = {};
    ++out.shards_used;
  }
  finalize(out, std::move(keys));
  return out;
}

}  // namespace detail

// All rational subspaces of dimension e in R^n with H(B)^2 <= height_sq_max,
// each exactly once, sorted by (height, Plücker vector).
inline Enumeration enumerate_subspaces(int n, int e, const BigInt& height_sq_max, const EnumerationOptions& opt = {}) {
  if (n < 1 || e < 1 || e > n) throw Error(ErrorKind::kDimension, "need 1 <= e <= n");
  if (height_sq_max < 1) throw Error(ErrorKind::kDomain, "height_max must be at least 1");
  if (e == n) {
    Enumeration out;
    out.n = n;
    out.e = e;
    out.width = 1;
    out.height_sq_max = height_sq_max;
    out.coords = {1};
    out.heights_sq = {1};
    out.shards_total = out.shards_used = 1;
    return out;
  }
  if (2 * e > n) {
    Enumeration dual = detail::enumerate_direct(n, n - e, height_sq_max, opt);
    Enumeration out = dual;
    out.e = e;
    std::vector<long> keys;
    keys.reserve(dual.coords.size());
    for (std::size_t i = 0; i < dual.size(); ++i) {
      const std::vector<long> p(dual.plucker(i).begin(), dual.plucker(i).end());
      std::vector<long> q = complement_plucker(p, n, n - e);
      for (long x : q)
        if (x != 0) {
          if (x < 0)
            for (auto& y : q) y = -y;
          break;
        }
      keys.insert(keys.end(), q.begin(), q.end());
    }
    detail::finalize(out, std::move(keys));
    return out;
  }
  return detail::enumerate_direct(n, e, height_sq_max, opt);
}

inline Enumeration enumerate_subspaces(int n, int e, double height_max, const EnumerationOptions& opt = {}) {
  return enumerate_subspaces(n, e, height_sq_bound(height_max), opt);
}

// phi(A, B) for complementary dimensions through the Laplace expansion of
// det[Y_1..Y_e | X_1..X_d] against the Plücker coordinates of an
// orthonormal basis of A: phi = |sum_I eps(I) eta_I delta_{I^c}| / H(B).
class ComplementaryPhi {
 public:
  ComplementaryPhi(const RealSubspace& a, int e) : n_(a.n()), e_(e), bits_(a.precision_bits()) {
    if (a.d() + e != a.n()) throw Error(ErrorKind::kDimension, "complementary phi requires dim A + e = n");
    const auto a_subsets = lex_subsets(n_, a.d());
    std::vector<Real> delta;
    for (const auto& rows : a_subsets) {
      Matrix<Real> m(rows.size(), rows.size(), Real::zero(bits_));
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < a.d(); ++c) m(r, c) = a.basis()[c][rows[r]];
      delta.push_back(real_det(std::move(m)));
    }
    const auto b_subsets = lex_subsets(n_, e);
    const std::size_t big_n = b_subsets.size();
    for (std::size_t i = 0; i < big_n; ++i) {
      Real c = delta[big_n - 1 - i];
      if (laplace_sign(b_subsets[i]) < 0) c = -c;
      coef_.push_back(std::move(c));
    }
  }

  // |det[Y | X]| for integer Plücker coordinates of B (any scaling).
  Real abs_det(std::span<const long> eta) const {
    Real acc = Real::zero(bits_);
    for (std::size_t i = 0; i < coef_.size(); ++i)
      if (eta[i] != 0) acc += coef_[i] * eta[i];
    return abs(acc);
  }

  Real operator()(std::span<const long> eta, long height_sq) const {
    return abs_det(eta) / sqrt(Real(height_sq, bits_));
  }

 private:
  int n_;
  int e_;
  unsigned bits_;
  std::vector<Real> coef_;
};

// phi(A, B) for every enumerated B, in enumeration order.
inline std::vector<Real> phi_all(const RealSubspace& a, const Enumeration& en, unsigned workers = default_workers()) {
  if (a.n() != en.n) throw Error(ErrorKind::kDimension, "target and enumeration live in different ambient spaces");
  std::vector<Real> out(en.size(), Real::zero(a.precision_bits()));
  if (a.d() + en.e == a.n()) {
    const ComplementaryPhi fast(a, en.e);
    parallel_for(en.size(), workers, [&](std::size_t i) { out[i] = fast(en.plucker(i), en.height_sq(i)); });
  } else {
    parallel_for(en.size(), workers,
                 [&](std::size_t i) { out[i] = canonical_angles(a, en.real_view(i, a.precision_bits())).phi; });
  }
  return out;
}

struct ApproximationRecord {
  std::string key;
  BigInt height_sq;
  Real height;
  Real psi;
  Real phi;
  std::size_t j = 1;
};

struct ScanResult {
  int n = 0;
  int e = 0;
  std::size_t j = 1;
  BigInt height_sq_max;
  std::vector<ApproximationRecord> records;
  bool truncated = false;
  bool rational_target = false;
  std::size_t evaluated = 0;  // subspaces compared with the target
  std::size_t profiled = 0;   // of which a full angle profile was needed
  Real err;
};

// Records: B enters iff psi_j(A, B) is strictly below every psi_j seen at
// lower or equal height. Within one height the smaller psi_j comes first and
// exact ties fall back to the lexicographically smaller key.
//
// psi_j >= psi_1 >= phi, so subspaces whose phi already exceeds the current
// best cannot set a record and skip the full angle profile.
inline ScanResult scan_target(const RealSubspace& a, const Enumeration& en, std::size_t j,
                              unsigned workers = default_workers()) {
  if (a.n() != en.n) throw Error(ErrorKind::kDimension, "target and enumeration live in different ambient spaces");
  const std::size_t t = static_cast<std::size_t>(std::min(a.d(), en.e));
  if (j < 1 || j > t) throw Error(ErrorKind::kDimension, "j must satisfy 1 <= j <= min(dim A, e)");
  const unsigned bits = a.precision_bits();

  ScanResult out;
  out.n = en.n;
  out.e = en.e;
  out.j = j;
  out.height_sq_max = en.height_sq_max;
  out.truncated = en.truncated;
  out.evaluated = en.size();
  out.err = angle_error_bound(bits, a.n(), a.d(), en.e);

  const bool fast = a.d() + en.e == a.n();
  const std::vector<Real> phis = fast ? phi_all(a, en, workers) : std::vector<Real>{};
  std::optional<Real> best;
  std::size_t i = 0;
  while (i < en.size()) {
    std::size_t end = i;
    while (end < en.size() && en.height_sq(end) == en.height_sq(i)) ++end;
    std::vector<std::size_t> live;
    for (std::size_t k = i; k < end; ++k)
      if (!best || !fast || phis[k] - out.err < *best) live.push_back(k);
    std::vector<AngleProfile> prof(live.size());
    parallel_for(live.size(), workers,
                 [&](std::size_t m) { prof[m] = canonical_angles(a, en.real_view(live[m], bits)); });
    out.profiled += live.size();
    std::optional<std::size_t> pick;
    std::string pick_key;
    for (std::size_t m = 0; m < live.size(); ++m) {
      const Real& psi = prof[m].psi(j);
      if (best && !(psi < *best)) continue;
      if (pick) {
        const Real& cur = prof[*pick].psi(j);
        if (cur < psi) continue;
        if (cur == psi && !(en.key(live[m]) < pick_key)) continue;
      }
      pick = m;
      pick_key = en.key(live[m]);
    }
    if (pick) {
      const std::size_t k = live[*pick];
      const AngleProfile& p = prof[*pick];
      out.records.push_back(
          {pick_key, BigInt(en.height_sq(k)), sqrt(Real(en.height_sq(k), bits)), p.psi(j), p.phi, j});
      best = p.psi(j);
      if (p.psi(j) <= out.err) {
        out.rational_target = true;
        break;
      }
    }
    i = end;
  }
  return out;
}

struct ExponentEstimate {
  Real beta_hat;
  Real intercept;
  Real fit_residual;  // root mean square of the log-log residuals
  std::vector<ApproximationRecord> records;
};

// Least-squares line through (log H, log psi_j) over the records.
inline ExponentEstimate estimate_exponent(const std::vector<ApproximationRecord>& records) {
  std::set<BigInt> heights;
  for (const auto& r : records) heights.insert(r.height_sq);
  if (records.size() < 2 || heights.size() < 2)
    throw Error(ErrorKind::kDomain, "exponent estimate needs at least two records with distinct heights");
  const unsigned bits = records.front().psi.bits();
  std::vector<Real> xs, ys;
  for (const auto& r : records) {
    if (r.psi.sign() <= 0) throw Error(ErrorKind::kDomain, "record with zero proximity (rational target)");
    xs.push_back(log(r.height));
    ys.push_back(log(r.psi));
  }
  const long m = static_cast<long>(xs.size());
  Real mx = Real::zero(bits), my = Real::zero(bits);
  for (long i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  Real sxx = Real::zero(bits), sxy = Real::zero(bits);
  for (long i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const Real slope = sxy / sxx;
  ExponentEstimate est;
  est.beta_hat = -slope;
  est.intercept = my - slope * mx;
  Real ss = Real::zero(bits);
  for (long i = 0; i < m; ++i) {
    const Real r = ys[i] - (est.intercept + slope * xs[i]);
    ss += r * r;
  }
  est.fit_residual = sqrt(ss / m);
  est.records = records;
  return est;
}

// CSV with a commented header and footer:
//   height,psi_j,phi,key
inline std::string format_scan_csv(const ScanResult& scan, const std::optional<ExponentEstimate>& est) {
  std::ostringstream os;
  os << "# scan n=" << scan.n << " e=" << scan.e << " j=" << scan.j << " height_sq_max=" << scan.height_sq_max
     << " evaluated=" << scan.evaluated << " truncated=" << (scan.truncated ? 1 : 0)
     << " rational_target=" << (scan.rational_target ? 1 : 0) << '\n';
  os << "height,psi_j,phi,key\n";
  for (const auto& r : scan.records) os << r.height.str() << ',' << r.psi.str() << ',' << r.phi.str() << ',' << r.key << '\n';
  if (est) os << "# beta_hat=" << est->beta_hat.str() << " fit_residual=" << est->fit_residual.str() << '\n';
  return os.str();
}

}  // namespace dioph
