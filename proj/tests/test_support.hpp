#pragma once

// Shared helpers for the unit suites: seeded generators and small brute-force
// oracles that deliberately avoid the library's own algorithms.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "dioph/exactcore.hpp"

namespace dioph::testing {

inline IntVec random_int_vector(std::mt19937_64& rng, int n, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntVec v;
  for (int i = 0; i < n; ++i) v.emplace_back(dist(rng));
  return v;
}

// Leibniz expansion over all permutations; exponential but independent of
// elimination-based determinants.
inline BigInt leibniz_det(const IntMat& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  BigInt total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    BigInt term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    if (inversions % 2) total -= term;
    else total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline IntMat gram_matrix(const IntMat& m) {
  IntMat g(m.cols(), m.cols(), BigInt(0));
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t r = 0; r < m.rows(); ++r) g(i, j) += m(r, i) * m(r, j);
  return g;
}

// Random unimodular n x n matrix as a product of elementary operations.
inline IntMat random_unimodular(std::mt19937_64& rng, int n, int steps) {
  IntMat u = IntMat::identity(static_cast<std::size_t>(n), BigInt(0), BigInt(1));
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> mult(-2, 2);
  for (int s = 0; s < steps; ++s) {
    const int a = pick(rng);
    int b = pick(rng);
    if (a == b) b = (b + 1) % n;
    const int k = mult(rng);
    for (int r = 0; r < n; ++r) u(r, a) += k * u(r, b);
    if (s % 5 == 0) u.swap_columns(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }
  return u;
}

}  // namespace dioph::testing

namespace dioph::testing {

// Independent count of rational planes in R^4 with H^2 <= hsq: primitive,
// sign-canonical integer vectors on the quadric p12 p34 - p13 p24 + p14 p23 = 0.
inline std::vector<std::vector<long>> plane_keys_r4(long hsq) {
  std::vector<std::vector<long>> out;
  auto isqrt = [](long x) {
    long r = 0;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
  };
  auto gcd = [](long a, long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
      long t = a % b;
      a = b;
      b = t;
    }
    return a;
  };
  auto keep = [&](const std::vector<long>& p) {
    long g = 0;
    for (long x : p) g = gcd(g, x);
    if (g != 1) return;
    for (long x : p) {
      if (x == 0) continue;
      if (x > 0) out.push_back(p);
      return;
    }
  };
  const long r = isqrt(hsq);
  for (long a = 0; a <= r; ++a) {
    const long ra = hsq - a * a;
    for (long b = -isqrt(ra); b <= isqrt(ra); ++b) {
      const long rb = ra - b * b;
      for (long c = -isqrt(rb); c <= isqrt(rb); ++c) {
        const long rc = rb - c * c;
        for (long d = -isqrt(rc); d <= isqrt(rc); ++d) {
          const long rd = rc - d * d;
          for (long f = -isqrt(rd); f <= isqrt(rd); ++f) {
            const long rf = rd - f * f;
            // a*g - b*f + c*d = 0 with coordinates (a, b, c, d, f, g).
            if (a != 0) {
              const long num = b * f - c * d;
              if (num % a) continue;
              const long g = num / a;
              if (g * g <= rf) keep({a, b, c, d, f, g});
            } else if (b * f == c * d) {
              for (long g = -isqrt(rf); g <= isqrt(rf); ++g) keep({a, b, c, d, f, g});
            }
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Primitive sign-canonical integer vectors of R^n with squared norm <= hsq.
inline std::size_t primitive_vector_count(int n, long hsq) {
  std::size_t count = 0;
  std::vector<long> cur(static_cast<std::size_t>(n));
  auto rec = [&](auto&& self, int pos, long used) -> void {
    if (pos == n) {
      long g = 0;
      for (long x : cur) g = std::gcd(g, x < 0 ? -x : x);
      if (g != 1) return;
      for (long x : cur) {
        if (x == 0) continue;
        if (x > 0) ++count;
        return;
      }
      return;
    }
    for (long x = -hsq; x <= hsq; ++x) {
      if (used + x * x > hsq) continue;
      cur[pos] = x;
      self(self, pos + 1, used + x * x);
    }
  };
  rec(rec, 0, 0);
  return count;
}

}  // namespace dioph::testing
