#pragma once

// Seeded generators for reals, vectors and subspaces. Every random draw in the
// library goes through std::mt19937_64 so runs are reproducible from a seed.

#include <cstdint>
#include <random>
#include <vector>

#include "dioph/angles.hpp"
#include "dioph/exactcore.hpp"
#include "dioph/real.hpp"

namespace dioph {

// Uniform in [-1, 1), with all `bits` mantissa bits random.
inline Real random_real(std::mt19937_64& rng, unsigned bits) {
  mpz_class m = 0;
  for (unsigned filled = 0; filled < bits + 1; filled += 64) {
    m <<= 64;
    const std::uint64_t w = rng();
    m += mpz_class(static_cast<unsigned long>(w >> 32)) * mpz_class(4294967296UL) +
         mpz_class(static_cast<unsigned long>(w & 0xffffffffULL));
  }
  const unsigned total = ((bits + 1 + 63) / 64) * 64;
  Real r(m, bits);
  r = ldexp(r, -static_cast<long>(total) + 1);
  return r - 1;
}

inline RealVec random_real_vector(std::mt19937_64& rng, int n, unsigned bits) {
  RealVec v;
  for (int i = 0; i < n; ++i) v.push_back(random_real(rng, bits));
  return v;
}

// Span of d random vectors in R^n; redrawn in the (measure zero) dependent case.
inline RealSubspace random_real_subspace(std::mt19937_64& rng, int n, int d, unsigned bits) {
  for (;;) {
    std::vector<RealVec> vs;
    for (int i = 0; i < d; ++i) vs.push_back(random_real_vector(rng, n, bits));
    try {
      return RealSubspace::from_vectors(std::move(vs), bits);
    } catch (const Error&) {
    }
  }
}

inline IntVec random_int_vector(std::mt19937_64& rng, int n, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntVec v;
  for (int i = 0; i < n; ++i) v.emplace_back(dist(rng));
  return v;
}

// e independent integer vectors with entries in [-bound, bound].
inline std::vector<IntVec> random_independent_int_vectors(std::mt19937_64& rng, int n, int e, long bound) {
  for (;;) {
    std::vector<IntVec> vs;
    for (int i = 0; i < e; ++i) vs.push_back(random_int_vector(rng, n, bound));
    if (gram_det_sq(IntMat::from_columns(vs)) != 0) return vs;
  }
}

}  // namespace dioph
