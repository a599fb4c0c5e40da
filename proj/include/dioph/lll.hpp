#pragma once

// Exact LLL reduction driven by a rational Gram matrix.
//
// Working from the Gram matrix lets the same routine reduce ordinary integer
// bases (Gram = B^T B) and projected lattices whose basis vectors are only
// known through their inner products.

#include <cstddef>
#include <vector>

#include "dioph/exactcore.hpp"

namespace dioph {

using RatMat = Matrix<BigRat>;

namespace detail {

inline BigInt round_rational(const BigRat& x) {
  BigRat shifted = x + BigRat(1, 2);
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return q;
}

// Gram-Schmidt coefficients mu and squared norms bstar from a Gram matrix.
inline void gram_schmidt(const RatMat& gram, RatMat& mu, std::vector<BigRat>& bstar) {
  const std::size_t m = gram.rows();
  mu = RatMat(m, m, BigRat(0));
  bstar.assign(m, BigRat(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      BigRat s = gram(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= mu(j, k) * mu(i, k) * bstar[k];
      mu(i, j) = s / bstar[j];
    }
    BigRat s = gram(i, i);
    for (std::size_t k = 0; k < i; ++k) s -= mu(i, k) * mu(i, k) * bstar[k];
    bstar[i] = s;
  }
}

}  // namespace detail

// Returns a unimodular T (m x m) such that the vectors b'_j = sum_i T(i,j) b_i
// are LLL-reduced (delta = 3/4). The Gram matrix must be positive definite.
inline IntMat lll_transform(const RatMat& gram0, const BigRat& delta = BigRat(3, 4)) {
  const std::size_t m = gram0.rows();
  IntMat t = IntMat::identity(m, BigInt(0), BigInt(1));
  if (m <= 1) return t;
  RatMat gram = gram0;

  // b_k <- b_k - r b_j
  auto reduce = [&](std::size_t k, std::size_t j, const BigInt& r) {
    const BigRat rq(r);
    for (std::size_t i = 0; i < m; ++i) t(i, k) -= r * t(i, j);
    const BigRat gkk = gram(k, k) - 2 * rq * gram(k, j) + rq * rq * gram(j, j);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == k) continue;
      gram(k, i) -= rq * gram(j, i);
      gram(i, k) = gram(k, i);
    }
    gram(k, k) = gkk;
  };
  auto swap = [&](std::size_t a, std::size_t b) {
    t.swap_columns(a, b);
    gram.swap_columns(a, b);
    gram.swap_rows(a, b);
  };

  RatMat mu;
  std::vector<BigRat> bstar;
  std::size_t k = 1;
  while (k < m) {
    detail::gram_schmidt(gram, mu, bstar);
    for (std::size_t jj = k; jj-- > 0;) {
      const BigInt r = detail::round_rational(mu(k, jj));
      if (r != 0) {
        reduce(k, jj, r);
        detail::gram_schmidt(gram, mu, bstar);
      }
    }
    if (bstar[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * bstar[k - 1]) {
      ++k;
    } else {
      swap(k, k - 1);
      k = (k > 1) ? k - 1 : 1;
    }
  }
  return t;
}

// LLL-reduce the columns of an integer basis matrix.
inline IntMat lll_reduce_columns(const IntMat& basis) {
  const std::size_t m = basis.cols();
  RatMat gram(m, m, BigRat(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      BigInt s = 0;
      for (std::size_t r = 0; r < basis.rows(); ++r) s += basis(r, i) * basis(r, j);
      gram(i, j) = BigRat(s);
    }
  const IntMat t = lll_transform(gram);
  IntMat out(basis.rows(), m, BigInt(0));
  for (std::size_t r = 0; r < basis.rows(); ++r)
    for (std::size_t j = 0; j < m; ++j) {
      BigInt s = 0;
      for (std::size_t i = 0; i < m; ++i) s += basis(r, i) * t(i, j);
      out(r, j) = s;
    }
  return out;
}

}  // namespace dioph
