#pragma once

// Exact integer linear algebra on column bases: generalized determinants,
// exterior products (Plücker coordinates) and their normalization.
//
// Subset order. Every Plücker vector in the library indexes its coordinates
// by the e-subsets {i_1 < ... < i_e} of {0, ..., n-1} in lexicographic order,
// e.g. for (n, e) = (4, 2): 01, 02, 03, 12, 13, 23.

#include <algorithm>
#include <cstddef>
#include <gmpxx.h>
#include <numeric>
#include <string>
#include <vector>

#include "dioph/error.hpp"
#include "dioph/matrix.hpp"

namespace dioph {

using BigInt = mpz_class;
using BigRat = mpq_class;
using IntVec = std::vector<BigInt>;
using IntMat = Matrix<BigInt>;

inline std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

// All e-subsets of {0..n-1}, lexicographic.
inline std::vector<std::vector<int>> lex_subsets(int n, int e) {
  std::vector<std::vector<int>> out;
  if (e < 0 || e > n) return out;
  std::vector<int> s(static_cast<std::size_t>(e));
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    out.push_back(s);
    int i = e - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - e + i) --i;
    if (i < 0) break;
    ++s[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < e; ++k) s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k - 1)] + 1;
  }
  return out;
}

// Position of a sorted subset in lex_subsets(n, e).
inline std::size_t subset_index(const std::vector<int>& subset, int n) {
  const int e = static_cast<int>(subset.size());
  std::size_t idx = 0;
  int prev = -1;
  for (int k = 0; k < e; ++k) {
    for (int v = prev + 1; v < subset[static_cast<std::size_t>(k)]; ++v) idx += binomial(n - v - 1, e - k - 1);
    prev = subset[static_cast<std::size_t>(k)];
  }
  return idx;
}

// Fraction-free Gaussian elimination; exact determinant of a square matrix.
inline BigInt bareiss_det(IntMat m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::kDimension, "determinant of a non-square matrix");
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline IntMat int_matrix_from_columns(const std::vector<IntVec>& columns) {
  return IntMat::from_columns(columns);
}

// D(X_1..X_e)^2 = det(M^T M) for the columns of M.
inline BigInt gram_det_sq(const IntMat& m) {
  if (m.cols() > m.rows()) throw Error(ErrorKind::kDimension, "more columns than the ambient dimension");
  const std::size_t e = m.cols();
  IntMat gram(e, e, BigInt(0));
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = i; j < e; ++j) {
      BigInt s = 0;
      for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, i) * m(r, j);
      gram(i, j) = s;
      gram(j, i) = s;
    }
  return bareiss_det(gram);
}

// The e x e minor of m on the given rows (all columns).
inline BigInt row_minor(const IntMat& m, const std::vector<int>& rows) {
  const std::size_t e = rows.size();
  IntMat sub(e, e, BigInt(0));
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) sub(i, j) = m(static_cast<std::size_t>(rows[i]), j);
  return bareiss_det(std::move(sub));
}

// All e x e minors of the n x e matrix m, lexicographic in the row subset.
inline IntVec wedge_plucker(const IntMat& m) {
  const int n = static_cast<int>(m.rows());
  const int e = static_cast<int>(m.cols());
  if (e > n || e == 0) throw Error(ErrorKind::kDimension, "wedge needs 1 <= e <= n columns");
  IntVec out;
  bool nonzero = false;
  for (const auto& s : lex_subsets(n, e)) {
    out.push_back(row_minor(m, s));
    if (out.back() != 0) nonzero = true;
  }
  if (!nonzero) throw Error(ErrorKind::kDependent, "columns are linearly dependent (all minors vanish)");
  return out;
}

inline BigInt content(const IntVec& v) {
  BigInt g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

// Flip so that the first nonzero entry is positive. Returns the applied sign.
inline int canonicalize_sign(IntVec& v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : v) y = -y;
      return -1;
    }
    return 1;
  }
  return 1;
}

struct PluckerVec {
  int n = 0;
  int e = 0;
  IntVec coords;  // length C(n, e), gcd 1, first nonzero positive

  BigInt norm_sq() const {
    BigInt s = 0;
    for (const auto& c : coords) s += c * c;
    return s;
  }
  friend bool operator==(const PluckerVec&, const PluckerVec&) = default;
};

inline IntVec primitive_canonical(IntVec raw) {
  const BigInt g = content(raw);
  if (g == 0) throw Error(ErrorKind::kZeroVector, "cannot normalize the zero vector");
  for (auto& x : raw) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  canonicalize_sign(raw);
  return raw;
}

inline PluckerVec normalize_plucker(IntVec raw, int n, int e) {
  if (raw.size() != binomial(n, e)) throw Error(ErrorKind::kDimension, "Plücker vector has the wrong length");
  return PluckerVec{n, e, primitive_canonical(std::move(raw))};
}

// Laplace expansion of det[M1 | M2] along the first e columns, from the
// Plücker vectors eta of M1 (n x e) and delta of M2 (n x (n-e)):
//   det = sum_i eps(i) * eta_i * delta_{N+1-i},
// with eps(i) = (-1)^(sum of the 1-based rows in subset i - e(e+1)/2).
// The complement of the i-th e-subset is the (N+1-i)-th (n-e)-subset.
inline int laplace_sign(const std::vector<int>& subset) {
  long s = 0;
  for (int r : subset) s += r + 1;
  const long e = static_cast<long>(subset.size());
  return ((s - e * (e + 1) / 2) % 2 == 0) ? 1 : -1;
}

template <class T>
T laplace_pairing(const std::vector<T>& eta, const std::vector<T>& delta, int n, int e) {
  const auto subsets = lex_subsets(n, e);
  const std::size_t big_n = subsets.size();
  if (eta.size() != big_n || delta.size() != big_n)
    throw Error(ErrorKind::kDimension, "Laplace pairing needs C(n,e) coordinates on both sides");
  T acc = eta[0];
  acc -= eta[0];
  for (std::size_t i = 0; i < big_n; ++i) {
    if (laplace_sign(subsets[i]) > 0)
      acc += eta[i] * delta[big_n - 1 - i];
    else
      acc -= eta[i] * delta[big_n - 1 - i];
  }
  return acc;
}

inline std::string to_string(const IntVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += v[i].get_str();
  }
  return s;
}

}  // namespace dioph
