#pragma once

// One-sided (Hestenes) Jacobi SVD for small dense matrices.
//
// Plane rotations are applied to column pairs of A until all columns are
// mutually orthogonal to working precision: A V = W, sigma_i = |w_i|. The
// method computes small singular values to high relative accuracy, which is
// what the angle kernels rely on.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "dioph/error.hpp"
#include "dioph/matrix.hpp"
#include "dioph/real.hpp"

namespace dioph {

template <class T>
struct SvdResult {
  std::vector<T> sigma;  // descending
  Matrix<T> u;           // m x k, columns w_i / sigma_i (zero where sigma_i == 0)
  Matrix<T> v;           // k x k orthogonal
  int sweeps = 0;
};

// Relative orthogonality tolerance for columns at a given precision.
template <class T>
T jacobi_tolerance(const T& like);

template <>
inline Real jacobi_tolerance<Real>(const Real& like) {
  return ldexp(Real::one(like.bits()), -static_cast<long>(like.bits()) + 4);
}

template <class T>
SvdResult<T> jacobi_svd(Matrix<T> a, int max_sweeps = 80) {
  const std::size_t m = a.rows();
  const std::size_t k = a.cols();
  if (k == 0) return {};
  const T zero = a(0, 0) - a(0, 0);
  const T one = zero + 1;
  Matrix<T> v = Matrix<T>::identity(k, zero, one);
  const T tol = jacobi_tolerance<T>(zero);
  // Columns below this squared norm are treated as exact zeros.
  T frob = zero;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < k; ++c) frob += a(r, c) * a(r, c);
  const T negligible = frob * tol * tol;

  int sweep = 0;
  bool converged = (k == 1);
  while (!converged && sweep < max_sweeps) {
    ++sweep;
    converged = true;
    for (std::size_t p = 0; p + 1 < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        T alpha = zero, beta = zero, gamma = zero;
        for (std::size_t r = 0; r < m; ++r) {
          alpha += a(r, p) * a(r, p);
          beta += a(r, q) * a(r, q);
          gamma += a(r, p) * a(r, q);
        }
        if (gamma.is_zero() || alpha <= negligible || beta <= negligible) continue;
        if (abs(gamma) <= tol * sqrt(alpha * beta)) continue;
        converged = false;
        const T zeta = (beta - alpha) / (2 * gamma);
        T t = one / (abs(zeta) + sqrt(one + zeta * zeta));
        if (zeta.sign() < 0) t = -t;
        const T c = one / sqrt(one + t * t);
        const T s = c * t;
        for (std::size_t r = 0; r < m; ++r) {
          const T ap = a(r, p);
          const T aq = a(r, q);
          a(r, p) = c * ap - s * aq;
          a(r, q) = s * ap + c * aq;
        }
        for (std::size_t r = 0; r < k; ++r) {
          const T vp = v(r, p);
          const T vq = v(r, q);
          v(r, p) = c * vp - s * vq;
          v(r, q) = s * vp + c * vq;
        }
      }
    }
  }
  if (!converged)
    throw Error(ErrorKind::kPrecision, "Jacobi SVD did not converge at " + std::to_string(zero.bits()) + " bits");

  std::vector<T> sigma(k, zero);
  for (std::size_t c = 0; c < k; ++c) {
    T s = zero;
    for (std::size_t r = 0; r < m; ++r) s += a(r, c) * a(r, c);
    sigma[c] = sqrt(s);
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[y] < sigma[x]; });

  SvdResult<T> out;
  out.sweeps = sweep;
  out.u = Matrix<T>(m, k, zero);
  out.v = Matrix<T>(k, k, zero);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t c = order[i];
    out.sigma.push_back(sigma[c]);
    for (std::size_t r = 0; r < k; ++r) out.v(r, i) = v(r, c);
    if (!sigma[c].is_zero())
      for (std::size_t r = 0; r < m; ++r) out.u(r, i) = a(r, c) / sigma[c];
  }
  return out;
}

}  // namespace dioph

namespace dioph {

// Orthonormal basis of the approximate null space of A (r x n): the right
// singular vectors of the `dim` smallest singular values. `residuals`
// receives those singular values; `gap` the next larger one (0 if none).
struct NullSpace {
  std::vector<std::vector<Real>> basis;
  std::vector<Real> residuals;
  Real gap;
};

inline NullSpace numerical_null_space(const Matrix<Real>& a, std::size_t dim) {
  const std::size_t n = a.cols();
  if (dim > n) throw Error(ErrorKind::kDimension, "null space dimension exceeds column count");
  // Pad with zero rows so the column count never exceeds the row count.
  Matrix<Real> padded(std::max(a.rows(), n), n, Real::zero(a(0, 0).bits()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c) padded(r, c) = a(r, c);
  const auto svd = jacobi_svd(std::move(padded));
  NullSpace out{{}, {}, Real::zero(a(0, 0).bits())};
  for (std::size_t i = n - dim; i < n; ++i) {
    out.basis.push_back(svd.v.column(i));
    out.residuals.push_back(svd.sigma[i]);
  }
  if (n - dim > 0) out.gap = svd.sigma[n - dim - 1];
  return out;
}

}  // namespace dioph
