#pragma once

// Canonical (principal) angles between real subspaces of R^n.
//
// Cosines of the angles are the singular values of Q_A^T Q_B for orthonormal
// bases Q_A, Q_B. Sines of small angles are taken instead from the singular
// values of the projection complement (I - P_A) Q_B, which keeps their
// relative accuracy where 1 - cos^2 would cancel.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "dioph/error.hpp"
#include "dioph/exactcore.hpp"
#include "dioph/jacobi_svd.hpp"
#include "dioph/matrix.hpp"
#include "dioph/real.hpp"

namespace dioph {

using RealVec = std::vector<Real>;

inline RealVec to_real(const IntVec& v, unsigned bits) {
  RealVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x, bits);
  return out;
}

inline Real real_dot(const RealVec& a, const RealVec& b) { return dot(a, b); }
inline Real real_norm(const RealVec& a) { return sqrt(dot(a, a)); }

// Orthonormal basis of a d-dimensional subspace, at a stated precision.
class RealSubspace {
 public:
  RealSubspace() = default;

  // Modified Gram-Schmidt with one re-orthogonalization pass. Vectors are
  // widened to `bits` first.
  static RealSubspace from_vectors(std::vector<RealVec> vectors, unsigned bits) {
    if (vectors.empty()) throw Error(ErrorKind::kDimension, "a subspace needs at least one vector");
    const std::size_t n = vectors.front().size();
    if (vectors.size() > n) throw Error(ErrorKind::kDependent, "more vectors than the ambient dimension");
    for (auto& v : vectors) {
      if (v.size() != n) throw Error(ErrorKind::kDimension, "vectors of unequal length");
      for (auto& x : v) x.widen(bits);
    }
    const Real threshold = ldexp(Real::one(bits), -static_cast<long>(bits) + 32);
    std::vector<RealVec> q;
    for (auto& v : vectors) {
      const Real original = real_norm(v);
      if (original.is_zero()) throw Error(ErrorKind::kZeroVector, "zero vector in basis");
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : q) {
          const Real c = real_dot(v, b);
          for (std::size_t i = 0; i < n; ++i) v[i] -= c * b[i];
        }
      }
      const Real nv = real_norm(v);
      if (nv <= threshold * original) throw Error(ErrorKind::kDependent, "vectors are linearly dependent");
      for (auto& x : v) x /= nv;
      q.push_back(std::move(v));
    }
    RealSubspace s;
    s.n_ = static_cast<int>(n);
    s.basis_ = std::move(q);
    s.bits_ = bits;
    return s;
  }

  static RealSubspace from_integer_vectors(const std::vector<IntVec>& vectors, unsigned bits) {
    std::vector<RealVec> rv;
    for (const auto& v : vectors) rv.push_back(to_real(v, bits));
    return from_vectors(std::move(rv), bits);
  }

  int n() const { return n_; }
  int d() const { return static_cast<int>(basis_.size()); }
  unsigned precision_bits() const { return bits_; }
  const std::vector<RealVec>& basis() const { return basis_; }

  Matrix<Real> matrix() const { return Matrix<Real>::from_columns(basis_); }

  // Largest |q_i . q_j - delta_ij|.
  Real orthonormality_defect() const {
    Real worst = Real::zero(bits_);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = i; j < basis_.size(); ++j) {
        Real g = real_dot(basis_[i], basis_[j]);
        if (i == j) g -= 1;
        worst = max(worst, abs(g));
      }
    return worst;
  }

 private:
  int n_ = 0;
  std::vector<RealVec> basis_;
  unsigned bits_ = kDefaultPrecisionBits;
};

struct AngleProfile {
  std::vector<Real> sines;  // ascending, in [0, 1]
  Real phi;                 // product of the sines
  Real err;                 // absolute error bound on each sine
  Real phi_err;             // absolute error bound on phi

  std::size_t t() const { return sines.size(); }
  // 1-based, matching psi_j.
  const Real& psi(std::size_t j) const {
    if (j == 0 || j > sines.size()) throw Error(ErrorKind::kDimension, "angle index out of range");
    return sines[j - 1];
  }
};

// First-order error bound for sines computed at `bits` in ambient dimension n.
inline Real angle_error_bound(unsigned bits, int n, int d, int e) {
  return ldexp(Real(static_cast<long>(64 * (n + d + e)), bits), -static_cast<long>(bits));
}

// psi(X, Y) = |X ∧ Y| / (|X| |Y|), with the wedge norm summed over 2x2 minors
// so that nearly colinear vectors keep relative accuracy.
inline Real sin_angle(const RealVec& x, const RealVec& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::kDimension, "vectors of unequal length");
  const Real nx = real_norm(x);
  const Real ny = real_norm(y);
  if (nx.is_zero() || ny.is_zero()) throw Error(ErrorKind::kZeroVector, "angle with the zero vector");
  Real w = Real::zero(std::max(nx.bits(), ny.bits()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const Real m = x[i] * y[j] - x[j] * y[i];
      w += m * m;
    }
  Real s = sqrt(w) / (nx * ny);
  if (s > Real::one(s.bits())) s = Real::one(s.bits());
  return s;
}

namespace detail {

// Q_A^T Q_B as a d x e matrix.
inline Matrix<Real> cross_gram(const RealSubspace& a, const RealSubspace& b, unsigned bits) {
  Matrix<Real> c(static_cast<std::size_t>(a.d()), static_cast<std::size_t>(b.d()), Real::zero(bits));
  for (int i = 0; i < a.d(); ++i)
    for (int j = 0; j < b.d(); ++j) c(i, j) = real_dot(a.basis()[i], b.basis()[j]);
  return c;
}

inline void check_compatible(const RealSubspace& a, const RealSubspace& b) {
  if (a.d() < 1 || b.d() < 1) throw Error(ErrorKind::kDimension, "subspaces must have dimension >= 1");
  if (a.n() != b.n()) throw Error(ErrorKind::kDimension, "subspaces live in different ambient spaces");
}

}  // namespace detail

inline AngleProfile canonical_angles(const RealSubspace& a, const RealSubspace& b) {
  detail::check_compatible(a, b);
  const unsigned bits = std::max(a.precision_bits(), b.precision_bits());
  const int n = a.n();
  const bool project_b = b.d() <= a.d();
  const RealSubspace& big = project_b ? a : b;
  const RealSubspace& small = project_b ? b : a;
  const std::size_t t = static_cast<std::size_t>(small.d());

  const Matrix<Real> c = detail::cross_gram(big, small, bits);  // dim(big) x t
  const auto cos_svd = jacobi_svd(c);

  // Residual of the smaller basis after projection onto the larger subspace.
  Matrix<Real> r(static_cast<std::size_t>(n), t, Real::zero(bits));
  for (std::size_t j = 0; j < t; ++j) {
    RealVec col = small.basis()[j];
    for (int i = 0; i < big.d(); ++i) {
      const Real& coef = c(static_cast<std::size_t>(i), j);
      for (int k = 0; k < n; ++k) col[k] -= coef * big.basis()[i][k];
    }
    for (int k = 0; k < n; ++k) r(static_cast<std::size_t>(k), j) = col[k];
  }
  const auto sin_svd = jacobi_svd(std::move(r));

  const Real one = Real::one(bits);
  const Real crossover = sqrt(Real(1L, bits) / 2);
  AngleProfile out;
  out.sines.reserve(t);
  for (std::size_t i = 0; i < t; ++i) {
    const Real& s_direct = sin_svd.sigma[t - 1 - i];  // ascending
    Real cosv = min(cos_svd.sigma[i], one);            // descending
    Real s = s_direct <= crossover ? s_direct : sqrt(max(one - cosv * cosv, Real::zero(bits)));
    out.sines.push_back(min(s, one));
  }
  std::sort(out.sines.begin(), out.sines.end());
  out.err = angle_error_bound(bits, n, a.d(), b.d());
  out.phi = one;
  for (const auto& s : out.sines) out.phi *= s;
  out.phi_err = out.err * static_cast<long>(t);
  return out;
}

inline Real phi(const RealSubspace& a, const RealSubspace& b) { return canonical_angles(a, b).phi; }

// Principal vector pairs (X_i in A, Y_i in B), unit length, ordered by
// ascending angle, with X_i . Y_j = delta_ij cos(theta_i).
struct PrincipalPairs {
  std::vector<RealVec> x;
  std::vector<RealVec> y;
  std::vector<Real> cosines;  // descending
};

inline PrincipalPairs principal_pairs(const RealSubspace& a, const RealSubspace& b) {
  detail::check_compatible(a, b);
  const unsigned bits = std::max(a.precision_bits(), b.precision_bits());
  const int n = a.n();
  // Work with the tall orientation of the cross Gram matrix: C = Q_tall^T Q_wide.
  const bool a_tall = a.d() >= b.d();
  const RealSubspace& tall = a_tall ? a : b;
  const RealSubspace& wide = a_tall ? b : a;
  const Matrix<Real> c = detail::cross_gram(tall, wide, bits);
  const std::size_t d = c.rows(), t = c.cols();
  const auto svd = jacobi_svd(c);  // C V = U S, U is d x t, V is t x t

  // Complete the tall-side coefficient vectors where sigma vanished.
  std::vector<RealVec> ucols;
  for (std::size_t i = 0; i < t; ++i) ucols.push_back(svd.u.column(i));
  const Real tiny = ldexp(Real::one(bits), -static_cast<long>(bits) / 2);
  for (std::size_t i = 0; i < t; ++i) {
    if (svd.sigma[i] > tiny) continue;
    for (std::size_t cand = 0; cand < d; ++cand) {
      RealVec v(d, Real::zero(bits));
      v[cand] = Real::one(bits);
      for (std::size_t k = 0; k < t; ++k) {
        if (k == i || (svd.sigma[k] <= tiny && k > i)) continue;
        const Real proj = real_dot(v, ucols[k]);
        for (std::size_t r = 0; r < d; ++r) v[r] -= proj * ucols[k][r];
      }
      const Real nv = real_norm(v);
      if (nv > Real(0.5, bits)) {
        for (auto& xv : v) xv /= nv;
        ucols[i] = v;
        break;
      }
    }
  }

  PrincipalPairs out;
  for (std::size_t i = 0; i < t; ++i) {
    RealVec tv(static_cast<std::size_t>(n), Real::zero(bits));
    RealVec wv(static_cast<std::size_t>(n), Real::zero(bits));
    for (std::size_t k = 0; k < d; ++k)
      for (int r = 0; r < n; ++r) tv[r] += ucols[i][k] * tall.basis()[k][r];
    for (std::size_t k = 0; k < t; ++k)
      for (int r = 0; r < n; ++r) wv[r] += svd.v(k, i) * wide.basis()[k][r];
    out.x.push_back(a_tall ? std::move(tv) : std::move(wv));
    out.y.push_back(a_tall ? std::move(wv) : std::move(tv));
    out.cosines.push_back(svd.sigma[i]);
  }
  return out;
}

// Determinant with partial pivoting.
inline Real real_det(Matrix<Real> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::kDimension, "determinant of a non-square matrix");
  Real det = Real::one(n ? m(0, 0).bits() : kDefaultPrecisionBits);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(m(i, k)) > abs(m(p, k))) p = i;
    if (m(p, k).is_zero()) return Real::zero(det.bits());
    if (p != k) {
      m.swap_rows(p, k);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Real f = m(i, k) / m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

// sqrt(det(X^T X)) for the given vectors.
inline Real real_generalized_det(const std::vector<RealVec>& vs) {
  const std::size_t k = vs.size();
  Matrix<Real> g(k, k, Real::zero(vs.front().front().bits()));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g(i, j) = real_dot(vs[i], vs[j]);
  return sqrt(abs(real_det(std::move(g))));
}

// phi(A, B) = |det[X_1..X_d, Y_1..Y_e]| / (D(X) H(B)) for d + e = n, where
// the Y's are a lattice basis of B ∩ Z^n and H(B)^2 = height_sq.
inline Real phi_via_det(const RealSubspace& a, const IntMat& lattice_basis, const BigInt& height_sq) {
  const int n = a.n();
  const int d = a.d();
  const int e = static_cast<int>(lattice_basis.cols());
  if (d + e != n || static_cast<int>(lattice_basis.rows()) != n)
    throw Error(ErrorKind::kDimension, "phi_via_det requires dim A + dim B = n");
  const unsigned bits = a.precision_bits();
  Matrix<Real> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n), Real::zero(bits));
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < n; ++r) m(r, c) = a.basis()[c][r];
  for (int c = 0; c < e; ++c)
    for (int r = 0; r < n; ++r) m(r, d + c) = Real(lattice_basis(r, c), bits);
  const Real dx = real_generalized_det(a.basis());
  const Real h = sqrt(Real(height_sq, bits));
  return abs(real_det(std::move(m))) / (dx * h);
}

}  // namespace dioph
