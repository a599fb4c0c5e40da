#pragma once

// Constructive approximation of a real subspace F by rational ones: a flag
// basis of F with forced zero coordinates, simultaneous Dirichlet
// approximation of its coordinates, the resulting rational subspace, the
// direct-sum angle inequalities behind the construction, and a bounded
// going-up search.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dioph/angles.hpp"
#include "dioph/error.hpp"
#include "dioph/exactcore.hpp"
#include "dioph/grassmann.hpp"
#include "dioph/jacobi_svd.hpp"
#include "dioph/lll.hpp"
#include "dioph/normal_form.hpp"
#include "dioph/parallel.hpp"
#include "dioph/real.hpp"

namespace dioph {

// ---------------------------------------------------------------- flag basis

struct FlagBasis {
  int n = 0;
  int d = 0;
  unsigned bits = 0;
  std::vector<RealVec> f;
  std::vector<std::vector<int>> forced_zeros;  // last d - l coordinates of f_l (1-based l)
  std::vector<std::vector<int>> retained;      // coordinates that are not exactly zero

  int j() const { return static_cast<int>(f.size()); }

  std::size_t N() const {
    std::size_t total = 0;
    for (const auto& r : retained) total += r.size();
    return total;
  }

  static std::size_t max_N(int n, int d, int j) {
    return static_cast<std::size_t>(j * (n - d) + j * (j + 1) / 2);
  }

  // The retained coordinates of f_1, ..., f_j, concatenated.
  RealVec x() const {
    RealVec out;
    for (std::size_t l = 0; l < f.size(); ++l)
      for (int c : retained[l]) out.push_back(f[l][c]);
    return out;
  }
};

namespace detail {

// Among the vectors spanning a kernel, the combination supported on the
// lowest coordinate indices: eliminate coordinates from the top down until
// one vector is left.
inline RealVec lowest_support(std::vector<RealVec> vs, const Real& tol) {
  const std::size_t n = vs.front().size();
  for (std::size_t r = n; r-- > 0 && vs.size() > 1;) {
    std::size_t piv = vs.size();
    for (std::size_t k = 0; k < vs.size(); ++k)
      if (abs(vs[k][r]) > tol && (piv == vs.size() || abs(vs[k][r]) > abs(vs[piv][r]))) piv = k;
    if (piv == vs.size()) continue;
    for (std::size_t k = 0; k < vs.size(); ++k) {
      if (k == piv) continue;
      const Real factor = vs[k][r] / vs[piv][r];
      for (std::size_t c = 0; c < n; ++c) vs[k][c] -= factor * vs[piv][c];
      vs[k][r] = Real::zero(tol.bits());
    }
    vs.erase(vs.begin() + static_cast<long>(piv));
  }
  return vs.front();
}

}  // namespace detail

// f_{l+1} is a unit vector of F orthogonal to f_1..f_l whose last d - l - 1
// coordinates vanish; such a vector exists by a dimension count.
inline FlagBasis flag_basis(const RealSubspace& F, int j) {
  const int n = F.n(), d = F.d();
  if (j < 1 || j > d) throw Error(ErrorKind::kDimension, "flag basis needs 1 <= j <= dim F");
  const unsigned bits = F.precision_bits();
  const Real rank_tol = ldexp(Real::one(bits), -static_cast<long>(bits) * 3 / 4);
  const Real zero_tol = ldexp(Real::one(bits), -static_cast<long>(bits) + 24);
  FlagBasis out;
  out.n = n;
  out.d = d;
  out.bits = bits;
  for (int l = 0; l < j; ++l) {
    const int free_coords = n - d + l + 1;
    std::vector<int> forced;
    for (int c = free_coords; c < n; ++c) forced.push_back(c);

    // Constraints on the coefficients c of x = sum c_k X_k.
    const std::size_t rows = forced.size() + static_cast<std::size_t>(l);
    std::vector<RealVec> kernel_coeffs;
    if (rows == 0) {
      for (int k = 0; k < d; ++k) {
        RealVec e(static_cast<std::size_t>(d), Real::zero(bits));
        e[k] = Real::one(bits);
        kernel_coeffs.push_back(std::move(e));
      }
    } else {
      Matrix<Real> a(rows, static_cast<std::size_t>(d), Real::zero(bits));
      std::size_t r = 0;
      for (int c : forced) {
        for (int k = 0; k < d; ++k) a(r, k) = F.basis()[k][c];
        ++r;
      }
      for (int m = 0; m < l; ++m) {
        for (int k = 0; k < d; ++k) a(r, k) = real_dot(F.basis()[k], out.f[m]);
        ++r;
      }
      const NullSpace ns = numerical_null_space(a, static_cast<std::size_t>(d));
      for (std::size_t k = 0; k < ns.basis.size(); ++k)
        if (ns.residuals[k] <= rank_tol || k + 1 == ns.basis.size()) kernel_coeffs.push_back(ns.basis[k]);
      if (ns.residuals.back() > rank_tol)
        throw Error(ErrorKind::kPrecision, "flag basis step " + std::to_string(l + 1) +
                                               ": smallest singular value " + ns.residuals.back().str(6) +
                                               " is not negligible");
    }
    std::vector<RealVec> cands;
    for (const auto& coeffs : kernel_coeffs) {
      RealVec v(static_cast<std::size_t>(n), Real::zero(bits));
      for (int k = 0; k < d; ++k)
        for (int c = 0; c < n; ++c) v[c] += coeffs[k] * F.basis()[k][c];
      cands.push_back(std::move(v));
    }
    RealVec v = detail::lowest_support(std::move(cands), zero_tol);
    for (int c : forced) v[c] = Real::zero(bits);
    for (auto& x : v)
      if (abs(x) <= zero_tol) x = Real::zero(bits);
    const Real nv = real_norm(v);
    if (nv <= zero_tol)
      throw Error(ErrorKind::kPrecision, "flag basis step " + std::to_string(l + 1) + ": intersection vanished");
    for (auto& x : v) x /= nv;
    std::vector<int> kept;
    for (int c = 0; c < n; ++c)
      if (!v[c].is_zero()) kept.push_back(c);
    if (v[kept.front()].sign() < 0)
      for (auto& x : v) x = -x;
    out.f.push_back(std::move(v));
    out.forced_zeros.push_back(std::move(forced));
    out.retained.push_back(std::move(kept));
  }
  return out;
}

// ---------------------------------------------------------------- Dirichlet

struct DirichletApproximant {
  long q = 0;
  IntVec p;
  Real distance;  // |q x - p|_inf
  Real quality;   // q^(1/N) |q x - p|_inf = q^(1+1/N) |x - p/q|_inf
};

inline constexpr long kExhaustiveSweepLimit = 100000;

namespace detail {

inline DirichletApproximant approximant_at(const RealVec& x, long q) {
  const unsigned bits = x.front().bits();
  DirichletApproximant a;
  a.q = q;
  a.distance = Real::zero(bits);
  for (const auto& xi : x) {
    const Real qx = xi * q;
    const Real p = floor(qx + Real(0.5, bits));
    a.distance = max(a.distance, abs(qx - p));
    a.p.push_back(p.round_to_integer());
  }
  const Real inv_n = Real::one(bits) / static_cast<long>(x.size());
  a.quality = pow(Real(q, bits), inv_n) * a.distance;
  return a;
}

// Denominators from LLL on the lattice spanned by (K, T x) and T e_i, with
// the q-weight K balancing q <= Q against |q x - p| ~ Q^(-1/N).
inline std::set<long> lll_denominators(const RealVec& x, long q_max) {
  const std::size_t big_n = x.size();
  const unsigned bits = x.front().bits();
  std::set<long> out;
  for (double logq = std::log2(static_cast<double>(kExhaustiveSweepLimit));
       logq <= std::log2(static_cast<double>(q_max)) + 1; logq += 1.0) {
    const double s_exp = logq * (1.0 + 1.0 / static_cast<double>(big_n));
    const long t = static_cast<long>(std::ceil(s_exp)) + 24;
    if (static_cast<unsigned long>(t) + 16 > bits)
      throw Error(ErrorKind::kPrecision, "target precision too low for the requested q_max");
    BigInt big_t = 1;
    big_t <<= static_cast<mp_bitcnt_t>(t);
    BigInt k = 1;
    k <<= static_cast<mp_bitcnt_t>(std::max<long>(0, t - static_cast<long>(std::floor(s_exp))));
    IntMat basis(big_n + 1, big_n + 1, BigInt(0));
    basis(0, 0) = k;
    for (std::size_t i = 0; i < big_n; ++i) {
      basis(i + 1, 0) = floor(x[i] * Real(big_t, bits) + Real(0.5, bits)).round_to_integer();
      basis(i + 1, i + 1) = big_t;
    }
    const IntMat red = lll_reduce_columns(basis);
    for (std::size_t c = 0; c < red.cols(); ++c) {
      BigInt q = red(0, c) / k;
      if (q < 0) q = -q;
      if (q >= 1 && q <= q_max) out.insert(q.get_si());
    }
  }
  return out;
}

}  // namespace detail

// Best approximations in the sup norm: every q <= q_max whose |q x - p|_inf
// beats all smaller denominators, kept when the Dirichlet bound
// |x - p/q|_inf <= q^(-1-1/N) holds. Exhaustive up to 10^5; beyond that,
// candidate denominators come from lattice reduction and the bound is
// re-checked for each.
inline std::vector<DirichletApproximant> simultaneous_approx(const RealVec& x, long q_max) {
  if (x.empty()) throw Error(ErrorKind::kDimension, "empty target vector");
  if (q_max < 1) throw Error(ErrorKind::kDomain, "q_max must be >= 1");
  const unsigned bits = x.front().bits();
  std::vector<DirichletApproximant> cands;
  Real best = Real(2L, bits);
  const long sweep = std::min(q_max, kExhaustiveSweepLimit);
  for (long q = 1; q <= sweep; ++q) {
    auto a = detail::approximant_at(x, q);
    if (a.distance < best) {
      best = a.distance;
      const bool exact = a.distance.is_zero();
      cands.push_back(std::move(a));
      if (exact) break;
    }
  }
  if (q_max > sweep && !best.is_zero()) {
    for (long q : detail::lll_denominators(x, q_max)) {
      if (q <= sweep) continue;
      auto a = detail::approximant_at(x, q);
      if (a.distance < best) {
        best = a.distance;
        cands.push_back(std::move(a));
      }
    }
  }
  std::vector<DirichletApproximant> out;
  for (auto& a : cands) {
    if (a.quality > Real::one(bits)) continue;
    BigInt g = a.q;
    for (const auto& p : a.p) g = gcd(g, p);
    if (g != 1) continue;
    out.push_back(std::move(a));
  }
  return out;
}

// B = span(p_1, ..., p_j) with p_l the slice of p belonging to f_l, padded
// with zeros back to R^n.
inline RationalSubspace build_approximant(const FlagBasis& flag, const DirichletApproximant& a) {
  if (a.p.size() != flag.N()) throw Error(ErrorKind::kDimension, "approximant length does not match the flag");
  std::vector<IntVec> gens;
  std::size_t pos = 0;
  for (std::size_t l = 0; l < flag.f.size(); ++l) {
    IntVec v(static_cast<std::size_t>(flag.n), BigInt(0));
    for (int c : flag.retained[l]) v[c] = a.p[pos++];
    gens.push_back(std::move(v));
  }
  if (gram_det_sq(IntMat::from_columns(gens)) == 0)
    throw Error(ErrorKind::kDependent, "approximant slices are dependent at q = " + std::to_string(a.q));
  return RationalSubspace::from_generators(gens);
}

// A priori constant in psi_j(F, B) H(B)^((N+1)/(jN)) <= c: with n_l retained
// coordinates in f_l, psi(f_l, p_l) <= sqrt(n_l) q^(-1-1/N), the direct-sum
// bound adds a factor sqrt(2), and |p_l| <= q + sqrt(n_l).
inline Real dirichlet_apriori_constant(const FlagBasis& flag) {
  const unsigned bits = flag.bits;
  const std::size_t big_n = flag.N();
  const long j = flag.j();
  Real sum = Real::zero(bits), prod = Real::one(bits);
  for (const auto& r : flag.retained) {
    const Real s = sqrt(Real(static_cast<long>(r.size()), bits));
    sum += s;
    prod *= 1 + s;
  }
  const Real expo = Real(static_cast<long>(big_n + 1), bits) / Real(static_cast<long>(big_n) * j, bits);
  return sqrt(Real(2L, bits)) * sum * pow(prod, expo);
}

struct DirichletRow {
  long q = 0;
  BigInt height_sq;
  Real height;
  Real psi;          // psi_j(F, B)
  Real bound_ratio;  // psi_j(F, B) H(B)^((N+1)/(jN))
  std::string key;
};

struct DirichletSequence {
  int n = 0, d = 0, j = 0;
  std::size_t N = 0;
  Real exponent;  // (N+1)/(jN)
  std::vector<DirichletRow> rows;
  std::size_t approximants = 0;
  std::size_t skipped = 0;   // degenerate approximants
  std::size_t repeated = 0;  // approximants giving an earlier B again
  bool rational = false;     // psi_j reached the error bound
  Real c7;                   // max bound_ratio
  Real c7_apriori;
  std::optional<Real> slope;        // least squares d log psi / d log H
  std::optional<Real> ratio_slope;  // least squares d log bound_ratio / d log H
  Real err;
};

inline std::optional<Real> loglog_slope(const std::vector<DirichletRow>& rows, bool of_ratio = false) {
  std::vector<Real> xs, ys;
  for (const auto& r : rows) {
    if (r.psi.sign() <= 0) continue;
    xs.push_back(log(r.height));
    ys.push_back(log(of_ratio ? r.bound_ratio : r.psi));
  }
  if (xs.size() < 2) return std::nullopt;
  const unsigned bits = xs.front().bits();
  Real mx = Real::zero(bits), my = Real::zero(bits);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<long>(xs.size());
  my /= static_cast<long>(xs.size());
  Real sxx = Real::zero(bits), sxy = Real::zero(bits);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx.is_zero()) return std::nullopt;
  return sxy / sxx;
}

inline DirichletSequence dirichlet_sequence(const RealSubspace& F, int j, long q_max) {
  const FlagBasis flag = flag_basis(F, j);
  const unsigned bits = F.precision_bits();
  DirichletSequence out;
  out.n = F.n();
  out.d = F.d();
  out.j = j;
  out.N = flag.N();
  out.exponent = Real(static_cast<long>(out.N + 1), bits) / Real(static_cast<long>(out.N) * j, bits);
  out.err = angle_error_bound(bits, F.n(), F.d(), j);
  out.c7 = Real::zero(bits);
  out.c7_apriori = dirichlet_apriori_constant(flag);
  const auto approx = simultaneous_approx(flag.x(), q_max);
  out.approximants = approx.size();
  std::set<std::string> seen;
  for (const auto& a : approx) {
    std::optional<RationalSubspace> b;
    try {
      b = build_approximant(flag, a);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kDependent) throw;
      ++out.skipped;
      continue;
    }
    if (!seen.insert(b->key()).second) {
      ++out.repeated;
      continue;
    }
    DirichletRow row;
    row.q = a.q;
    row.height_sq = b->height_sq();
    row.height = b->height(bits);
    row.psi = canonical_angles(F, real_view(*b, bits)).psi(static_cast<std::size_t>(j));
    row.key = b->key();
    if (row.psi <= out.err) {
      row.psi = Real::zero(bits);
      row.bound_ratio = Real::zero(bits);
      out.rows.push_back(std::move(row));
      out.rational = true;
      break;
    }
    row.bound_ratio = row.psi * pow(row.height, out.exponent);
    out.c7 = max(out.c7, row.bound_ratio);
    out.rows.push_back(std::move(row));
  }
  out.slope = loglog_slope(out.rows);
  out.ratio_slope = loglog_slope(out.rows, true);
  return out;
}

inline std::string format_dirichlet_csv(const DirichletSequence& s) {
  std::ostringstream os;
  os << "# dirichlet n=" << s.n << " d=" << s.d << " j=" << s.j << " N=" << s.N << " exponent=" << s.exponent.str(17)
     << '\n';
  os << "q,height,psi_j,bound_ratio\n";
  for (const auto& r : s.rows) os << r.q << ',' << r.height.str() << ',' << r.psi.str() << ',' << r.bound_ratio.str() << '\n';
  os << "# c7=" << s.c7.str(17) << " c7_apriori=" << s.c7_apriori.str(17)
     << " slope=" << (s.slope ? s.slope->str(17) : std::string("nan"))
     << " ratio_slope=" << (s.ratio_slope ? s.ratio_slope->str(17) : std::string("nan")) << " approximants=" << s.approximants
     << " skipped=" << s.skipped << " repeated=" << s.repeated << " rational=" << (s.rational ? 1 : 0) << '\n';
  return os.str();
}

// ---------------------------------------------------------------- inequalities

struct DirectSumBound {
  Real lhs;         // psi_k(F_1 + ... + F_l, B_1 + ... + B_l)
  Real rhs;         // sum_i psi_{d_i}(F_i, B_i)
  Real c_apriori;   // sqrt(2) max d_i / sigma_min[F_1 | ... | F_l]
  Real err;
};

inline DirectSumBound direct_sum_angle_bound(const std::vector<RealSubspace>& f_parts,
                                             const std::vector<RealSubspace>& b_parts) {
  if (f_parts.empty() || f_parts.size() != b_parts.size())
    throw Error(ErrorKind::kDimension, "direct sum needs the same nonzero number of parts on both sides");
  const unsigned bits = f_parts.front().precision_bits();
  std::vector<RealVec> fv, bv;
  int max_d = 0;
  DirectSumBound out;
  out.rhs = Real::zero(bits);
  for (std::size_t i = 0; i < f_parts.size(); ++i) {
    if (f_parts[i].d() != b_parts[i].d()) throw Error(ErrorKind::kDimension, "parts must have equal dimensions");
    max_d = std::max(max_d, f_parts[i].d());
    for (const auto& v : f_parts[i].basis()) fv.push_back(v);
    for (const auto& v : b_parts[i].basis()) bv.push_back(v);
    out.rhs += canonical_angles(f_parts[i], b_parts[i]).psi(static_cast<std::size_t>(f_parts[i].d()));
  }
  const RealSubspace f = RealSubspace::from_vectors(fv, bits);
  const RealSubspace b = RealSubspace::from_vectors(bv, bits);
  const auto prof = canonical_angles(f, b);
  out.lhs = prof.psi(fv.size());
  out.err = prof.err * static_cast<long>(f_parts.size() + 1);
  // Smallest singular value of the block matrix of orthonormal part bases.
  const auto svd = jacobi_svd(Matrix<Real>::from_columns(fv));
  Real smin = svd.sigma.front();
  for (const auto& s : svd.sigma) smin = min(smin, s);
  out.c_apriori = sqrt(Real(2L, bits)) * static_cast<long>(max_d) / smin;
  return out;
}

struct LineDecomposition {
  std::vector<RealVec> d_lines;  // unit vectors of D
  std::vector<RealVec> e_lines;  // unit vectors of E, oriented with d . e >= 0
  std::vector<Real> psi1;        // psi_1(D_i, E_i)
  Real sum;
  Real psi_k;
  Real err;
  bool lower_ok = false;  // psi_k <= sum
  bool upper_ok = false;  // sum <= k psi_k
};

inline LineDecomposition line_decomposition(const RealSubspace& d, const RealSubspace& e) {
  if (d.d() != e.d()) throw Error(ErrorKind::kDimension, "line decomposition needs equal dimensions");
  const auto pp = principal_pairs(d, e);
  const auto prof = canonical_angles(d, e);
  const std::size_t k = static_cast<std::size_t>(d.d());
  const unsigned bits = std::max(d.precision_bits(), e.precision_bits());
  LineDecomposition out;
  out.sum = Real::zero(bits);
  out.err = prof.err * static_cast<long>(2 * k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    RealVec y = pp.y[i];
    if (real_dot(pp.x[i], y).sign() < 0)
      for (auto& c : y) c = -c;
    out.psi1.push_back(sin_angle(pp.x[i], y));
    out.sum += out.psi1.back();
    out.d_lines.push_back(pp.x[i]);
    out.e_lines.push_back(std::move(y));
  }
  out.psi_k = prof.psi(k);
  out.lower_ok = out.psi_k <= out.sum + out.err;
  out.upper_ok = out.sum <= out.psi_k * static_cast<long>(k) + out.err;
  return out;
}

struct ChordBound {
  Real sin_xy;
  Real chord;  // |X - Y|
};

inline ChordBound unit_chord_bound(const RealVec& x, const RealVec& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::kDimension, "vectors of unequal length");
  const unsigned bits = x.front().bits();
  const Real tol = ldexp(Real::one(bits), -static_cast<long>(bits) / 2);
  if (abs(real_norm(x) - 1) > tol || abs(real_norm(y) - 1) > tol)
    throw Error(ErrorKind::kDomain, "chord bound needs unit vectors");
  if (real_dot(x, y).sign() < 0) throw Error(ErrorKind::kDomain, "chord bound needs X . Y >= 0");
  Real s = Real::zero(bits);
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return {sin_angle(x, y), sqrt(s)};
}

// ---------------------------------------------------------------- going-up

struct GoingUpResult {
  RationalSubspace c;
  Real psi_c;         // psi_j(A, C)
  Real psi_b;         // psi_j(A, B)
  Real score;         // H(C) psi_j(A, C)^weight
  Real height_ratio;  // H(C) / H(B)^((n-e-1)/(n-e))
  BigInt min_height_sq;  // smallest H(C)^2 among the candidates
  Real hermite_kappa;    // sqrt(gamma_{n-e}): min H(C) <= this * H(B)^((n-e-1)/(n-e))
  std::size_t candidates = 0;
  bool contains_b = false;  // every lattice basis vector of B lies in C

  bool shape_ok(const Real& kappa) const { return height_ratio <= kappa; }
};

namespace detail {

// gamma_k^k for the Hermite constants, k <= 8.
inline BigRat hermite_power_exact(int k) {
  static const BigRat table[] = {BigRat(1), BigRat(1), BigRat(4, 3), BigRat(2), BigRat(4),
                                 BigRat(8), BigRat(64, 3), BigRat(64), BigRat(256)};
  if (k < 1 || k > 8) throw Error(ErrorKind::kDimension, "Hermite constant known only up to dimension 8");
  return table[k];
}

// Solves G X = R for nonsingular G by Gauss-Jordan elimination.
inline RatMat solve_rational(RatMat g, RatMat r) {
  const std::size_t n = g.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && sgn(g(piv, k)) == 0) ++piv;
    if (piv == n) throw Error(ErrorKind::kDependent, "singular Gram matrix");
    g.swap_rows(k, piv);
    r.swap_rows(k, piv);
    const BigRat inv = 1 / g(k, k);
    for (std::size_t c = 0; c < n; ++c) g(k, c) *= inv;
    for (std::size_t c = 0; c < r.cols(); ++c) r(k, c) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || sgn(g(i, k)) == 0) continue;
      const BigRat f = g(i, k);
      for (std::size_t c = 0; c < n; ++c) g(i, c) -= f * g(k, c);
      for (std::size_t c = 0; c < r.cols(); ++c) r(i, c) -= f * r(k, c);
    }
  }
  return r;
}

inline void primitive_coefficients(int dim, long bound, std::vector<std::vector<long>>& out) {
  std::vector<long> a(static_cast<std::size_t>(dim), -bound);
  for (;;) {
    long g = 0;
    std::size_t first = a.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      g = std::gcd(g, a[i]);
      if (first == a.size() && a[i] != 0) first = i;
    }
    if (g == 1 && a[first] > 0) out.push_back(a);
    std::size_t i = 0;
    while (i < a.size() && a[i] == bound) a[i++] = -bound;
    if (i == a.size()) break;
    ++a[i];
  }
}

}  // namespace detail

// Extensions C = B + Z v of the lattice of B, searched over v = sum a_k w_k
// with |a|_inf <= budget, where w_1.. are complement vectors whose
// projections onto B^perp are LLL-reduced. H(C) = H(B) |proj(v)|, so small
// coefficients cover the shortest extensions. The returned C minimizes
// H(C) psi_j(A, C)^weight; ties go to the smaller height, then the key.
inline GoingUpResult going_up_search(const RealSubspace& a, const RationalSubspace& b, int j, long budget,
                                     double weight = 1.0, unsigned workers = default_workers()) {
  const int n = b.n(), e = b.e();
  if (a.n() != n) throw Error(ErrorKind::kDimension, "A and B live in different ambient spaces");
  if (e >= n - 1) throw Error(ErrorKind::kDimension, "going-up needs dim B < n - 1");
  if (j < 1 || j > std::min(a.d(), e)) throw Error(ErrorKind::kDimension, "j must satisfy 1 <= j <= min(dim A, dim B)");
  if (budget < 1) throw Error(ErrorKind::kBudget, "going-up budget must be >= 1");
  const unsigned bits = a.precision_bits();
  const int m = n - e;

  const IntMat& bb = b.lattice_basis();
  const IntMat u = complete_basis(bb);
  // Projected Gram P = U^T U - (B^T U)^T G^{-1} (B^T U), exact.
  RatMat g(static_cast<std::size_t>(e), static_cast<std::size_t>(e), BigRat(0));
  for (int r = 0; r < e; ++r)
    for (int c = 0; c < e; ++c) {
      BigInt s = 0;
      for (int k = 0; k < n; ++k) s += bb(k, r) * bb(k, c);
      g(r, c) = BigRat(s);
    }
  RatMat btu(static_cast<std::size_t>(e), static_cast<std::size_t>(m), BigRat(0));
  for (int r = 0; r < e; ++r)
    for (int c = 0; c < m; ++c) {
      BigInt s = 0;
      for (int k = 0; k < n; ++k) s += bb(k, r) * u(k, c);
      btu(r, c) = BigRat(s);
    }
  const RatMat sol = detail::solve_rational(g, btu);  // G^{-1} B^T U
  RatMat p(static_cast<std::size_t>(m), static_cast<std::size_t>(m), BigRat(0));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      BigInt s = 0;
      for (int k = 0; k < n; ++k) s += u(k, r) * u(k, c);
      BigRat acc(s);
      for (int k = 0; k < e; ++k) acc -= btu(k, r) * sol(k, c);
      p(r, c) = acc;
    }
  const IntMat t = lll_transform(p);
  IntMat w(static_cast<std::size_t>(n), static_cast<std::size_t>(m), BigInt(0));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m; ++c) {
      BigInt s = 0;
      for (int k = 0; k < m; ++k) s += u(r, k) * t(k, c);
      w(r, c) = s;
    }

  std::vector<std::vector<long>> coeffs;
  detail::primitive_coefficients(m, budget, coeffs);
  struct Cand {
    std::optional<RationalSubspace> c;
    Real psi, score;
  };
  std::vector<Cand> cands(coeffs.size());
  const Real wexp(weight, bits);
  parallel_for(coeffs.size(), workers, [&](std::size_t idx) {
    std::vector<IntVec> gens = b.basis_vectors();
    IntVec v(static_cast<std::size_t>(n), BigInt(0));
    for (int k = 0; k < m; ++k)
      if (coeffs[idx][k] != 0)
        for (int r = 0; r < n; ++r) v[r] += w(r, k) * coeffs[idx][k];
    gens.push_back(std::move(v));
    RationalSubspace c = RationalSubspace::from_generators(gens);
    Real psi = canonical_angles(a, real_view(c, bits)).psi(static_cast<std::size_t>(j));
    Real score = c.height(bits) * (weight == 0.0 ? Real::one(bits) : pow(psi, wexp));
    cands[idx] = {std::move(c), std::move(psi), std::move(score)};
  });

  std::size_t best = 0;
  BigInt min_h = cands[0].c->height_sq();
  for (std::size_t i = 1; i < cands.size(); ++i) {
    min_h = std::min(min_h, cands[i].c->height_sq());
    const auto& x = cands[i];
    const auto& y = cands[best];
    if (x.score < y.score ||
        (x.score == y.score && (x.c->height_sq() < y.c->height_sq() ||
                                (x.c->height_sq() == y.c->height_sq() && x.c->key() < y.c->key()))))
      best = i;
  }
  GoingUpResult out{*cands[best].c, cands[best].psi, canonical_angles(a, real_view(b, bits)).psi(static_cast<std::size_t>(j)),
                    cands[best].score, Real::zero(bits), min_h, Real::zero(bits), cands.size(), false};
  out.contains_b = b.is_contained_in(out.c);
  const Real expo = Real(static_cast<long>(m - 1), bits) / Real(static_cast<long>(m), bits);
  out.height_ratio = out.c.height(bits) / pow(b.height(bits), expo);
  out.hermite_kappa = sqrt(pow(Real(detail::hermite_power_exact(m), bits), Real::one(bits) / static_cast<long>(m)));
  return out;
}

}  // namespace dioph
