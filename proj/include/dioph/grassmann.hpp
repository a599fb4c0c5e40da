#pragma once

// Rational subspaces of R^n held exactly: a saturated basis of B ∩ Z^n, the
// primitive Plücker vector and the squared height H(B)^2.

#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dioph/angles.hpp"
#include "dioph/error.hpp"
#include "dioph/exactcore.hpp"
#include "dioph/normal_form.hpp"

namespace dioph {

namespace detail {

// Coordinate of the alternating tensor at an unsorted index sequence:
// sign of the sorting permutation times the stored coordinate, 0 on repeats.
// `base` is sorted, `extra` is inserted.
template <class T>
bool alternating_coordinate(const std::vector<T>& v, int n, const std::vector<int>& base, int extra,
                            const T& zero, T& out) {
  std::vector<int> idx;
  idx.reserve(base.size() + 1);
  int greater = 0;
  for (int b : base) {
    if (b == extra) return false;
    if (b > extra) ++greater;
  }
  idx = base;
  idx.insert(std::upper_bound(idx.begin(), idx.end(), extra), extra);
  out = v[subset_index(idx, n)];
  if (greater % 2) out = zero - out;
  return true;
}

}  // namespace detail

// Values of all quadratic Plücker relations
//   sum_k (-1)^k p[I + j_k] p[J - j_k]
// over (e-1)-subsets I and (e+1)-subsets J. All vanish iff v is decomposable.
template <class T>
std::vector<T> plucker_relation_values(const std::vector<T>& v, int n, int e) {
  if (e < 1 || e > n || v.size() != binomial(n, e))
    throw Error(ErrorKind::kDimension, "Plücker vector length does not match C(n, e)");
  const T zero = v[0] - v[0];
  std::vector<T> out;
  for (const auto& base : lex_subsets(n, e - 1)) {
    for (const auto& big : lex_subsets(n, e + 1)) {
      T acc = zero;
      bool any = false;
      for (std::size_t k = 0; k < big.size(); ++k) {
        T left = zero;
        if (!detail::alternating_coordinate(v, n, base, big[k], zero, left)) continue;
        std::vector<int> rest;
        for (std::size_t m = 0; m < big.size(); ++m)
          if (m != k) rest.push_back(big[m]);
        T term = left * v[subset_index(rest, n)];
        if (k % 2) acc -= term;
        else acc += term;
        any = true;
      }
      if (any) out.push_back(acc);
    }
  }
  return out;
}

inline bool plucker_relations_check(const IntVec& v, int n, int e) {
  for (const auto& r : plucker_relation_values(v, n, e))
    if (r != 0) return false;
  return true;
}

// Matrix of v |-> v ∧ P from R^n to Λ^{e+1}: row J, column j_k holds
// (-1)^k P[J - j_k]. Its kernel is the subspace when P is decomposable.
template <class T>
Matrix<T> annihilator_matrix(const std::vector<T>& p, int n, int e) {
  const auto bigs = lex_subsets(n, e + 1);
  const T zero = p[0] - p[0];
  Matrix<T> a(bigs.size(), static_cast<std::size_t>(n), zero);
  for (std::size_t row = 0; row < bigs.size(); ++row) {
    const auto& big = bigs[row];
    for (std::size_t k = 0; k < big.size(); ++k) {
      std::vector<int> rest;
      for (std::size_t m = 0; m < big.size(); ++m)
        if (m != k) rest.push_back(big[m]);
      const T& c = p[subset_index(rest, n)];
      a(row, static_cast<std::size_t>(big[k])) = (k % 2) ? T(zero - c) : c;
    }
  }
  return a;
}

// Vectors spanning the subspace of a decomposable Plücker vector: with I a
// subset where p_I != 0, w_k[m] = p(I with i_k replaced by m). Then
// w_k[i_l] = delta_kl p_I, so the e vectors are independent. Integer input
// gives integer vectors. I defaults to the first nonzero coordinate; for
// floating input pass the largest one.
template <class T>
std::vector<std::vector<T>> plucker_span_vectors(const std::vector<T>& p, int n, int e,
                                                 std::optional<std::size_t> pivot = std::nullopt) {
  const auto subsets = lex_subsets(n, e);
  if (p.size() != subsets.size()) throw Error(ErrorKind::kDimension, "Plücker vector length does not match C(n, e)");
  const T zero = p[0] - p[0];
  std::size_t first = 0;
  if (pivot) {
    first = *pivot;
    if (first >= p.size() || p[first] == zero) throw Error(ErrorKind::kDomain, "pivot coordinate is zero");
  } else {
    while (first < p.size() && p[first] == zero) ++first;
    if (first == p.size()) throw Error(ErrorKind::kZeroVector, "zero Plücker vector");
  }
  const auto& base = subsets[first];
  std::vector<std::vector<T>> out;
  for (int k = 0; k < e; ++k) {
    std::vector<int> rest;
    for (int l = 0; l < e; ++l)
      if (l != k) rest.push_back(base[l]);
    std::vector<T> w(static_cast<std::size_t>(n), zero);
    for (int m = 0; m < n; ++m) {
      T val = zero;
      // alternating_coordinate reads m as the last index; moving it to slot
      // k passes e - 1 - k entries.
      if (!detail::alternating_coordinate(p, n, rest, m, zero, val)) continue;
      w[m] = ((e - 1 - k) % 2) ? T(zero - val) : val;
    }
    out.push_back(std::move(w));
  }
  return out;
}

// Plücker vector of the orthogonal complement: q_J = eps(J^c) p_{J^c}, which
// pairs B with its complement in the Laplace expansion.
template <class T>
std::vector<T> complement_plucker(const std::vector<T>& p, int n, int e) {
  const auto small = lex_subsets(n, e);
  const std::size_t big_n = small.size();
  if (p.size() != big_n) throw Error(ErrorKind::kDimension, "Plücker vector length does not match C(n, e)");
  const T zero = p[0] - p[0];
  std::vector<T> q(big_n, zero);
  // The complement of the i-th e-subset is the (N-1-i)-th (n-e)-subset.
  for (std::size_t i = 0; i < big_n; ++i) q[big_n - 1 - i] = laplace_sign(small[i]) > 0 ? p[i] : T(zero - p[i]);
  return q;
}

class RationalSubspace {
 public:
  RationalSubspace() = default;

  // Integer generators, linearly independent over Q.
  static RationalSubspace from_generators(const std::vector<IntVec>& generators) {
    return from_saturated_basis(saturate(generators));
  }

  // Rational generators; each is scaled by the lcm of its denominators.
  static RationalSubspace from_rational_generators(const std::vector<std::vector<BigRat>>& generators) {
    std::vector<IntVec> ints;
    for (const auto& g : generators) {
      BigInt l = 1;
      for (const auto& x : g) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
      IntVec v;
      for (const auto& x : g) v.push_back(BigInt(x * l));
      ints.push_back(std::move(v));
    }
    return from_generators(ints);
  }

  // Columns must already form a basis of B ∩ Z^n; this is verified (the
  // content of the wedge is the index of the lattice in its saturation).
  static RationalSubspace from_saturated_basis(IntMat basis) {
    IntVec w = wedge_plucker(basis);
    if (content(w) != 1) throw Error(ErrorKind::kDependent, "basis does not span a saturated lattice");
    RationalSubspace s;
    s.n_ = static_cast<int>(basis.rows());
    s.e_ = static_cast<int>(basis.cols());
    s.height_sq_ = 0;
    for (const auto& x : w) s.height_sq_ += x * x;
    s.plucker_ = normalize_plucker(std::move(w), s.n_, s.e_);
    s.basis_ = std::move(basis);
    return s;
  }

  // Recover the subspace as the integer kernel of v |-> v ∧ P.
  static RationalSubspace from_plucker(const PluckerVec& p) {
    if (p.coords.size() != binomial(p.n, p.e) || p.e < 1)
      throw Error(ErrorKind::kDimension, "Plücker vector length does not match C(n, e)");
    if (!plucker_relations_check(p.coords, p.n, p.e))
      throw Error(ErrorKind::kNotDecomposable, "vector violates the Plücker relations");
    const IntMat ker = integer_kernel(annihilator_matrix(p.coords, p.n, p.e));
    if (static_cast<int>(ker.cols()) != p.e)
      throw Error(ErrorKind::kNotDecomposable, "annihilator kernel has the wrong dimension");
    IntMat basis = lll_reduce_columns(ker);
    canonicalize_columns(basis);
    RationalSubspace s = from_saturated_basis(std::move(basis));
    if (s.plucker_.coords != primitive_canonical(p.coords))
      throw Error(ErrorKind::kNotDecomposable, "reconstructed subspace does not reproduce the vector");
    return s;
  }

  int n() const { return n_; }
  int e() const { return e_; }
  const IntMat& lattice_basis() const { return basis_; }
  std::vector<IntVec> basis_vectors() const { return basis_.columns(); }
  const PluckerVec& plucker() const { return plucker_; }
  const BigInt& height_sq() const { return height_sq_; }
  Real height(unsigned bits) const { return sqrt(Real(height_sq_, bits)); }
  double height_double() const { return std::sqrt(height_sq_.get_d()); }

  // Canonical text "n e : p_1 ... p_N".
  std::string key() const {
    return std::to_string(n_) + " " + std::to_string(e_) + " : " + to_string(plucker_.coords);
  }

  // Exact membership of an integer vector in the span.
  bool contains(const IntVec& v) const {
    if (static_cast<int>(v.size()) != n_) throw Error(ErrorKind::kDimension, "vector length mismatch");
    const IntMat a = annihilator_matrix(plucker_.coords, n_, e_);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      BigInt s = 0;
      for (std::size_t c = 0; c < a.cols(); ++c) s += a(r, c) * v[c];
      if (s != 0) return false;
    }
    return true;
  }

  // Every lattice vector of this subspace lies in `other`.
  bool is_contained_in(const RationalSubspace& other) const {
    for (const auto& v : basis_vectors())
      if (!other.contains(v)) return false;
    return true;
  }

  friend bool operator==(const RationalSubspace& a, const RationalSubspace& b) {
    return a.plucker_ == b.plucker_;
  }

 private:
  int n_ = 0;
  int e_ = 0;
  IntMat basis_;
  PluckerVec plucker_;
  BigInt height_sq_;
};

// Parse "n e : p_1 ... p_N"; the vector is normalized on the way in.
inline PluckerVec parse_plucker_key(const std::string& text, int line = 1) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&](const char* what) -> BigInt {
    skip_ws();
    const std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      throw ParseError(std::string("expected ") + what, line, static_cast<int>(start) + 1);
    std::string tok = text.substr(start, pos - start);
    if (tok[0] == '+') tok.erase(0, 1);
    return BigInt(tok);
  };
  const BigInt n = read_int("ambient dimension");
  const BigInt e = read_int("subspace dimension");
  skip_ws();
  if (pos >= text.size() || text[pos] != ':') throw ParseError("expected ':'", line, static_cast<int>(pos) + 1);
  ++pos;
  if (n < 1 || n > 64 || e < 1 || e > n) throw ParseError("invalid dimensions", line, 1);
  const int ni = static_cast<int>(n.get_si());
  const int ei = static_cast<int>(e.get_si());
  IntVec coords;
  for (std::size_t i = 0; i < binomial(ni, ei); ++i) coords.push_back(read_int("Plücker coordinate"));
  skip_ws();
  if (pos != text.size()) throw ParseError("trailing input", line, static_cast<int>(pos) + 1);
  bool nonzero = false;
  for (const auto& c : coords) nonzero = nonzero || c != 0;
  if (!nonzero) throw ParseError("zero Plücker vector", line, 1);
  return normalize_plucker(std::move(coords), ni, ei);
}

inline RealSubspace real_view(const RationalSubspace& b, unsigned bits) {
  return RealSubspace::from_integer_vectors(b.basis_vectors(), bits);
}

inline Real phi_via_det(const RealSubspace& a, const RationalSubspace& b) {
  return phi_via_det(a, b.lattice_basis(), b.height_sq());
}

// B^perp, which has the same height as B.
inline RationalSubspace orthogonal_complement(const RationalSubspace& b) {
  if (b.e() == b.n()) throw Error(ErrorKind::kDimension, "the whole space has no nonzero complement");
  IntMat k = lll_reduce_columns(integer_kernel(b.lattice_basis().transpose()));
  canonicalize_columns(k);
  return RationalSubspace::from_saturated_basis(std::move(k));
}

}  // namespace dioph
