#pragma once

// Unimodular column reduction over Z and the lattice operations built on it:
// integer kernels, saturation of a sublattice, and basis completion.

#include <cstddef>
#include <vector>

#include "dioph/exactcore.hpp"
#include "dioph/lll.hpp"

namespace dioph {

// A * U = H with U unimodular (Uinv its inverse). The first `rank` columns of
// H are in column echelon form; the remaining columns are zero.
struct ColumnEchelon {
  IntMat h;
  IntMat u;
  IntMat uinv;
  std::size_t rank = 0;
};

inline ColumnEchelon column_echelon(const IntMat& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  ColumnEchelon out{a, IntMat::identity(n, BigInt(0), BigInt(1)), IntMat::identity(n, BigInt(0), BigInt(1)), 0};
  IntMat& h = out.h;
  IntMat& u = out.u;
  IntMat& ui = out.uinv;

  // Column op on (i, j) by [[s, -b/g], [t, a/g]]; inverse row op on Uinv.
  auto combine = [&](std::size_t i, std::size_t j, const BigInt& s, const BigInt& t, const BigInt& ag,
                     const BigInt& bg) {
    auto cols = [&](IntMat& x) {
      for (std::size_t r = 0; r < x.rows(); ++r) {
        BigInt xi = x(r, i);
        BigInt xj = x(r, j);
        x(r, i) = s * xi + t * xj;
        x(r, j) = ag * xj - bg * xi;
      }
    };
    cols(h);
    cols(u);
    for (std::size_t c = 0; c < n; ++c) {
      BigInt yi = ui(i, c);
      BigInt yj = ui(j, c);
      ui(i, c) = ag * yi + bg * yj;
      ui(j, c) = s * yj - t * yi;
    }
  };

  std::size_t piv = 0;
  for (std::size_t r = 0; r < m && piv < n; ++r) {
    for (std::size_t j = piv + 1; j < n; ++j) {
      if (h(r, j) == 0) continue;
      const BigInt av = h(r, piv);
      const BigInt bv = h(r, j);
      BigInt g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), av.get_mpz_t(), bv.get_mpz_t());
      BigInt ag, bg;
      mpz_divexact(ag.get_mpz_t(), av.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(bg.get_mpz_t(), bv.get_mpz_t(), g.get_mpz_t());
      combine(piv, j, s, t, ag, bg);
    }
    if (h(r, piv) != 0) ++piv;
  }
  out.rank = piv;
  return out;
}

// Basis (as columns) of {x in Z^n : A x = 0}; always a saturated lattice.
inline IntMat integer_kernel(const IntMat& a) {
  const ColumnEchelon ce = column_echelon(a);
  const std::size_t n = a.cols();
  IntMat k(n, n - ce.rank, BigInt(0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = ce.rank; c < n; ++c) k(r, c - ce.rank) = ce.u(r, c);
  return k;
}

inline std::size_t rank_of(const IntMat& a) { return column_echelon(a).rank; }

// Sign-normalize each column (first nonzero entry positive).
inline void canonicalize_columns(IntMat& m) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (m(r, c) == 0) continue;
      if (m(r, c) < 0)
        for (std::size_t rr = 0; rr < m.rows(); ++rr) m(rr, c) = -m(rr, c);
      break;
    }
  }
}

// Basis of span_Q(generators) ∩ Z^n, LLL-reduced, one vector per column.
// Computed as the integer kernel of the integer kernel of the generators.
inline IntMat saturate(const std::vector<IntVec>& generators) {
  if (generators.empty()) throw Error(ErrorKind::kDimension, "no generators");
  const std::size_t n = generators.front().size();
  const std::size_t e = generators.size();
  if (e > n) throw Error(ErrorKind::kDependent, "more generators than the ambient dimension");
  IntMat rows(e, n, BigInt(0));
  for (std::size_t i = 0; i < e; ++i) {
    if (generators[i].size() != n) throw Error(ErrorKind::kDimension, "generators of unequal length");
    for (std::size_t c = 0; c < n; ++c) rows(i, c) = generators[i][c];
  }
  if (rank_of(rows) != e) throw Error(ErrorKind::kDependent, "generators are linearly dependent");

  IntMat sat;
  if (e == n) {
    sat = IntMat::identity(n, BigInt(0), BigInt(1));
  } else {
    const IntMat dual = integer_kernel(rows);  // n x (n-e)
    sat = integer_kernel(dual.transpose());     // n x e
  }
  sat = lll_reduce_columns(sat);
  canonicalize_columns(sat);
  return sat;
}

// Integer vectors u_1..u_{n-e} (columns) such that the saturated basis
// columns together with them form a basis of Z^n.
inline IntMat complete_basis(const IntMat& saturated) {
  const std::size_t n = saturated.rows();
  const std::size_t e = saturated.cols();
  const ColumnEchelon ce = column_echelon(saturated.transpose());
  if (ce.rank != e) throw Error(ErrorKind::kDependent, "basis columns are dependent");
  for (std::size_t i = 0; i < e; ++i) {
    // The e x e echelon block must be unimodular for a saturated basis.
    if (ce.h(i, i) != 1 && ce.h(i, i) != -1)
      throw Error(ErrorKind::kDependent, "basis does not span a saturated lattice");
  }
  IntMat out(n, n - e, BigInt(0));
  for (std::size_t k = e; k < n; ++k)
    for (std::size_t c = 0; c < n; ++c) out(c, k - e) = ce.uinv(k, c);
  return out;
}

}  // namespace dioph
