#pragma once

// Explicit badly approximable subspaces: the plane A_xi in R^4 and the
// 3-space A_xi in R^5 built from zeta_3, with their certificates.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "dioph/angles.hpp"
#include "dioph/enumerate.hpp"
#include "dioph/error.hpp"
#include "dioph/exactcore.hpp"
#include "dioph/grassmann.hpp"
#include "dioph/parallel.hpp"
#include "dioph/param_expr.hpp"
#include "dioph/real.hpp"

namespace dioph {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- R^4

struct R4Generators {
  RealVec x1;  // (0, 1, xi, r)
  RealVec x2;  // (1, 0, -r, xi), r = sqrt(7 - xi^2)
};

// xi within rounding of sqrt(7) is rejected along with the open range.
inline R4Generators r4_generators(const Real& xi) {
  const unsigned bits = xi.bits();
  const Real slack = ldexp(Real(7L, bits), -static_cast<long>(bits) + 8);
  if (xi.sign() <= 0 || !(xi * xi < Real(7L, bits) - slack))
    throw Error(ErrorKind::kDomain, "xi must satisfy 0 < xi < sqrt(7), got " + xi.str());
  const Real r = sqrt(Real(7L, bits) - xi * xi);
  return {{Real::zero(bits), Real::one(bits), xi, r}, {Real::one(bits), Real::zero(bits), -r, xi}};
}

inline RealSubspace witness_r4(const Real& xi) {
  auto g = r4_generators(xi);
  return RealSubspace::from_vectors({std::move(g.x1), std::move(g.x2)}, xi.bits());
}

inline RealSubspace witness_r4(const ParamExpr& xi, unsigned bits) { return witness_r4(xi.eval(bits)); }

// det[X1 X2 Y1 Y2] as a linear form in the Plücker coordinates eta of
// (Y1, Y2), lexicographic (12, 13, 14, 23, 24, 34):
//   -eta6 + eta5 xi - (eta4 + eta3) r - eta2 xi + 7 eta1.
inline Real r4_det_formula(const Real& xi, const IntVec& eta) {
  if (eta.size() != 6) throw Error(ErrorKind::kDimension, "R^4 plane has 6 Plücker coordinates");
  const unsigned bits = xi.bits();
  const Real r = sqrt(Real(7L, bits) - xi * xi);
  return Real(BigInt(7 * eta[0] - eta[5]), bits) + Real(BigInt(eta[4] - eta[1]), bits) * xi -
         Real(BigInt(eta[3] + eta[2]), bits) * r;
}

struct R4Certificate {
  long search_bound = 0;
  std::vector<std::array<long, 3>> solutions;  // nonzero (eta1, eta2, eta3)
  std::vector<std::array<int, 3>> mod4_solutions;
  bool mod4_all_even = false;
  bool passed() const { return solutions.empty() && mod4_all_even; }
};

// eta2^2 + eta3^2 = 7 eta1^2 over |eta_i| <= bound, and the residue table
// of eta2^2 + eta3^2 = 3 eta1^2 (mod 4). Every residue solution is even, so a
// primitive solution cannot exist.
inline R4Certificate r4_irrationality_certificate(long search_bound, unsigned workers = default_workers()) {
  if (search_bound < 1) throw Error(ErrorKind::kDomain, "search bound must be >= 1");
  if (search_bound > 3'000'000) throw Error(ErrorKind::kDomain, "search bound too large");
  R4Certificate out;
  out.search_bound = search_bound;
  const long b = search_bound;
  std::vector<std::vector<std::array<long, 3>>> per(static_cast<std::size_t>(2 * b + 1));
  parallel_for(per.size(), workers, [&](std::size_t idx) {
    const long e1 = static_cast<long>(idx) - b;
    for (long e2 = -b; e2 <= b; ++e2) {
      const long rest = 7 * e1 * e1 - e2 * e2;
      if (rest < 0) continue;
      long s = static_cast<long>(std::llround(std::sqrt(static_cast<double>(rest))));
      while (s * s > rest) --s;
      while ((s + 1) * (s + 1) <= rest) ++s;
      if (s * s != rest || s > b) continue;
      if (e1 == 0 && e2 == 0 && s == 0) continue;
      per[idx].push_back({e1, e2, s});
      if (s != 0) per[idx].push_back({e1, e2, -s});
    }
  });
  for (auto& v : per) out.solutions.insert(out.solutions.end(), v.begin(), v.end());

  out.mod4_all_even = true;
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c)
      for (int d = 0; d < 4; ++d)
        if (((c * c + d * d - 3 * a * a) % 4 + 4) % 4 == 0) {
          out.mod4_solutions.push_back({a, c, d});
          if (a % 2 || c % 2 || d % 2) out.mod4_all_even = false;
        }
  return out;
}

// ---------------------------------------------------------------- R^5

inline const char* const kDefaultZeta3 = "sqrt(3)+1/4";

// (zeta_1, ..., zeta_5) as closed-form functions of zeta_3 >= 5/4.
inline std::array<Real, 5> r5_zetas(const Real& z3) {
  const unsigned bits = z3.bits();
  if (z3 < Real(BigRat(5, 4), bits)) throw Error(ErrorKind::kDomain, "zeta_3 must be >= 5/4, got " + z3.str());
  const Real s2 = sqrt(Real(2L, bits));
  // sqrt(2) sqrt(4 z3 - 5) sqrt(z3 - 1)
  const Real rad = s2 * sqrt(4 * z3 - 5) * sqrt(z3 - 1);
  const Real z2 = z3 * z3, z3c = z2 * z3, z4 = z3c * z3;

  const Real den = 4 * (10 * z4 - 7 * z3c - (4 * z3c + 3 * z2 + 1) * rad - 10 * z2 + 5 * z3 - 2);
  const Real zeta1 = -(112 * z4 - 196 * z3c - (42 * z3c - 17 * z2 + 13 * z3) * rad + 88 * z2 - 30 * z3 + 6) / den;
  const Real zeta2 = -(52 * z4 - 154 * z3c - (18 * z3c - 35 * z2 + 13 * z3 - 6) * rad + 148 * z2 - 60 * z3 + 18) / den;
  const Real den45 = 2 * (z2 - 1);
  const Real zeta4 = -(rad * z2 - 6 * z3c + 3 * z2 + 3 * z3) / den45;
  const Real zeta5 = -(rad * z3 - 3 * z2 + 3 * z3) / den45;
  return {zeta1, zeta2, z3, zeta4, zeta5};
}

// xi_1..xi_10 (stored 0-based).
inline std::vector<Real> r5_xi(const std::array<Real, 5>& z) {
  const unsigned bits = z[0].bits();
  return {Real::one(bits), z[1] + z[4], -z[0],    1 + z[0] + z[4], z[1],
          2 * z[1] - z[4],  -z[2],       z[2],     z[3],            z[4]};
}

// The five quadratic relations for a 3-space of R^5, 1-based:
//   x2x5 - x3x4 - x1x6, x2x8 - x3x7 - x1x9, x4x8 - x5x7 - x1x10,
//   x4x9 - x6x7 - x2x10, x5x9 - x6x8 - x3x10.
template <class T>
std::array<T, 5> r5_relation_values(const std::vector<T>& x) {
  if (x.size() != 10) throw Error(ErrorKind::kDimension, "R^5 relation system needs 10 coordinates");
  auto X = [&](int i) -> const T& { return x[static_cast<std::size_t>(i - 1)]; };
  return {X(2) * X(5) - X(3) * X(4) - X(1) * X(6), X(2) * X(8) - X(3) * X(7) - X(1) * X(9),
          X(4) * X(8) - X(5) * X(7) - X(1) * X(10), X(4) * X(9) - X(6) * X(7) - X(2) * X(10),
          X(5) * X(9) - X(6) * X(8) - X(3) * X(10)};
}

struct R5Witness {
  std::string param_text;
  bool default_param = false;
  unsigned requested_bits = 0;
  unsigned bits = 0;  // precision actually used
  int escalations = 0;
  Real zeta3;
  std::array<Real, 5> zetas;
  std::vector<Real> xi;
  std::array<Real, 5> residuals;
  Real max_residual;
  Real tolerance;
  RealSubspace subspace;
  Real annihilator_residual;  // max |xi ∧ x| over the orthonormal basis, xi normalized
  Real plucker_mismatch;      // distance of the basis minors to ±xi/|xi|
};

// 2^(margin - bits) scaled by the size of the products in the relations.
inline Real r5_tolerance(const std::vector<Real>& xi, unsigned bits) {
  Real m = Real::one(bits);
  for (const auto& x : xi) m = max(m, abs(x));
  return ldexp(m * m, -static_cast<long>(bits) + 32);
}

namespace detail {

inline R5Witness r5_at(const ParamExpr& zeta3, unsigned bits) {
  R5Witness w;
  w.param_text = zeta3.text();
  w.bits = bits;
  w.zeta3 = zeta3.eval(bits);
  w.zetas = r5_zetas(w.zeta3);
  w.xi = r5_xi(w.zetas);
  w.residuals = r5_relation_values(w.xi);
  w.max_residual = Real::zero(bits);
  for (const auto& r : w.residuals) w.max_residual = max(w.max_residual, abs(r));

  std::size_t pivot = 0;
  for (std::size_t i = 1; i < w.xi.size(); ++i)
    if (abs(w.xi[i]) > abs(w.xi[pivot])) pivot = i;
  auto vs = plucker_span_vectors(w.xi, 5, 3, pivot);
  w.subspace = RealSubspace::from_vectors(std::move(vs), bits);

  Real norm = Real::zero(bits);
  for (const auto& x : w.xi) norm += x * x;
  norm = sqrt(norm);
  std::vector<Real> unit;
  for (const auto& x : w.xi) unit.push_back(x / norm);
  const auto ann = annihilator_matrix(unit, 5, 3);
  w.annihilator_residual = Real::zero(bits);
  for (const auto& v : w.subspace.basis())
    for (std::size_t r = 0; r < ann.rows(); ++r) {
      Real acc = Real::zero(bits);
      for (std::size_t c = 0; c < 5; ++c) acc += ann(r, c) * v[c];
      w.annihilator_residual = max(w.annihilator_residual, abs(acc));
    }

  Real plus = Real::zero(bits), minus = Real::zero(bits);
  const auto subsets = lex_subsets(5, 3);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    Matrix<Real> m(3, 3, Real::zero(bits));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = w.subspace.basis()[c][subsets[i][r]];
    const Real minor = real_det(std::move(m));
    plus += (minor - unit[i]) * (minor - unit[i]);
    minus += (minor + unit[i]) * (minor + unit[i]);
  }
  w.plucker_mismatch = sqrt(min(plus, minus));
  return w;
}

}  // namespace detail

// Builds A_xi for the given zeta_3. If the relation residuals exceed the
// tolerance at the requested precision, the evaluation is repeated at doubled
// precision up to max_escalations times before giving up.
inline R5Witness witness_r5(const ParamExpr& zeta3, unsigned bits, int max_escalations = 3) {
  if (bits < 64) throw Error(ErrorKind::kDomain, "precision must be at least 64 bits");
  if (const auto q = zeta3.exact(); q && *q < BigRat(5, 4))
    throw Error(ErrorKind::kDomain, "zeta_3 must be >= 5/4, got " + zeta3.text());
  unsigned working = bits;
  for (int attempt = 0;; ++attempt) {
    R5Witness w = detail::r5_at(zeta3, working);
    w.requested_bits = bits;
    w.escalations = attempt;
    w.default_param = zeta3.text() == kDefaultZeta3;
    w.tolerance = r5_tolerance(w.xi, bits);
    if (w.max_residual <= w.tolerance && w.annihilator_residual <= w.tolerance) return w;
    if (attempt >= max_escalations)
      throw Error(ErrorKind::kPrecision, "R^5 relation residual " + w.max_residual.str(6) + " above tolerance " +
                                             w.tolerance.str(6) + " at " + std::to_string(working) + " bits");
    working *= 2;
  }
}

// The system left after forcing det[X | Y] = 0 for a rational plane Y:
// substituting (eta1, eta2, eta4, eta6, eta8, eta10) =
// (eta9 - eta7 + eta5, 0, -eta3, -eta9 + 2 eta5, eta7, -eta7) into the plane
// relations. Integer solutions suffice since the system is homogeneous.
struct R5SearchCertificate {
  long search_bound = 0;
  std::uint64_t checked = 0;
  std::vector<std::array<long, 4>> solutions;  // nonzero (eta3, eta5, eta7, eta9)
  bool passed() const { return solutions.empty(); }
};

inline std::vector<long> r5_substituted_plane(long e3, long e5, long e7, long e9) {
  return {e9 - e7 + e5, 0, e3, -e3, e5, -e9 + 2 * e5, e7, e7, e9, -e7};
}

inline R5SearchCertificate r5_trivial_solution_search(long bound, unsigned workers = default_workers()) {
  if (bound < 1) throw Error(ErrorKind::kDomain, "search bound must be >= 1");
  if (bound > 2000) throw Error(ErrorKind::kDomain, "search bound too large");
  R5SearchCertificate out;
  out.search_bound = bound;
  const std::size_t side = static_cast<std::size_t>(2 * bound + 1);
  std::vector<std::vector<std::array<long, 4>>> per(side);
  parallel_for(side, workers, [&](std::size_t idx) {
    const long e3 = static_cast<long>(idx) - bound;
    for (long e5 = -bound; e5 <= bound; ++e5)
      for (long e7 = -bound; e7 <= bound; ++e7)
        for (long e9 = -bound; e9 <= bound; ++e9) {
          if (e3 == 0 && e5 == 0 && e7 == 0 && e9 == 0) continue;
          const auto rel = r5_relation_values(r5_substituted_plane(e3, e5, e7, e9));
          if (std::all_of(rel.begin(), rel.end(), [](long v) { return v == 0; })) per[idx].push_back({e3, e5, e7, e9});
        }
  });
  for (auto& v : per) out.solutions.insert(out.solutions.end(), v.begin(), v.end());
  out.checked = static_cast<std::uint64_t>(side) * side * side * side - 1;
  return out;
}

// ---------------------------------------------------------------- lower bound

struct LowerBoundReport {
  double exponent = 0;
  int n = 0, e = 0;
  BigInt height_sq_max;
  std::size_t count = 0;
  bool truncated = false;
  bool rational_target = false;
  Real err;
  Real min;  // min of phi(A, B) H(B)^exponent; 0 for a rational target
  std::string argmin_key;
  long argmin_height_sq = 0;
  Real argmin_phi;
  std::vector<std::pair<long, Real>> slice_min;       // (height_sq bound, min over H^2 <= bound)
  std::vector<std::pair<double, double>> quantiles;   // (q, value)
  std::map<int, std::size_t> log10_histogram;         // floor(log10 value) -> count
  std::size_t zero_count = 0;
};

inline LowerBoundReport lower_bound_check(const RealSubspace& a, const Enumeration& en, double exponent,
                                          std::vector<long> slices = {}, unsigned workers = default_workers()) {
  if (en.size() == 0) throw Error(ErrorKind::kDomain, "empty enumeration");
  const unsigned bits = a.precision_bits();
  LowerBoundReport out;
  out.exponent = exponent;
  out.n = en.n;
  out.e = en.e;
  out.height_sq_max = en.height_sq_max;
  out.count = en.size();
  out.truncated = en.truncated;
  out.err = angle_error_bound(bits, a.n(), a.d(), en.e);

  const std::vector<Real> phis = phi_all(a, en, workers);
  std::vector<Real> values(phis.size(), Real::zero(bits));
  const Real half_exp(exponent / 2, bits);
  std::size_t i = 0;
  while (i < en.size()) {
    std::size_t end = i;
    while (end < en.size() && en.height_sq(end) == en.height_sq(i)) ++end;
    const Real scale = pow(Real(en.height_sq(i), bits), half_exp);
    for (std::size_t k = i; k < end; ++k) values[k] = phis[k] * scale;
    i = end;
  }

  std::size_t arg = 0;
  for (std::size_t k = 1; k < values.size(); ++k)
    if (values[k] < values[arg]) arg = k;
  std::size_t arg_phi = 0;
  for (std::size_t k = 1; k < phis.size(); ++k)
    if (phis[k] < phis[arg_phi]) arg_phi = k;
  out.rational_target = phis[arg_phi] <= out.err;
  if (out.rational_target) arg = arg_phi;
  out.min = out.rational_target ? Real::zero(bits) : values[arg];
  out.argmin_key = en.key(arg);
  out.argmin_height_sq = en.height_sq(arg);
  out.argmin_phi = phis[arg];

  std::sort(slices.begin(), slices.end());
  for (long s : slices) {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < values.size() && en.height_sq(k) <= s; ++k)
      if (!best || values[k] < values[*best]) best = k;
    if (best) out.slice_min.emplace_back(s, out.rational_target ? Real::zero(bits) : values[*best]);
  }

  std::vector<double> dv;
  dv.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (phis[k] <= out.err) {
      ++out.zero_count;
      dv.push_back(0.0);
      continue;
    }
    const double v = values[k].to_double();
    dv.push_back(v);
    ++out.log10_histogram[static_cast<int>(std::floor(std::log10(v)))];
  }
  std::sort(dv.begin(), dv.end());
  for (double q : {0.0, 0.001, 0.01, 0.1, 0.5, 0.9, 1.0}) {
    const auto idx = static_cast<std::size_t>(std::llround(q * static_cast<double>(dv.size() - 1)));
    out.quantiles.emplace_back(q, dv[idx]);
  }
  return out;
}

// ---------------------------------------------------------------- reports

inline Json to_json(const R4Certificate& c) {
  Json j;
  j["kind"] = "r4-irrationality";
  j["equation"] = "eta2^2 + eta3^2 = 7 eta1^2";
  j["search_bound"] = c.search_bound;
  j["nonzero_solutions"] = c.solutions.size();
  Json sols = Json::array();
  for (const auto& s : c.solutions) sols.push_back({s[0], s[1], s[2]});
  j["solutions"] = sols;
  Json table = Json::array();
  for (const auto& s : c.mod4_solutions) table.push_back({s[0], s[1], s[2]});
  j["mod4_table"] = table;
  j["mod4_all_even"] = c.mod4_all_even;
  j["passed"] = c.passed();
  return j;
}

inline Json to_json(const R5Witness& w) {
  Json j;
  j["kind"] = "r5-witness";
  j["zeta3"] = w.param_text;
  j["zeta3_value"] = w.zeta3.str();
  if (w.default_param)
    j["note"] = "default zeta3 = sqrt(3)+1/4 is an arbitrary valid choice; it is not known to give a Bad point";
  j["precision_bits"] = w.requested_bits;
  j["working_bits"] = w.bits;
  j["escalations"] = w.escalations;
  Json z = Json::array();
  for (const auto& x : w.zetas) z.push_back(x.str());
  j["zeta"] = z;
  Json xi = Json::array();
  for (const auto& x : w.xi) xi.push_back(x.str());
  j["xi"] = xi;
  Json res = Json::array();
  for (const auto& r : w.residuals) res.push_back(abs(r).str(6));
  j["residuals"] = res;
  j["tolerance"] = w.tolerance.str(6);
  j["max_residual"] = w.max_residual.str(6);
  j["annihilator_residual"] = w.annihilator_residual.str(6);
  j["plucker_mismatch"] = w.plucker_mismatch.str(6);
  j["passed"] = w.max_residual <= w.tolerance;
  return j;
}

inline Json to_json(const R5SearchCertificate& c) {
  Json j;
  j["kind"] = "r5-trivial-solution-search";
  j["variables"] = "eta3, eta5, eta7, eta9";
  j["search_bound"] = c.search_bound;
  j["checked"] = c.checked;
  Json sols = Json::array();
  for (const auto& s : c.solutions) sols.push_back({s[0], s[1], s[2], s[3]});
  j["solutions"] = sols;
  j["passed"] = c.passed();
  return j;
}

inline Json to_json(const LowerBoundReport& r) {
  Json j;
  j["kind"] = "lower-bound";
  j["n"] = r.n;
  j["e"] = r.e;
  j["exponent"] = r.exponent;
  j["height_sq_max"] = r.height_sq_max.get_str();
  j["count"] = r.count;
  j["truncated"] = r.truncated;
  j["rational_target"] = r.rational_target;
  j["err"] = r.err.str(6);
  j["min"] = r.min.str(12);
  j["min_note"] = "empirical minimum over the enumeration, not the true infimum";
  j["argmin"] = {{"key", r.argmin_key}, {"height_sq", r.argmin_height_sq}, {"phi", r.argmin_phi.str(12)}};
  Json slices = Json::array();
  for (const auto& [s, v] : r.slice_min) slices.push_back({{"height_sq_max", s}, {"min", v.str(12)}});
  j["slices"] = slices;
  Json q = Json::object();
  for (const auto& [p, v] : r.quantiles) q[std::to_string(p).substr(0, 5)] = v;
  j["quantiles"] = q;
  Json hist = Json::object();
  for (const auto& [k, c] : r.log10_histogram) hist[std::to_string(k)] = c;
  j["log10_histogram"] = hist;
  j["zero_count"] = r.zero_count;
  return j;
}

}  // namespace dioph
