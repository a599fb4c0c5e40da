#pragma once

// Arbitrary-precision real numbers backed by MPFR.
//
// Every value carries its own precision in bits. Binary operations produce a
// result at the larger of the two operand precisions, so precision is a
// property of the data flowing through a computation rather than global state.

#include <mpfr.h>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <gmpxx.h>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace dioph {

inline constexpr unsigned kDefaultPrecisionBits = 128;

class Real {
 public:
  Real() : Real(0L, kDefaultPrecisionBits) {}

  Real(long v, unsigned bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, v, MPFR_RNDN);
  }
  Real(int v, unsigned bits) : Real(static_cast<long>(v), bits) {}
  Real(double v, unsigned bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, v, MPFR_RNDN);
  }
  Real(const mpz_class& v, unsigned bits) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
  }
  Real(const mpq_class& v, unsigned bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
  }

  static Real zero(unsigned bits) { return Real(0L, bits); }
  static Real one(unsigned bits) { return Real(1L, bits); }

  // Decimal or scientific literal, e.g. "1.25", "-3e-7".
  static Real parse(const std::string& text, unsigned bits) {
    Real r = zero(bits);
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("not a real literal: '" + text + "'");
    return r;
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_))
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  unsigned bits() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }

  // Raise (never lower) the precision, keeping the value.
  Real& widen(unsigned bits) {
    if (bits > this->bits()) mpfr_prec_round(v_, bits, MPFR_RNDN);
    return *this;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long round_to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  mpz_class round_to_integer() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
  }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  // Base-2 exponent e with 0.5 <= |x| / 2^e < 1; very negative for zero.
  long exponent2() const {
    if (is_zero()) return -(1L << 40);
    return mpfr_get_exp(v_);
  }

  // Significant-digit decimal rendering; deterministic for a given value.
  std::string str(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (is_zero()) return "0";
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }
  // Enough decimal digits to round-trip at the value's precision.
  std::string str() const {
    return str(static_cast<int>(std::ceil(bits() * 0.30102999566398120)) + 1);
  }

  Real& operator+=(const Real& o) { return apply(o, mpfr_add); }
  Real& operator-=(const Real& o) { return apply(o, mpfr_sub); }
  Real& operator*=(const Real& o) { return apply(o, mpfr_mul); }
  Real& operator/=(const Real& o) { return apply(o, mpfr_div); }

  Real& operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

  Real operator-() const {
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }

  template <std::integral I>
  friend Real operator+(Real a, I b) { return a += static_cast<long>(b); }
  template <std::integral I>
  friend Real operator-(Real a, I b) { return a -= static_cast<long>(b); }
  template <std::integral I>
  friend Real operator*(Real a, I b) { return a *= static_cast<long>(b); }
  template <std::integral I>
  friend Real operator/(Real a, I b) { return a /= static_cast<long>(b); }
  template <std::integral I>
  friend Real operator+(I a, Real b) { return b += static_cast<long>(a); }
  template <std::integral I>
  friend Real operator*(I a, Real b) { return b *= static_cast<long>(a); }
  template <std::integral I>
  friend Real operator-(I a, const Real& b) { return -b + static_cast<long>(a); }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

  friend Real sqrt(const Real& a) { return a.unary(mpfr_sqrt); }
  friend Real abs(const Real& a) { return a.unary(mpfr_abs); }
  friend Real log(const Real& a) { return a.unary(mpfr_log); }
  friend Real exp(const Real& a) { return a.unary(mpfr_exp); }
  friend Real sin(const Real& a) { return a.unary(mpfr_sin); }
  friend Real cos(const Real& a) { return a.unary(mpfr_cos); }
  friend Real atan2(const Real& y, const Real& x) {
    Real r = zero(std::max(y.bits(), x.bits()));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real pow(const Real& a, const Real& b) {
    Real r = zero(std::max(a.bits(), b.bits()));
    mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real floor(const Real& a) {
    Real r = zero(a.bits());
    mpfr_floor(r.v_, a.v_);
    return r;
  }
  // a * 2^k, exact.
  friend Real ldexp(const Real& a, long k) {
    Real r(a);
    mpfr_mul_2si(r.v_, r.v_, k, MPFR_RNDN);
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Real& a) { return os << a.str(); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

  Real& apply(const Real& o, BinaryFn fn) {
    widen(o.bits());
    fn(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real unary(UnaryFn fn) const {
    Real r = zero(bits());
    fn(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

inline const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }
inline const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }

// Unit roundoff 2^-bits.
inline Real ulp_scale(unsigned bits) { return ldexp(Real::one(bits), -static_cast<long>(bits)); }

}  // namespace dioph
