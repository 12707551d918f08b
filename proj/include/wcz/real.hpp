#pragma once

#include <mpfr.h>

#include <string>

#include "wcz/rational.hpp"

namespace wcz {

// High-precision floating scalar: a thin RAII wrapper over MPFR with a
// runtime precision tag (significand bits). Results of binary operations
// carry the larger of the operand precisions.
class Real {
 public:
  static mpfr_prec_t default_precision();
  static void set_default_precision(mpfr_prec_t bits);

  Real() : Real(default_precision()) {}
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Rat& q, mpfr_prec_t prec = 0) {
    mpfr_init2(v_, prec ? prec : default_precision());
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  Real(long n, mpfr_prec_t prec = 0) {
    mpfr_init2(v_, prec ? prec : default_precision());
    mpfr_set_si(v_, n, MPFR_RNDN);
  }
  Real(int n, mpfr_prec_t prec = 0) : Real(static_cast<long>(n), prec) {}

  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  friend Real operator+(const Real& a, const Real& b) { return bin(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return bin(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return bin(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return bin(a, b, mpfr_div); }
  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real operator-() const { Real r(precision()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

  static Real pow(const Real& base, const Real& e);
  // base^e for rational base > 0 and rational exponent, at the given precision.
  static Real pow(const Rat& base, const Rat& e, mpfr_prec_t prec = 0);
  static Real log(const Real& x);
  static Real exp(const Real& x);
  static Real sqrt(const Real& x);

  Real abs() const { Real r(precision()); mpfr_abs(r.v_, v_, MPFR_RNDN); return r; }

  int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
  friend bool operator<(const Real& a, const Real& b) { return a.cmp(b) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return a.cmp(b) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return a.cmp(b) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return a.cmp(b) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

  bool is_nan() const { return mpfr_nan_p(v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Deterministic decimal; digits = 0 picks enough for the precision tag.
  std::string str(int digits = 0) const;

  // |a - b| <= ulps * 2^(max_exponent - precision); exact-zero tolerant.
  static bool close_ulps(const Real& a, const Real& b, long ulps);
  // |a - b| <= tol * max(|a|, |b|); for a == b == 0 returns true.
  static bool close_rel(const Real& a, const Real& b, const Real& tol);

 private:
  using mpfr_bin_f = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  static Real bin(const Real& a, const Real& b, mpfr_bin_f f) {
    Real r(std::max(a.precision(), b.precision()));
    f(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  mpfr_t v_;
};

}  // namespace wcz
