#include "wcz/real.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wcz {

namespace {
mpfr_prec_t g_default_prec = 113;
}

mpfr_prec_t Real::default_precision() { return g_default_prec; }

void Real::set_default_precision(mpfr_prec_t bits) {
  if (bits < 80) bits = 80;  // floor from the scalar contract
  g_default_prec = bits;
}

Real Real::pow(const Real& base, const Real& e) {
  Real r(std::max(base.precision(), e.precision()));
  mpfr_pow(r.raw(), base.raw(), e.raw(), MPFR_RNDN);
  return r;
}

Real Real::pow(const Rat& base, const Rat& e, mpfr_prec_t prec) {
  if (!prec) prec = default_precision();
  Real b(base, prec), x(e, prec);
  return pow(b, x);
}

Real Real::log(const Real& x) {
  Real r(x.precision());
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real Real::exp(const Real& x) {
  Real r(x.precision());
  mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real Real::sqrt(const Real& x) {
  Real r(x.precision());
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

std::string Real::str(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_zero_p(v_)) return "0";
  if (digits <= 0)
    digits = static_cast<int>(std::ceil(precision() * 0.30103)) + 2;
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

bool Real::close_ulps(const Real& a, const Real& b, long ulps) {
  if (a.is_nan() || b.is_nan()) return false;
  if (mpfr_equal_p(a.raw(), b.raw())) return true;
  Real d = (a - b).abs();
  mpfr_exp_t ea = a.is_zero() ? mpfr_get_exp(b.raw()) : mpfr_get_exp(a.raw());
  mpfr_exp_t eb = b.is_zero() ? ea : mpfr_get_exp(b.raw());
  mpfr_exp_t e = std::max(ea, eb);
  mpfr_prec_t p = std::max(a.precision(), b.precision());
  Real tol(p);
  mpfr_set_si(tol.raw(), ulps, MPFR_RNDN);
  mpfr_mul_2si(tol.raw(), tol.raw(), e - p, MPFR_RNDN);
  return d <= tol;
}

bool Real::close_rel(const Real& a, const Real& b, const Real& tol) {
  if (a.is_nan() || b.is_nan()) return false;
  if (mpfr_equal_p(a.raw(), b.raw())) return true;
  Real d = (a - b).abs();
  Real m = a.abs();
  if (b.abs() > m) m = b.abs();
  return d <= tol * m;
}

}  // namespace wcz
