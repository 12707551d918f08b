#include "wcz/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace wcz {

Rat pow2(long e) {
  Rat r;
  if (e >= 0) {
    mpz_ui_pow_ui(r.get_num_mpz_t(), 2u, static_cast<unsigned long>(e));
  } else {
    mpz_ui_pow_ui(r.get_den_mpz_t(), 2u, static_cast<unsigned long>(-e));
  }
  r.canonicalize();
  return r;
}

Rat rat_pow_int(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base == 0 && e < 0) throw std::invalid_argument("rat_pow_int: 0^negative");
  unsigned long a = static_cast<unsigned long>(e >= 0 ? e : -e);
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), a);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), a);
  r.canonicalize();
  if (e < 0) r = 1 / r;
  return r;
}

bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

Int rat_floor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int rat_ceil(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

long rat_floor_long(const Rat& q) {
  Int f = rat_floor(q);
  if (!f.fits_slong_p()) throw std::overflow_error("rat_floor_long: out of range");
  return f.get_si();
}

Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

const Rat& rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
const Rat& rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

Rat parse_decimal(const std::string& s) {
  // [sign] digits [. digits] [e|E [sign] digits]
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
  std::string digits;
  long frac_digits = 0;
  bool any = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      ++frac_digits;
      any = true;
    }
  }
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
    if (i >= s.size()) throw std::invalid_argument("rat_parse: bad exponent");
    std::string e;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
    if (e.empty()) throw std::invalid_argument("rat_parse: bad exponent");
    exp10 = std::stol(e);
    if (eneg) exp10 = -exp10;
  }
  if (!any || i != s.size()) throw std::invalid_argument("rat_parse: bad literal '" + s + "'");
  Rat v(Int(digits.empty() ? "0" : digits));
  long e = exp10 - frac_digits;
  Int tens;
  mpz_ui_pow_ui(tens.get_mpz_t(), 10u, static_cast<unsigned long>(e >= 0 ? e : -e));
  if (e >= 0)
    v *= Rat(tens);
  else
    v /= Rat(tens);
  if (neg) v = -v;
  return v;
}

}  // namespace

Rat rat_parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("rat_parse: empty");
  if (auto car = s.find("2^"); car == 0) {
    std::string e = s.substr(2);
    if (e.empty()) throw std::invalid_argument("rat_parse: bad power '" + raw + "'");
    return pow2(std::stol(e));
  }
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rat v;
    if (mpq_set_str(v.get_mpq_t(), s.c_str(), 10) != 0)
      throw std::invalid_argument("rat_parse: bad fraction '" + raw + "'");
    if (v.get_den() == 0) throw std::invalid_argument("rat_parse: zero denominator");
    v.canonicalize();
    return v;
  }
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos)
    return parse_decimal(s);
  Rat v;
  if (mpq_set_str(v.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("rat_parse: bad integer '" + raw + "'");
  v.canonicalize();
  return v;
}

int depth_for_budget(const Int& count, const Rat& eps, int lo) {
  if (count <= 0 || eps <= 0) throw std::invalid_argument("depth_for_budget: bad inputs");
  int d = lo;
  Rat lhs = Rat(count) * pow2(-d);
  while (lhs > eps) {
    ++d;
    lhs /= 2;
    if (d > 100000) throw std::overflow_error("depth_for_budget: runaway depth");
  }
  return d;
}

}  // namespace wcz
