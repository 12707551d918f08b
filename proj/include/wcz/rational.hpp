#pragma once

#include <gmpxx.h>

#include <string>

namespace wcz {

using Rat = mpq_class;
using Int = mpz_class;

// 2^e as an exact rational; e may be negative.
Rat pow2(long e);

// base^e with exact rational arithmetic; base != 0 required when e < 0.
Rat rat_pow_int(const Rat& base, long e);

bool rat_is_integer(const Rat& q);

Int rat_floor(const Rat& q);
Int rat_ceil(const Rat& q);

// floor(q) as long; q must fit.
long rat_floor_long(const Rat& q);

Rat rat_abs(const Rat& q);
const Rat& rat_min(const Rat& a, const Rat& b);
const Rat& rat_max(const Rat& a, const Rat& b);

// Canonical "p/q" (or "p" when q == 1).
std::string rat_str(const Rat& q);

// Accepts "p/q", plain integers, "2^k" / "2^-k", and decimal literals
// like "0.25" or "-1.5e-3". Throws std::invalid_argument on junk.
Rat rat_parse(const std::string& s);

// Smallest D >= lo with count * 2^-D <= eps (count > 0, eps > 0).
int depth_for_budget(const Int& count, const Rat& eps, int lo = 1);

}  // namespace wcz
