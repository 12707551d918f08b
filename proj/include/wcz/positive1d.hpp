#pragma once

#include <optional>

#include "wcz/construct1d.hpp"
#include "wcz/geometry.hpp"

namespace wcz {

struct SolveResult {
  PiecewiseLinear u;
  Rat flux;  // constant c with w u' - w F == c on every piece
};

// Exact solve of (w u')' = (w F)' on (0,1) with u(0) = u(1) = 0:
// u' = F + c/w, c = -(int F) / (int w^{-1}). Requires w > 0.
SolveResult solve(const PiecewiseConstant& w, const PiecewiseConstant& forcing);

// int_{(1/4,3/4)} w^s |u'|^p  /  (int w^s |F|^p + ||u||_inf^p int w^s).
// The theorem fixes s in {1, p/2}; other s need allow_any_s.
Real cz_check(const SolveResult& res, const PiecewiseConstant& w,
              const PiecewiseConstant& forcing, const Rat& p, const Rat& s,
              bool allow_any_s = false, mpfr_prec_t prec = 0);

// Same ratio for a constructed counterexample fed with its own forcing.
// The solver would return u itself (flux constant -1), so the ratio is
// evaluated directly on the exact shared structure.
Real construction_cz_ratio(const Construction& c, const Rat& p, const Rat& s,
                           mpfr_prec_t prec = 0);

struct TrialStats {
  int trials = 0;
  Real worst_ratio;
  bool all_boundaries_exact = true;  // u(0) == u(1) == 0 exactly, every trial
  bool all_flux_constant = true;     // w u' - w F constant across pieces
};

// Seeded random well-conditioned trials: weights with values in
// [1/4, 4], forcings with values in [-1, 1], cz_check at (p, s) = (2, 1).
TrialStats random_trials(int trials, unsigned long seed, mpfr_prec_t prec = 0);

}  // namespace wcz
