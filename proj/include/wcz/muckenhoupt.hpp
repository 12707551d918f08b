#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wcz/construct1d.hpp"
#include "wcz/geometry.hpp"

namespace wcz {

struct SearchConfig {
  Rat win_lo = Rat(-1);
  Rat win_hi = Rat(2);
  int grid_k = 9;           // grid points per free endpoint inside a cell pair
  int golden_rounds = 3;    // coordinate-wise golden-section passes
  long boundary_budget = 1200;  // max cell boundaries for constructed weights
  long refine_top = 120;    // cell pairs taken into grid/golden refinement
  bool prune = true;
  Rat wide_limit = Rat(8);  // widest auxiliary interval checked outside window
  int wide_grid = 32;
  mpfr_prec_t prec = 0;     // 0 = Real::default_precision()
};

struct ArReport {
  Rat r;
  Real sup_estimate;              // certified lower bound / heuristic supremum
  std::optional<Rat> sup_exact;   // exact value at argmax when gamma is integral
  Rat argmax_a, argmax_b;
  long candidates = 0;
  long pruned = 0;
  int refinement_passes = 0;
  std::optional<Real> theoretical;  // majorant, only meaningful for r > 2
  bool wide_scan_smaller = true;    // no wider-than-window interval beat the sup
  Rat win_lo, win_hi;
  mpfr_prec_t precision = 0;
};

ArReport ar_characteristic(const PiecewiseConstant& w, const Rat& r,
                           const SearchConfig& cfg = {});
ArReport ar_characteristic(const Construction& c, const Rat& r,
                           const SearchConfig& cfg = {});

// Explicit Case-1/Case-2 majorant with tracked constants; rejects r <= 2
// (the underlying series diverges there).
Real theoretical_bound(const Rat& r, int n, mpfr_prec_t prec = 0);

struct DoublingReport {
  Rat r;
  Real factor;      // 2^{nr} [w]_{A_r} estimate used as the bound, n = 1
  Real worst_ratio; // max over probes of int_{2Q} w / int_Q w
  bool all_pass = false;
  long probes = 0;
};

DoublingReport doubling_check(const PiecewiseConstant& w, const Rat& r,
                              const std::vector<Interval>& probes,
                              const SearchConfig& cfg = {});
DoublingReport doubling_check(const Construction& c, const Rat& r,
                              const std::vector<Interval>& probes,
                              const SearchConfig& cfg = {});

}  // namespace wcz
