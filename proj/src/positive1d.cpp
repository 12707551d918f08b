#include "wcz/positive1d.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace wcz {

namespace {

std::vector<Rat> refinement_in_unit(const PiecewiseConstant& a, const PiecewiseConstant& b) {
  std::vector<Rat> xs{Rat(0), Rat(1)};
  for (const auto& x : a.breakpoints())
    if (x > 0 && x < 1) xs.push_back(x);
  for (const auto& x : b.breakpoints())
    if (x > 0 && x < 1) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

SolveResult solve(const PiecewiseConstant& w, const PiecewiseConstant& forcing) {
  if (!w.strictly_positive()) throw std::invalid_argument("solve: weight must be positive");
  Interval unit(Rat(0), Rat(1));
  Rat int_f = forcing.power_integral_int(unit, 1);
  Rat int_winv = w.power_integral_int(unit, -1);
  Rat c = -int_f / int_winv;

  std::vector<Rat> xs = refinement_in_unit(w, forcing);
  std::vector<Rat> ys{Rat(0)};
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    Rat mid = (xs[i] + xs[i + 1]) / 2;
    Rat slope = forcing.value_at(mid) + c / w.value_at(mid);
    ys.push_back(ys.back() + slope * (xs[i + 1] - xs[i]));
  }
  if (ys.back() != 0) throw std::logic_error("solve: u(1) must close to 0 exactly");
  SolveResult res;
  res.u = PiecewiseLinear::from_nodes(std::move(xs), std::move(ys), Rat(0));
  res.flux = c;
  return res;
}

namespace {

Real ws_abspow_integral(const PiecewiseConstant& w, const PiecewiseConstant& g,
                        const Interval& q, const Rat& s, const Rat& p,
                        mpfr_prec_t prec) {
  // int_q w^s |g|^p, both piecewise constant, exact piece walk
  std::vector<Rat> xs{q.a, q.b};
  for (const auto& x : w.breakpoints())
    if (x > q.a && x < q.b) xs.push_back(x);
  for (const auto& x : g.breakpoints())
    if (x > q.a && x < q.b) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Real acc(Rat(0), prec);
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    Rat mid = (xs[i] + xs[i + 1]) / 2;
    Rat gv = rat_abs(g.value_at(mid));
    if (gv == 0) continue;
    Real term = Real::pow(w.value_at(mid), s, prec) * Real::pow(gv, p, prec);
    acc += term * Real(xs[i + 1] - xs[i], prec);
  }
  return acc;
}

}  // namespace

Real cz_check(const SolveResult& res, const PiecewiseConstant& w,
              const PiecewiseConstant& forcing, const Rat& p, const Rat& s,
              bool allow_any_s, mpfr_prec_t prec) {
  if (p < 2) throw std::invalid_argument("cz_check: requires p >= 2");
  if (!allow_any_s && !(s == 1 || s == p / 2))
    throw std::invalid_argument("cz_check: s must be 1 or p/2 (or pass allow_any_s)");
  if (!prec) prec = Real::default_precision();
  PiecewiseConstant du = res.u.derivative();
  Interval inner(Rat(1, 4), Rat(3, 4));
  Interval unit(Rat(0), Rat(1));
  Real num = ws_abspow_integral(w, du, inner, s, p, prec);
  Real den = ws_abspow_integral(w, forcing, unit, s, p, prec);
  Rat sup = res.u.sup_norm();
  if (sup > 0)
    den += Real::pow(sup, p, prec) * w.power_integral(unit, s, prec);
  if (den.is_zero()) {
    if (num.is_zero()) return Real(Rat(0), prec);
    throw std::logic_error("cz_check: zero denominator with nonzero numerator");
  }
  return num / den;
}

Real construction_cz_ratio(const Construction& c, const Rat& p, const Rat& s,
                           mpfr_prec_t prec) {
  if (!prec) prec = Real::default_precision();
  auto abs_pow = [prec](const Rat& base, const Rat& e) {
    Rat b = rat_abs(base);
    if (b == 0) return Real(Rat(0), prec);
    return Real::pow(b, e, prec);
  };
  auto lhs_density = make_density<Real>(
      c, [&](const Rat& w, const Rat& sl, const Rat&) {
        return Real::pow(w, s, prec) * abs_pow(sl, p);
      });
  auto rhs_density = make_density<Real>(
      c, [&](const Rat& w, const Rat&, const Rat& f) {
        return Real::pow(w, s, prec) * abs_pow(f, p);
      });
  auto ws_density = make_density<Real>(
      c, [&](const Rat& w, const Rat&, const Rat&) { return Real::pow(w, s, prec); });
  Interval inner(Rat(1, 4), Rat(3, 4));
  Interval unit(Rat(0), Rat(1));
  Real num = FunctionalScan<Real>(c, lhs_density).integral(inner);
  Real den = FunctionalScan<Real>(c, rhs_density).integral(unit) +
             abs_pow(c.sup_norm(), p) * FunctionalScan<Real>(c, ws_density).integral(unit);
  return num / den;
}

TrialStats random_trials(int trials, unsigned long seed, mpfr_prec_t prec) {
  if (!prec) prec = Real::default_precision();
  std::mt19937_64 rng(seed);
  TrialStats stats;
  stats.worst_ratio = Real(Rat(0), prec);
  auto rand_long = [&rng](long lo, long hi) {  // inclusive, deterministic
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
  };
  for (int t = 0; t < trials; ++t) {
    long pieces = rand_long(2, 12);
    std::vector<Rat> xs{Rat(0)};
    std::set<long> cuts;
    while (static_cast<long>(cuts.size()) < pieces - 1)
      cuts.insert(rand_long(1, 255));
    for (long cut : cuts) xs.emplace_back(cut, 256);
    xs.push_back(Rat(1));
    std::vector<Rat> wv, fv;
    for (long i = 0; i < pieces; ++i) {
      // w in [1/4, 4]: ratio of dyadics; F in [-1, 1]
      wv.emplace_back(rand_long(16, 256), 64);
      fv.emplace_back(rand_long(-64, 64), 64);
    }
    PiecewiseConstant w = PiecewiseConstant::from_breakpoints(xs, wv, Rat(1));
    PiecewiseConstant f = PiecewiseConstant::from_breakpoints(xs, fv, Rat(0));
    SolveResult res = solve(w, f);
    if (res.u.value_at(Rat(0)) != 0 || res.u.value_at(Rat(1)) != 0)
      stats.all_boundaries_exact = false;
    // flux constancy across the refinement
    PiecewiseConstant du = res.u.derivative();
    for (size_t i = 0; i + 1 < res.u.breakpoints().size(); ++i) {
      Rat mid = (res.u.breakpoints()[i] + res.u.breakpoints()[i + 1]) / 2;
      if (w.value_at(mid) * du.value_at(mid) - w.value_at(mid) * f.value_at(mid) !=
          res.flux)
        stats.all_flux_constant = false;
    }
    Real ratio = cz_check(res, w, f, Rat(2), Rat(1), false, prec);
    if (ratio > stats.worst_ratio) stats.worst_ratio = ratio;
    ++stats.trials;
  }
  return stats;
}

}  // namespace wcz
