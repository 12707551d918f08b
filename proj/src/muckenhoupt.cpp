#include "wcz/muckenhoupt.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <stdexcept>

namespace wcz {

namespace {

struct ArBackend {
  std::vector<Rat> bounds;  // ascending, spanning [win_lo, win_hi]
  std::vector<Rat> wmin, wmax;
  std::function<Rat(const Interval&)> int_w;
  std::function<Real(const Interval&)> int_g;
  std::function<Rat(const Interval&)> int_g_exact;  // only when gamma integral
  bool has_exact = false;
};

struct Search {
  const ArBackend& be;
  Rat r;
  Rat gamma;  // -1/(r-1)
  mpfr_prec_t prec;
  Real rm1;  // r - 1
  Real best;
  Rat best_a, best_b;
  long candidates = 0;
  long pruned = 0;

  Search(const ArBackend& b, const Rat& rr, mpfr_prec_t p)
      : be(b), r(rr), gamma(Rat(-1) / (rr - 1)), prec(p), rm1(Rat(rr - 1), p),
        best(Rat(0), p) {}

  Real phi_from(const Rat& len, const Rat& sw, const Real& sg) {
    Real avg_w(sw / len, prec);
    Real avg_g = sg / Real(len, prec);
    return avg_w * Real::pow(avg_g, rm1);
  }

  Real phi(const Rat& a, const Rat& b) {
    ++candidates;
    Interval q(a, b);
    return phi_from(q.length(), be.int_w(q), be.int_g(q));
  }

  void offer(const Rat& a, const Rat& b, const Real& v) {
    if (v > best) {
      best = v;
      best_a = a;
      best_b = b;
    }
  }

  void offer_eval(const Rat& a, const Rat& b) {
    if (a < b) offer(a, b, phi(a, b));
  }
};

// Coordinate-wise bracket shrink on a smooth single-variable slice.
void refine_coordinate(Search& s, bool move_a, Rat lo, Rat hi, const Rat& other,
                       int rounds) {
  for (int round = 0; round < rounds; ++round) {
    Rat span = hi - lo;
    if (span <= 0) break;
    Rat x1 = lo + span * Rat(3, 8);
    Rat x2 = lo + span * Rat(5, 8);
    auto value = [&](const Rat& x) {
      Rat a = move_a ? x : other;
      Rat b = move_a ? other : x;
      if (a >= b) return Real(Rat(-1), s.prec);
      Real v = s.phi(a, b);
      s.offer(a, b, v);
      return v;
    };
    if (value(x1) >= value(x2))
      hi = x2;
    else
      lo = x1;
  }
}

ArReport run_search(const ArBackend& be, const Rat& r, const SearchConfig& cfg) {
  if (r <= 1) throw std::invalid_argument("ar_characteristic: requires r > 1");
  mpfr_prec_t prec = cfg.prec ? cfg.prec : Real::default_precision();
  Search s(be, r, prec);
  const auto& xs = be.bounds;
  const size_t m = xs.size();

  // prefix arrays at the cell boundaries
  std::vector<Rat> sw(m, Rat(0));
  std::vector<Real> sg(m, Real(Rat(0), prec));
  for (size_t i = 1; i < m; ++i) {
    Interval cell(xs[i - 1], xs[i]);
    sw[i] = sw[i - 1] + be.int_w(cell);
    sg[i] = sg[i - 1] + be.int_g(cell);
  }
  struct Seed {
    Real v;
    size_t i, j;
  };
  std::vector<Seed> seeds;

  for (size_t i = 0; i + 1 < m; ++i) {
    Rat span_max = be.wmax[i];
    Rat span_min = be.wmin[i];
    for (size_t j = i + 1; j < m; ++j) {
      if (j > i + 1) {
        span_max = rat_max(span_max, be.wmax[j - 1]);
        span_min = rat_min(span_min, be.wmin[j - 1]);
      }
      if (cfg.prune && Real(span_max / span_min, prec) <= s.best) {
        ++s.pruned;
        continue;
      }
      ++s.candidates;
      Real v = s.phi_from(xs[j] - xs[i], sw[j] - sw[i], sg[j] - sg[i]);
      s.offer(xs[i], xs[j], v);
      if (static_cast<long>(seeds.size()) < 4 * cfg.refine_top || v > seeds.front().v) {
        seeds.push_back({v, i, j});
        std::push_heap(seeds.begin(), seeds.end(),
                       [](const Seed& a, const Seed& b) { return b.v < a.v; });
        if (static_cast<long>(seeds.size()) > 4 * cfg.refine_top) {
          std::pop_heap(seeds.begin(), seeds.end(),
                        [](const Seed& a, const Seed& b) { return b.v < a.v; });
          seeds.pop_back();
        }
      }
    }
  }

  // refinement: K-point grid plus bracket passes around the best seeds
  std::sort(seeds.begin(), seeds.end(),
            [](const Seed& a, const Seed& b) { return b.v < a.v; });
  long refined = 0;
  std::set<std::pair<size_t, size_t>> seen;
  for (const auto& seed : seeds) {
    if (refined >= cfg.refine_top) break;
    if (!seen.insert({seed.i, seed.j}).second) continue;
    ++refined;
    size_t i = seed.i, j = seed.j;
    Rat a_lo = xs[i > 0 ? i - 1 : 0];
    Rat a_hi = xs[std::min(i + 1, m - 1)];
    Rat b_lo = xs[j > 0 ? j - 1 : 0];
    Rat b_hi = xs[std::min(j + 1, m - 1)];
    Rat a_best = xs[i], b_best = xs[j];
    for (int g = 1; g < cfg.grid_k; ++g) {
      Rat a = a_lo + (a_hi - a_lo) * Rat(g, cfg.grid_k);
      s.offer_eval(a, b_best);
    }
    a_best = s.best_a;
    for (int g = 1; g < cfg.grid_k; ++g) {
      Rat b = b_lo + (b_hi - b_lo) * Rat(g, cfg.grid_k);
      s.offer_eval(a_best, b);
    }
    b_best = s.best_b;
    refine_coordinate(s, true, a_lo, rat_min(a_hi, b_best), b_best, cfg.golden_rounds);
    refine_coordinate(s, false, rat_max(b_lo, s.best_a), b_hi, s.best_a,
                      cfg.golden_rounds);
  }

  // auxiliary wide scan: intervals wider than the window, w = exterior there
  bool wide_smaller = true;
  Rat window_len = cfg.win_hi - cfg.win_lo;
  for (Rat len : {window_len + 1, window_len + 2, Rat(2) * window_len,
                  rat_max(cfg.wide_limit, window_len + 1)}) {
    if (len > cfg.wide_limit) len = cfg.wide_limit;
    for (int g = 0; g <= cfg.wide_grid; ++g) {
      Rat a = cfg.win_lo - (len - window_len) +
              (len - window_len) * Rat(2 * g, cfg.wide_grid) / 2;
      Rat b = a + len;
      Real v = s.phi(a, b);
      if (v > s.best) {
        wide_smaller = false;
        s.offer(a, b, v);
      }
    }
  }

  ArReport rep;
  rep.r = r;
  rep.sup_estimate = s.best;
  rep.argmax_a = s.best_a;
  rep.argmax_b = s.best_b;
  rep.candidates = s.candidates;
  rep.pruned = s.pruned;
  rep.refinement_passes = 1 + cfg.golden_rounds;
  rep.wide_scan_smaller = wide_smaller;
  rep.win_lo = cfg.win_lo;
  rep.win_hi = cfg.win_hi;
  rep.precision = prec;
  if (be.has_exact && rat_is_integer(r)) {
    Interval q(s.best_a, s.best_b);
    Rat avg_w = be.int_w(q) / q.length();
    Rat avg_g = be.int_g_exact(q) / q.length();
    rep.sup_exact = avg_w * rat_pow_int(avg_g, r.get_num().get_si() - 1);
  }
  if (r > 2) rep.theoretical = theoretical_bound(r, 0, prec);
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------
// explicit piecewise-constant weights

namespace {

ArBackend backend_explicit(const PiecewiseConstant& w, const Rat& gamma,
                           const SearchConfig& cfg, mpfr_prec_t prec) {
  if (!w.strictly_positive())
    throw std::invalid_argument("ar_characteristic: weight must be positive");
  ArBackend be;
  std::set<Rat> bounds{cfg.win_lo, cfg.win_hi};
  for (const auto& x : w.breakpoints())
    if (x > cfg.win_lo && x < cfg.win_hi) bounds.insert(x);
  be.bounds.assign(bounds.begin(), bounds.end());
  for (size_t i = 0; i + 1 < be.bounds.size(); ++i) {
    Rat mid = (be.bounds[i] + be.bounds[i + 1]) / 2;
    Rat v = w.value_at(mid);
    be.wmin.push_back(v);
    be.wmax.push_back(v);
  }
  auto wp = std::make_shared<PiecewiseConstant>(w);
  auto tw = std::make_shared<PrefixTableRat>(*wp, Rat(1));
  auto tg = std::make_shared<PrefixTableReal>(*wp, gamma, prec);
  be.int_w = [wp, tw](const Interval& q) { return tw->integral(q); };
  be.int_g = [wp, tg](const Interval& q) { return tg->integral(q); };
  if (rat_is_integer(gamma)) {
    auto tge = std::make_shared<PrefixTableRat>(*wp, gamma);
    be.int_g_exact = [wp, tge](const Interval& q) { return tge->integral(q); };
    be.has_exact = true;
  }
  return be;
}

}  // namespace

ArReport ar_characteristic(const PiecewiseConstant& w, const Rat& r,
                           const SearchConfig& cfg) {
  if (r <= 1) throw std::invalid_argument("ar_characteristic: requires r > 1");
  mpfr_prec_t prec = cfg.prec ? cfg.prec : Real::default_precision();
  Rat gamma = Rat(-1) / (r - 1);
  return run_search(backend_explicit(w, gamma, cfg, prec), r, cfg);
}

// ---------------------------------------------------------------------------
// constructed weights (shared-structure descent)

namespace {

ArBackend backend_construction(const Construction& c, const Rat& gamma,
                               const SearchConfig& cfg, mpfr_prec_t prec) {
  ArBackend be;
  std::set<Rat> bounds{cfg.win_lo, cfg.win_hi, Rat(0), Rat(1)};

  // subsampled level-1 tooth boundaries with their H/B splits
  const Int& m1 = c.level1_teeth();
  Int stride = rat_ceil(Rat(m1) / Rat(std::max(cfg.boundary_budget / 2, 8L)));
  for (Int i(0); i < m1; i += stride) {
    Rat start = Rat(i) / Rat(m1);
    bounds.insert(start);
    bounds.insert(start + c.level1_h_len());
  }

  // deep spine: boundaries of the leftmost instance chain, layers subsampled
  Rat x = Rat(0);
  Rat lam = c.level1_h_len();
  for (const auto& plan : c.levels()) {
    bounds.insert(x);
    bounds.insert(x + lam);
    for (const Rat& frac :
         {Rat(1, 4), Rat(1, 2), Rat(3, 4), pow2(-plan.depth - 1), pow2(-plan.depth)})
      bounds.insert(x + lam * frac);
    for (int j = 1; j <= plan.depth; j = j < 4 ? j + 1 : (3 * j) / 2) {
      bounds.insert(x + lam * pow2(-j - 1));
      bounds.insert(x + lam * (1 - pow2(-j - 1)));
    }
    const CubeClass& deepest = plan.classes.back();
    x += lam * pow2(-plan.depth - 1);
    lam = plan.f1 * lam * deepest.len / Rat(deepest.teeth);
  }
  bounds.insert(x);
  bounds.insert(x + lam);

  be.bounds.assign(bounds.begin(), bounds.end());
  Rat w_lo = pow2(-c.n());
  for (size_t i = 0; i + 1 < be.bounds.size(); ++i) {
    bool outside = be.bounds[i + 1] <= 0 || be.bounds[i] >= 1;
    be.wmin.push_back(outside ? Rat(1) : w_lo);
    be.wmax.push_back(Rat(1));
  }

  auto w_density = make_density<Rat>(
      c, [](const Rat& w, const Rat&, const Rat&) { return w; });
  auto sw = std::make_shared<FunctionalScan<Rat>>(c, w_density);
  auto g_density = make_density<Real>(
      c, [&gamma, prec](const Rat& w, const Rat&, const Rat&) {
        return Real::pow(w, gamma, prec);
      });
  auto sg = std::make_shared<FunctionalScan<Real>>(c, g_density);
  be.int_w = [sw](const Interval& q) { return sw->integral(q); };
  be.int_g = [sg](const Interval& q) { return sg->integral(q); };
  if (rat_is_integer(gamma) && gamma.get_num().fits_slong_p()) {
    long ge = gamma.get_num().get_si();
    auto ge_density = make_density<Rat>(
        c, [ge](const Rat& w, const Rat&, const Rat&) { return rat_pow_int(w, ge); });
    auto sge = std::make_shared<FunctionalScan<Rat>>(c, ge_density);
    be.int_g_exact = [sge](const Interval& q) { return sge->integral(q); };
    be.has_exact = true;
  }
  return be;
}

}  // namespace

ArReport ar_characteristic(const Construction& c, const Rat& r, const SearchConfig& cfg) {
  if (r <= 1) throw std::invalid_argument("ar_characteristic: requires r > 1");
  mpfr_prec_t prec = cfg.prec ? cfg.prec : Real::default_precision();
  Rat gamma = Rat(-1) / (r - 1);
  return run_search(backend_construction(c, gamma, cfg, prec), r, cfg);
}

// ---------------------------------------------------------------------------
// theoretical majorant

Real theoretical_bound(const Rat& r, int /*n*/, mpfr_prec_t prec) {
  if (r <= 2)
    throw std::invalid_argument("theoretical_bound: series diverges for r <= 2");
  if (!prec) prec = Real::default_precision();
  Rat theta = (Rat(2) - r) / (r - 1);  // < 0
  Real x = Real::pow(Rat(2), theta, prec);
  Real one(Rat(1), prec);
  // sum_k (1/k) x^k = -log(1 - x)
  Real log_series = -Real::log(one - x);
  Real rm1(Rat(r - 1), prec);
  Real case1 = Real::pow(one + Real(Rat(2), prec) * log_series, rm1);
  Real case2 = Real::pow(Real(Rat(2), prec) / (one - x), rm1);
  Real bound = case1 > case2 ? case1 : case2;
  return bound > one ? bound : one;
}

// ---------------------------------------------------------------------------
// doubling

namespace {

DoublingReport doubling_core(const std::function<Rat(const Interval&)>& int_w,
                             const Real& ar_estimate, const Rat& r,
                             const std::vector<Interval>& probes, mpfr_prec_t prec) {
  DoublingReport rep;
  rep.r = r;
  rep.factor = Real::pow(Real(Rat(2), prec), Real(r, prec)) * ar_estimate;
  rep.worst_ratio = Real(Rat(0), prec);
  rep.all_pass = true;
  for (const auto& q : probes) {
    Rat small = int_w(q);
    Rat big = int_w(q.doubled());
    if (small <= 0) throw std::invalid_argument("doubling_check: empty mass on probe");
    Real ratio(big / small, prec);
    if (ratio > rep.worst_ratio) rep.worst_ratio = ratio;
    if (ratio > rep.factor) rep.all_pass = false;
    ++rep.probes;
  }
  return rep;
}

}  // namespace

DoublingReport doubling_check(const PiecewiseConstant& w, const Rat& r,
                              const std::vector<Interval>& probes,
                              const SearchConfig& cfg) {
  mpfr_prec_t prec = cfg.prec ? cfg.prec : Real::default_precision();
  ArReport ar = ar_characteristic(w, r, cfg);
  PrefixTableRat tw(w, Rat(1));
  auto int_w = [&tw](const Interval& q) { return tw.integral(q); };
  return doubling_core(int_w, ar.sup_estimate, r, probes, prec);
}

DoublingReport doubling_check(const Construction& c, const Rat& r,
                              const std::vector<Interval>& probes,
                              const SearchConfig& cfg) {
  mpfr_prec_t prec = cfg.prec ? cfg.prec : Real::default_precision();
  ArReport ar = ar_characteristic(c, r, cfg);
  auto w_density = make_density<Rat>(
      c, [](const Rat& w, const Rat&, const Rat&) { return w; });
  FunctionalScan<Rat> sw(c, w_density);
  auto int_w = [&sw](const Interval& q) { return sw.integral(q); };
  return doubling_core(int_w, ar.sup_estimate, r, probes, prec);
}

}  // namespace wcz
