#include "wcz/certify.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace wcz {

PiecewiseConstant make_forcing(const Materialized& m) { return m.forcing; }

// ---------------------------------------------------------------------------
// distributional residual

namespace {

// centers drawn from dyadic grid 2^-12 .. 1 - 2^-12, half-width dyadic too
std::vector<Interval> random_hats(int count, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::vector<Interval> hats;
  hats.reserve(static_cast<size_t>(count));
  const long grid = 1 << 12;
  while (static_cast<int>(hats.size()) < count) {
    long c = 1 + static_cast<long>(rng() % static_cast<unsigned long>(grid - 1));
    long h = 1 + static_cast<long>(rng() % 64);
    Rat center(c, grid);
    Rat half(h, grid * 4);
    if (center - half <= 0 || center + half >= 1) continue;
    hats.emplace_back(center - half, center + half);
  }
  return hats;
}

// int (w u' - w F) phi' for the hat on (a, b): slopes +/- 1/half.
template <class PrefixFn>
Rat hat_residual(const Interval& hat, PrefixFn&& prefix) {
  Rat mid = (hat.a + hat.b) / 2;
  Rat half = (hat.b - hat.a) / 2;
  Rat up = prefix(mid) - prefix(hat.a);
  Rat down = prefix(hat.b) - prefix(mid);
  return (up - down) / half;
}

}  // namespace

PdeReport pde_residual(const Construction& c, int test_count, unsigned long seed) {
  PdeReport rep;
  const SequenceTable& t = c.table();
  rep.per_piece_ok = true;
  for (int k = 1; k <= t.n; ++k) {  // G_k classes: F = 0
    if (t.w_level[k] * t.g_slope[k] - t.w_level[k] * 0 != -1) rep.per_piece_ok = false;
    ++rep.classes_checked;
  }
  for (int k = 1; k < t.n; ++k) {  // error classes: F = h^k + 2^k
    if (t.w_level[k] * t.h[k] - t.w_level[k] * (t.h[k] + pow2(k)) != -1)
      rep.per_piece_ok = false;
    ++rep.classes_checked;
  }
  if (Rat(1) * t.b - Rat(1) * (t.b + 1) != -1) rep.per_piece_ok = false;  // B class
  if (Rat(1) * Rat(0) - Rat(1) * Rat(1) != -1) rep.per_piece_ok = false;  // exterior
  rep.classes_checked += 2;

  auto density = make_density<Rat>(c, [](const Rat& w, const Rat& s, const Rat& f) {
    return w * s - w * f;
  });
  FunctionalScan<Rat> scan(c, density);
  rep.hat_tests = test_count;
  rep.hats_zero = true;
  for (const auto& hat : random_hats(test_count, seed)) {
    Rat res = hat_residual(hat, [&scan](const Rat& x) { return scan.prefix01(x); });
    rep.worst_residual = rat_max(rep.worst_residual, rat_abs(res));
    if (res != 0) rep.hats_zero = false;
  }
  return rep;
}

PdeReport pde_residual_explicit(const PiecewiseLinear& u, const PiecewiseConstant& w,
                                const PiecewiseConstant& forcing, int test_count,
                                unsigned long seed) {
  PdeReport rep;
  PiecewiseConstant du = u.derivative();
  // common refinement over the union of breakpoints in [0,1]
  std::vector<Rat> xs;
  auto push_all = [&xs](const std::vector<Rat>& v) {
    for (const auto& x : v)
      if (x >= 0 && x <= 1) xs.push_back(x);
  };
  push_all(du.breakpoints());
  push_all(w.breakpoints());
  push_all(forcing.breakpoints());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  rep.per_piece_ok = true;
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    Rat mid = (xs[i] + xs[i + 1]) / 2;
    Rat val = w.value_at(mid) * du.value_at(mid) - w.value_at(mid) * forcing.value_at(mid);
    if (val != -1) rep.per_piece_ok = false;
    ++rep.classes_checked;
  }

  // exact prefix of g = w u' - w F from 0
  std::vector<Rat> pref(xs.size(), Rat(0));
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    Rat mid = (xs[i] + xs[i + 1]) / 2;
    Rat g = w.value_at(mid) * du.value_at(mid) - w.value_at(mid) * forcing.value_at(mid);
    pref[i + 1] = pref[i] + g * (xs[i + 1] - xs[i]);
  }
  auto prefix = [&xs, &pref](const Rat& x) {
    size_t i = static_cast<size_t>(
        std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    if (i == 0) return Rat(0);
    if (i >= xs.size()) return pref.back();
    // x inside piece i-1..i: linear with the piece's constant density
    Rat mid = (xs[i - 1] + xs[i]) / 2;
    (void)mid;
    Rat dens = (pref[i] - pref[i - 1]) / (xs[i] - xs[i - 1]);
    return Rat(pref[i - 1] + dens * (x - xs[i - 1]));
  };
  rep.hat_tests = test_count;
  rep.hats_zero = true;
  for (const auto& hat : random_hats(test_count, seed)) {
    Rat res = hat_residual(hat, prefix);
    rep.worst_residual = rat_max(rep.worst_residual, rat_abs(res));
    if (res != 0) rep.hats_zero = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// blow-up certificates

namespace {

Real abs_pow(const Rat& base, const Rat& e, mpfr_prec_t prec) {
  Rat b = rat_abs(base);
  if (b == 0) return Real(Rat(0), prec);
  return Real::pow(b, e, prec);
}

}  // namespace

CertificateReport blowup_ratio(const Construction& c, const Rat& p, const Rat& s,
                               const Rat& gamma_target, mpfr_prec_t prec) {
  if (p < 2) throw std::invalid_argument("blowup_ratio: requires p >= 2");
  if (s < 1) throw std::invalid_argument("blowup_ratio: requires s >= 1");
  if (!prec) prec = Real::default_precision();
  const SequenceTable& t = c.table();
  CertificateReport rep;
  rep.n = t.n;
  rep.p = p;
  rep.s = s;
  rep.precision = prec;
  rep.gamma_target = gamma_target;
  rep.sup_norm = c.sup_norm();

  auto lhs_density = make_density<Real>(
      c, [&p, &s, prec](const Rat& w, const Rat& sl, const Rat&) {
        return Real::pow(w, s, prec) * abs_pow(sl, p, prec);
      });
  auto rhs_density = make_density<Real>(
      c, [&p, &s, prec](const Rat& w, const Rat&, const Rat& f) {
        return Real::pow(w, s, prec) * abs_pow(f, p, prec);
      });
  auto ws_density = make_density<Real>(
      c, [&s, prec](const Rat& w, const Rat&, const Rat&) {
        return Real::pow(w, s, prec);
      });
  Interval unit(Rat(0), Rat(1));
  rep.lhs = FunctionalScan<Real>(c, lhs_density).integral(unit);
  rep.rhs_f = FunctionalScan<Real>(c, rhs_density).integral(unit);
  Real ws_total = FunctionalScan<Real>(c, ws_density).integral(unit);
  rep.rhs_u = abs_pow(c.sup_norm(), p, prec) * ws_total;

  // per-label ledger from the audited measures; closed form on the side
  Real lhs_closed(Rat(0), prec), lhs_err(Rat(0), prec), rhs_err(Rat(0), prec);
  {
    Real v = Real(t.beta, prec) * abs_pow(t.b, p, prec);
    Real rf = Real(t.beta, prec) * abs_pow(t.b + 1, p, prec);
    rep.ledger.push_back({"B", t.beta, v, rf});
    lhs_closed += v;
  }
  for (int k = 1; k <= t.n; ++k) {
    const Rat& m = c.measure_g()[static_cast<size_t>(k)];
    Real v = Real(m, prec) * Real::pow(Rat(2), Rat(k) * (p - s), prec);
    rep.ledger.push_back({"G_" + std::to_string(k), m, v, Real(Rat(0), prec)});
    lhs_closed += v;
  }
  for (int k = 1; k < t.n; ++k) {
    const Rat& m = c.measure_err()[static_cast<size_t>(k)];
    if (m == 0) continue;
    Real ws = Real::pow(t.w_level[k], s, prec);
    Real v = Real(m, prec) * ws * abs_pow(t.h[k], p, prec);
    Real rf = Real(m, prec) * ws * abs_pow(t.h[k] + pow2(k), p, prec);
    rep.ledger.push_back({"error@" + std::to_string(k), m, v, rf});
    lhs_err += v;
    rhs_err += rf;
  }
  rep.lhs_closed = lhs_closed;
  rep.lhs_err = lhs_err;
  rep.rhs_f_err = rhs_err;

  Real denom = rep.rhs_f + rep.rhs_u;
  if (denom.is_zero() && rep.lhs.is_zero()) {
    rep.status = RatioStatus::undefined;
    rep.ratio = Real(Rat(0), prec);
    rep.pass = false;
    return rep;
  }
  rep.ratio = rep.lhs / denom;
  rep.pass = gamma_target > 0 && rep.ratio > Real(gamma_target, prec);
  return rep;
}

CertificateReport blowup_closed_form(const SequenceTable& t, const Rat& p, const Rat& s,
                                     mpfr_prec_t prec) {
  if (p < 2) throw std::invalid_argument("blowup_closed_form: requires p >= 2");
  if (s < 1) throw std::invalid_argument("blowup_closed_form: requires s >= 1");
  if (!prec) prec = Real::default_precision();
  CertificateReport rep;
  rep.n = t.n;
  rep.p = p;
  rep.s = s;
  rep.precision = prec;
  rep.sup_norm = Rat(0);
  Real lhs = Real(t.beta, prec) * abs_pow(t.b, p, prec);
  for (int k = 1; k <= t.n; ++k)
    lhs += Real(t.mu[k], prec) * Real::pow(Rat(2), Rat(k) * (p - s), prec);
  rep.lhs = lhs;
  rep.lhs_closed = lhs;
  rep.lhs_err = Real(Rat(0), prec);
  rep.rhs_f = Real(t.beta, prec) * abs_pow(t.b + 1, p, prec);
  rep.rhs_f_err = Real(Rat(0), prec);
  rep.rhs_u = Real(Rat(0), prec);
  rep.ratio = rep.lhs / rep.rhs_f;
  return rep;
}

SweepResult find_n(const Rat& p, const Rat& s, const Rat& gamma, int n_max,
                   const BuildParams& like, mpfr_prec_t prec) {
  if (!prec) prec = Real::default_precision();
  SweepResult out;
  out.p = p;
  out.s = s;
  out.gamma = gamma;
  out.n_max = n_max;
  for (int n = 1; n <= n_max; ++n) {
    BuildParams bp = like;
    bp.n = n;
    bp.epsilon = Rat(0);  // re-derive 2^{-(n+2) p_hint} per n
    bp.p_hint = rat_max(p, bp.p_hint);
    Construction c = build(bp);
    CertificateReport cr = blowup_ratio(c, p, s, gamma, prec);
    SweepRow row{n, p, s, cr.lhs, cr.rhs_f, cr.rhs_u, cr.ratio, cr.status, cr.pass};
    out.rows.push_back(row);
    CertificateReport ctrl = blowup_ratio(c, Rat(2), Rat(1), Rat(0), prec);
    out.control_rows.push_back({n, Rat(2), Rat(1), ctrl.lhs, ctrl.rhs_f, ctrl.rhs_u,
                                ctrl.ratio, ctrl.status, false});
    if (!out.first_n && cr.pass) out.first_n = n;
  }
  return out;
}

}  // namespace wcz
