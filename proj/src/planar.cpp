#include "wcz/planar.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <stdexcept>

namespace wcz {

PlanarExtension::PlanarExtension(const PiecewiseConstant& w) {
  auto wp = std::make_shared<PiecewiseConstant>(w);
  if (!wp->strictly_positive())
    throw std::invalid_argument("PlanarExtension: weight must be positive");
  int_w_ = [wp](const Interval& q) { return wp->power_integral_int(q, 1); };
  int_w_pow_ = [wp](const Interval& q, const Rat& g, mpfr_prec_t prec) {
    return wp->power_integral(q, g, prec);
  };
}

PlanarExtension::PlanarExtension(const PiecewiseConstant& w,
                                 const PiecewiseConstant& forcing,
                                 const PiecewiseLinear& u)
    : PlanarExtension(w) {
  auto wp = std::make_shared<PiecewiseConstant>(w);
  auto fp = std::make_shared<PiecewiseConstant>(forcing);
  auto dup = std::make_shared<PiecewiseConstant>(u.derivative());
  int_pde_ = [wp, fp, dup](const Interval& q) {
    // exact piece walk of w u' - w F over q
    std::vector<Rat> xs{q.a, q.b};
    for (const auto& x : wp->breakpoints())
      if (x > q.a && x < q.b) xs.push_back(x);
    for (const auto& x : fp->breakpoints())
      if (x > q.a && x < q.b) xs.push_back(x);
    for (const auto& x : dup->breakpoints())
      if (x > q.a && x < q.b) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    Rat acc(0);
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
      Rat mid = (xs[i] + xs[i + 1]) / 2;
      acc += (wp->value_at(mid) * dup->value_at(mid) -
              wp->value_at(mid) * fp->value_at(mid)) *
             (xs[i + 1] - xs[i]);
    }
    return acc;
  };
  has_pde_ = true;
}

PlanarExtension::PlanarExtension(const Construction& c) {
  auto w_density = make_density<Rat>(
      c, [](const Rat& w, const Rat&, const Rat&) { return w; });
  auto sw = std::make_shared<FunctionalScan<Rat>>(c, w_density);
  int_w_ = [sw](const Interval& q) { return sw->integral(q); };
  auto cp = &c;
  int_w_pow_ = [cp](const Interval& q, const Rat& g, mpfr_prec_t prec) {
    if (!prec) prec = Real::default_precision();
    auto density = make_density<Real>(
        *cp, [&g, prec](const Rat& w, const Rat&, const Rat&) {
          return Real::pow(w, g, prec);
        });
    return FunctionalScan<Real>(*cp, density).integral(q);
  };
  auto pde_density = make_density<Rat>(
      c, [](const Rat& w, const Rat& s, const Rat& f) { return w * s - w * f; });
  auto sp = std::make_shared<FunctionalScan<Rat>>(c, pde_density);
  int_pde_ = [sp](const Interval& q) { return sp->integral(q); };
  has_pde_ = true;
}

Rat PlanarExtension::int_w(const Interval& q) const { return int_w_(q); }

Real PlanarExtension::int_w_pow(const Interval& q, const Rat& gamma,
                                mpfr_prec_t prec) const {
  return int_w_pow_(q, gamma, prec ? prec : Real::default_precision());
}

std::optional<Rat> PlanarExtension::int_pde(const Interval& q) const {
  if (!has_pde_) return std::nullopt;
  return int_pde_(q);
}

Ar2Report ar2_sampled(const PlanarExtension& ext, const Rat& r, int grid,
                      mpfr_prec_t prec) {
  if (r <= 1) throw std::invalid_argument("ar2_sampled: requires r > 1");
  if (grid < 8) throw std::invalid_argument("ar2_sampled: grid must be >= 8");
  if (!prec) prec = Real::default_precision();
  Rat gamma = Rat(-1) / (r - 1);
  Real rm1(Rat(r - 1), prec);
  Ar2Report rep;
  rep.r = r;
  rep.precision = prec;
  rep.sup_sampled = Real(Rat(0), prec);
  const Rat lo(-1), hi(2);
  Rat step = (hi - lo) / grid;
  // dyadic side lengths plus the lattice step multiples
  std::vector<Rat> sides;
  for (int e = 0; e <= 8; ++e) sides.push_back(Rat(3) * pow2(-e));
  for (int m : {1, 2, 4}) sides.push_back(step * m);
  for (const Rat& side : sides) {
    for (int gx = 0; gx < grid; ++gx) {
      Rat x = lo + step * gx;
      if (x + side > hi) continue;
      // W(x,y) = w(x): the y-average cancels, one evaluation per column
      // serves every y on the lattice.
      Interval span(x, x + side);
      Real avg_w = Real(ext.int_w(span) / side, prec);
      Real avg_g = ext.int_w_pow(span, gamma, prec) / Real(side, prec);
      Real phi = avg_w * Real::pow(avg_g, rm1);
      long rows = 0;
      for (int gy = 0; gy < grid; ++gy) {
        Rat y = lo + step * gy;
        if (y + side > hi) continue;
        ++rows;
      }
      rep.squares += rows;
      if (rows > 0 && phi > rep.sup_sampled) {
        rep.sup_sampled = phi;
        rep.argmax = {x, lo, side};
      }
    }
  }
  return rep;
}

WeakFormReport weak_form_residual(const PlanarExtension& ext, int tests,
                                  unsigned long seed) {
  if (!ext.int_pde(Interval(Rat(0), Rat(1))))
    throw std::invalid_argument("weak_form_residual: extension carries no u/F profile");
  std::mt19937_64 rng(seed);
  WeakFormReport rep;
  rep.all_zero = true;
  const long grid = 1 << 10;
  auto rand_hat = [&rng, grid]() {
    while (true) {
      long c = 1 + static_cast<long>(rng() % static_cast<unsigned long>(grid - 1));
      long h = 1 + static_cast<long>(rng() % 32);
      Rat center(c, grid);
      Rat half(h, grid * 4);
      if (center - half > 0 && center + half < 1) return Interval(center - half, center + half);
    }
  };
  for (int t = 0; t < tests; ++t) {
    // phi = phi1(x) phi2(y); every third test uses a y-only phi
    bool y_only = (t % 3 == 2);
    Interval hy = rand_hat();
    Rat int_phi2 = hy.length() / 2;  // area under the unit hat
    Rat residual(0);
    if (!y_only) {
      Interval hx = rand_hat();
      Rat mid = (hx.a + hx.b) / 2;
      Rat half = (hx.b - hx.a) / 2;
      // int g phi1' = (1/half)(int_{a}^{mid} g - int_{mid}^{b} g)
      Rat up = *ext.int_pde(Interval(hx.a, mid));
      Rat down = *ext.int_pde(Interval(mid, hx.b));
      residual = ((up - down) / half) * int_phi2;
    }
    // y-only phi: grad phi = (0, phi2'), orthogonal to (g, 0): zero term
    rep.worst_residual = rat_max(rep.worst_residual, rat_abs(residual));
    if (residual != 0) rep.all_zero = false;
    ++rep.tests;
  }
  return rep;
}

}  // namespace wcz
