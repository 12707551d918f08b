#include "wcz/construct1d.hpp"

#include <algorithm>
#include <stdexcept>

#include "wcz/jsonio.hpp"

namespace wcz {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::logic_error("wcz: " + msg); }

void check(bool ok, const char* msg) {
  if (!ok) fail(msg);
}

// ceil(q) clamped to >= 1
Int ceil_at_least_one(const Rat& q) {
  Int m = rat_ceil(q);
  if (m < 1) m = 1;
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// BuildParams

Rat BuildParams::resolved_epsilon() const {
  if (epsilon != 0) return epsilon;
  // 2^{-(n+2) p_hint}; rounded down to the next dyadic when the exponent is
  // fractional so the value stays rational and the guard stays strict.
  Rat e = Rat(n + 2) * p_hint;
  return pow2(-static_cast<long>(rat_ceil(e).get_si()));
}

void BuildParams::validate() const {
  if (n < 1) throw std::invalid_argument("BuildParams: n must be >= 1");
  if (delta <= 0) throw std::invalid_argument("BuildParams: delta must be positive");
  if (p_hint <= 0) throw std::invalid_argument("BuildParams: p_hint must be positive");
  Rat eps = resolved_epsilon();
  if (eps <= 0) throw std::invalid_argument("BuildParams: epsilon must be positive");
  // exact guard: 2^{(n+1) p_hint} * eps <= 1, i.e. eps^b 2^{(n+1)a} <= 1
  // with p_hint = a/b.
  const Int& a = p_hint.get_num();
  const Int& b = p_hint.get_den();
  if (!b.fits_ulong_p() || b.get_ui() > 512)
    throw std::invalid_argument("BuildParams: p_hint denominator too large");
  unsigned long bu = b.get_ui();
  Int lhs, rhs, two_pow;
  mpz_pow_ui(lhs.get_mpz_t(), eps.get_num_mpz_t(), bu);
  Int e = Int(n + 1) * a;
  if (!e.fits_ulong_p()) throw std::invalid_argument("BuildParams: exponent overflow");
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2u, e.get_ui());
  lhs *= two_pow;
  mpz_pow_ui(rhs.get_mpz_t(), eps.get_den_mpz_t(), bu);
  if (lhs > rhs)
    throw std::invalid_argument("BuildParams: epsilon violates 2^{(n+1)p} eps <= 1");
}

nlohmann::json BuildParams::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["delta"] = rat_to_json(delta);
  j["epsilon"] = rat_to_json(epsilon);
  j["p_hint"] = rat_to_json(p_hint);
  return j;
}

BuildParams BuildParams::from_json(const nlohmann::json& j) {
  BuildParams p;
  p.n = j.at("n").get<int>();
  p.delta = rat_from_json(j.at("delta"));
  p.epsilon = rat_from_json(j.at("epsilon"));
  p.p_hint = rat_from_json(j.at("p_hint"));
  return p;
}

std::string Label::str() const {
  switch (kind) {
    case LabelKind::G: return "G_" + std::to_string(level);
    case LabelKind::B: return "B";
    case LabelKind::Error: return "error@" + std::to_string(level);
    case LabelKind::Exterior: return "exterior";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// build

Construction build(const BuildParams& params) {
  params.validate();
  Construction c;
  c.params_ = params;
  c.table_ = build_table(params.n);
  const SequenceTable& t = c.table_;
  const int n = t.n;
  const Rat eps = params.resolved_epsilon();
  const Rat& delta = params.delta;

  // level-1 sawtooth on (0,1): slopes h^1 (fraction alpha_1) and b (beta)
  c.m1_ = ceil_at_least_one(rat_abs(t.h[1]) * 2 / delta);
  c.lambda1_ = t.alpha[1] / Rat(c.m1_);
  check(rat_abs(t.h[1]) * c.lambda1_ <= delta / 2, "level-1 sup budget violated");

  Int comp_count = c.m1_;
  Rat comp_len_max = c.lambda1_;
  Rat meas_h = t.alpha[1];

  c.meas_g_.assign(static_cast<size_t>(n) + 1, Rat(0));
  c.meas_err_.assign(static_cast<size_t>(n) + 1, Rat(0));
  c.err_total_ = 0;
  c.meas_b_ = t.beta;

  for (int k = 1; k <= n - 1; ++k) {
    LevelPlan plan;
    plan.k = k;
    plan.comp_count = comp_count;
    plan.comp_len_max = comp_len_max;
    plan.measure_in = meas_h;
    plan.f1 = t.alpha[k + 1] / t.alpha[k];
    plan.f2 = t.mu[k] / t.alpha[k];
    check(plan.f1 + plan.f2 == 1, "f1 + f2 must be 1");

    int d = depth_for_budget(comp_count, eps);
    // keep 2^{-D} alpha_k <= eps mu_k so the per-cube audit bound is exact
    d = std::max(d, depth_for_budget(Int(1), eps * t.mu[k] / t.alpha[k]));
    plan.depth = d;

    Rat slope_sum = rat_abs(t.h[k + 1]) + rat_abs(t.h[k]);
    Rat slope_gap = rat_abs(t.h[k + 1] - t.h[k]);
    Rat max_tooth(0);
    Int cubes_teeth(0);
    for (int j = 1; j <= d; ++j) {
      CubeClass cls;
      cls.layer = j;
      cls.len = pow2(-j - 8);
      cls.teeth =
          ceil_at_least_one(comp_len_max * cls.len * slope_sum * pow2(k + 1) / delta);
      max_tooth = rat_max(max_tooth, Rat(cls.len / Rat(cls.teeth)));
      cubes_teeth += 256 * cls.teeth;
      plan.classes.push_back(std::move(cls));
    }
    plan.step_dev = slope_gap * plan.f1 * comp_len_max * max_tooth;
    check(plan.step_dev <= delta * pow2(-k - 1), "per-step sup budget violated");

    c.meas_g_[static_cast<size_t>(k)] = meas_h * (1 - pow2(-d)) * plan.f2;
    c.meas_err_[static_cast<size_t>(k)] = meas_h * pow2(-d);
    c.err_total_ += c.meas_err_[static_cast<size_t>(k)];
    meas_h = meas_h * (1 - pow2(-d)) * plan.f1;
    comp_len_max = plan.f1 * comp_len_max * max_tooth;
    comp_count *= cubes_teeth;
    c.levels_.push_back(std::move(plan));
  }
  c.meas_g_[static_cast<size_t>(n)] = meas_h;

  Rat sum = c.meas_b_ + c.err_total_;
  for (int k = 1; k <= n; ++k) sum += c.meas_g_[static_cast<size_t>(k)];
  check(sum == 1, "label measures must tile [0,1] exactly");

  // Exact sup norm. path_k = u relative to the left endpoint of a unit H^k
  // component; the minimum is attained either at the chord end or at a
  // tooth switch of the rightmost tooth of some cube class.
  std::vector<Rat> pmin(static_cast<size_t>(n) + 1, Rat(0));
  pmin[static_cast<size_t>(n)] = t.h[n];
  for (int k = n - 1; k >= 1; --k) {
    const LevelPlan& plan = c.levels_[static_cast<size_t>(k - 1)];
    Rat best = t.h[k];
    for (const auto& cls : plan.classes) {
      Rat tooth = cls.len / Rat(cls.teeth);
      Rat tau_max = 1 - pow2(-cls.layer - 1) - tooth;
      Rat v = t.h[k] * tau_max + plan.f1 * tooth * pmin[static_cast<size_t>(k + 1)];
      best = rat_min(best, v);
    }
    pmin[static_cast<size_t>(k)] = best;
  }
  c.sup_norm_ = c.lambda1_ * rat_abs(pmin[1]);
  check(c.sup_norm_ <= delta, "sup norm exceeds delta");
  return c;
}

// ---------------------------------------------------------------------------
// FunctionalScan

template <class Num>
Num FunctionalScan<Num>::from_rat(const Rat& q) const {
  if constexpr (std::is_same_v<Num, Rat>) {
    return q;
  } else {
    return Real(q, leaf_.b.precision());
  }
}

template <class Num>
FunctionalScan<Num>::FunctionalScan(const Construction& c, LeafDensity<Num> leaf)
    : c_(&c), leaf_(std::move(leaf)) {
  const int n = c.n();
  unit_.assign(static_cast<size_t>(n) + 1, from_rat(Rat(0)));
  cube_unit_.assign(static_cast<size_t>(n) + 1, from_rat(Rat(0)));
  cum_.resize(static_cast<size_t>(n) + 1);
  unit_[static_cast<size_t>(n)] = leaf_.g[static_cast<size_t>(n)];
  for (int k = n - 1; k >= 1; --k) {
    const LevelPlan& plan = c.levels_[static_cast<size_t>(k - 1)];
    Rat resw = pow2(-plan.depth - 1);
    cube_unit_[static_cast<size_t>(k)] =
        from_rat(plan.f1) * unit_[static_cast<size_t>(k + 1)] +
        from_rat(plan.f2) * leaf_.g[static_cast<size_t>(k)];
    unit_[static_cast<size_t>(k)] =
        from_rat(2 * resw) * leaf_.err[static_cast<size_t>(k)] +
        from_rat(1 - 2 * resw) * cube_unit_[static_cast<size_t>(k)];
    // cumulative totals over [resL, L_D..L_1, R_1..R_D, resR]
    auto& cum = cum_[static_cast<size_t>(k)];
    cum.clear();
    cum.reserve(static_cast<size_t>(2 * plan.depth) + 3);
    cum.push_back(from_rat(Rat(0)));
    Num res_total = from_rat(resw) * leaf_.err[static_cast<size_t>(k)];
    cum.push_back(cum.back() + res_total);
    for (int i = 0; i < 2 * plan.depth; ++i) {
      int j = i < plan.depth ? plan.depth - i : i - plan.depth + 1;
      Num seg = from_rat(pow2(-j - 1)) * cube_unit_[static_cast<size_t>(k)];
      cum.push_back(cum.back() + seg);
    }
    cum.push_back(cum.back() + res_total);
  }
  tooth_total_ = from_rat(c.lambda1_) * unit_[1] +
                 from_rat(c.table_.beta / Rat(c.m1_)) * leaf_.b;
  total_ = from_rat(c.table_.alpha[1]) * unit_[1] + from_rat(c.table_.beta) * leaf_.b;
}

template <class Num>
Num FunctionalScan<Num>::descend(int k, const Rat& xi) const {
  const int n = c_->n();
  if (k == n) return from_rat(xi) * leaf_.g[static_cast<size_t>(n)];
  const LevelPlan& plan = c_->levels_[static_cast<size_t>(k - 1)];
  const int d = plan.depth;
  Rat resw = pow2(-d - 1);
  if (xi <= resw) return from_rat(xi) * leaf_.err[static_cast<size_t>(k)];
  if (xi >= 1 - resw)
    return unit_[static_cast<size_t>(k)] -
           from_rat(1 - xi) * leaf_.err[static_cast<size_t>(k)];

  int j = 1;
  size_t idx;
  Rat seg_start;
  if (xi < Rat(1, 2)) {
    Rat thresh(1, 4);
    while (xi < thresh) {
      ++j;
      thresh /= 2;
    }
    idx = static_cast<size_t>(1 + (d - j));
    seg_start = thresh;  // 2^{-j-1}
  } else {
    Rat th = 1 - xi;
    Rat thresh(1, 4);
    while (th <= thresh) {
      ++j;
      thresh /= 2;
    }
    idx = static_cast<size_t>(d + j);
    seg_start = 1 - 2 * thresh;  // 1 - 2^{-j}
  }
  const CubeClass& cls = plan.classes[static_cast<size_t>(j - 1)];
  Rat off = xi - seg_start;
  Int cube_i = rat_floor(off / cls.len);
  Rat tooth = cls.len / Rat(cls.teeth);
  Rat within = off - Rat(cube_i) * cls.len;
  Int tooth_i = rat_floor(within / tooth);
  Rat tpos = within - Rat(tooth_i) * tooth;
  Num acc = cum_[static_cast<size_t>(k)][idx] +
            from_rat(Rat(cube_i) * cls.len + Rat(tooth_i) * tooth) *
                cube_unit_[static_cast<size_t>(k)];
  Rat hlen = plan.f1 * tooth;
  if (tpos < hlen) {
    if (tpos > 0) acc += from_rat(hlen) * descend(k + 1, tpos / hlen);
  } else {
    acc += from_rat(hlen) * unit_[static_cast<size_t>(k + 1)] +
           from_rat(tpos - hlen) * leaf_.g[static_cast<size_t>(k)];
  }
  return acc;
}

template <class Num>
Num FunctionalScan<Num>::prefix01(const Rat& x) const {
  if (x <= 0) return from_rat(Rat(0));
  if (x >= 1) return total_;
  Int i = rat_floor(x * Rat(c_->m1_));
  Rat xi = x - Rat(i) / Rat(c_->m1_);
  Num acc = from_rat(Rat(i)) * tooth_total_;
  if (xi >= c_->lambda1_) {
    acc += from_rat(c_->lambda1_) * unit_[1] + from_rat(xi - c_->lambda1_) * leaf_.b;
  } else if (xi > 0) {
    acc += from_rat(c_->lambda1_) * descend(1, xi / c_->lambda1_);
  }
  return acc;
}

template <class Num>
Num FunctionalScan<Num>::integral(const Interval& q) const {
  Num acc = prefix01(q.b) - prefix01(q.a);
  if (q.a < 0) acc += from_rat(rat_min(q.b, Rat(0)) - q.a) * leaf_.ext;
  if (q.b > 1) acc += from_rat(q.b - rat_max(q.a, Rat(1))) * leaf_.ext;
  return acc;
}

template class FunctionalScan<Rat>;
template class FunctionalScan<Real>;

// ---------------------------------------------------------------------------
// piece counting and materialization

Int Construction::piece_count() const {
  const int n = table_.n;
  Int pc(1);  // pieces of a unit H^n pattern
  for (int k = n - 1; k >= 1; --k) {
    const LevelPlan& plan = levels_[static_cast<size_t>(k - 1)];
    Int per_cube(0);
    for (const auto& cls : plan.classes) per_cube += cls.teeth * (pc + 1);
    pc = 2 + 256 * per_cube;
  }
  return m1_ * (pc + 1);
}

namespace {

struct MatState {
  const Construction* c = nullptr;
  const SequenceTable* t = nullptr;
  std::vector<MaterializedPiece> pieces;
  std::vector<Rat> u_xs, u_ys;
  std::vector<std::vector<Interval>> components;  // per level k
  Rat x = Rat(0), y = Rat(0);

  void emit(const Rat& x1, Label label, const Rat& w, const Rat& slope) {
    pieces.push_back({x, x1, label, w, slope});
    y += slope * (x1 - x);
    x = x1;
    u_xs.push_back(x1);
    u_ys.push_back(y);
  }

  void pattern(int k, const Rat& x0, const Rat& len) {
    components[static_cast<size_t>(k)].emplace_back(x0, x0 + len);
    const int n = t->n;
    if (k == n) {
      emit(x0 + len, Label{LabelKind::G, n}, t->w_level[n], t->h[n]);
      return;
    }
    const LevelPlan& plan = c->levels()[static_cast<size_t>(k - 1)];
    const int d = plan.depth;
    Rat resw = pow2(-d - 1) * len;
    emit(x0 + resw, Label{LabelKind::Error, k}, t->w_level[k], t->h[k]);
    for (int i = 0; i < 2 * d; ++i) {
      int j = i < d ? d - i : i - d + 1;
      int side = i < d ? 0 : 1;
      const CubeClass& cls = plan.classes[static_cast<size_t>(j - 1)];
      Rat seg_start = x0 + len * (side == 0 ? pow2(-j - 1) : 1 - pow2(-j));
      Rat clen = len * cls.len;
      long m = cls.teeth.get_si();
      Rat tooth = clen / Rat(cls.teeth);
      Rat hlen = plan.f1 * tooth;
      for (int cube = 0; cube < 128; ++cube) {
        Rat cx = seg_start + cube * clen;
        for (long ti = 0; ti < m; ++ti) {
          Rat tx = cx + ti * tooth;
          pattern(k + 1, tx, hlen);
          emit(tx + tooth, Label{LabelKind::G, k}, t->w_level[k], t->g_slope[k]);
        }
      }
    }
    emit(x0 + len, Label{LabelKind::Error, k}, t->w_level[k], t->h[k]);
  }
};

}  // namespace

Materialized Construction::materialize(const Int& budget) const {
  Int pc = piece_count();
  if (pc > budget)
    throw std::invalid_argument("materialize: piece count " + pc.get_str() +
                                " exceeds budget " + budget.get_str());
  const int n = table_.n;
  MatState st;
  st.c = this;
  st.t = &table_;
  st.components.resize(static_cast<size_t>(n) + 1);
  st.u_xs.push_back(Rat(0));
  st.u_ys.push_back(Rat(0));
  if (!m1_.fits_slong_p()) throw std::invalid_argument("materialize: m1 too large");
  long m1 = m1_.get_si();
  for (long i = 0; i < m1; ++i) {
    Rat tooth_start = Rat(i) / Rat(m1_);
    st.pattern(1, tooth_start, lambda1_);
    st.emit(Rat(i + 1) / Rat(m1_), Label{LabelKind::B, 0}, Rat(1), table_.b);
  }
  check(st.x == 1 && st.y == 0, "materialize: walk must close at (1, 0)");

  Materialized m;
  m.pieces = std::move(st.pieces);
  m.u = PiecewiseLinear::from_nodes(st.u_xs, st.u_ys, Rat(0));
  std::vector<Rat> wxs, wvs, fvs;
  wxs.push_back(Rat(0));
  for (const auto& p : m.pieces) {
    wxs.push_back(p.x1);
    wvs.push_back(p.w);
    fvs.push_back(p.slope + 1 / p.w);
  }
  m.w = PiecewiseConstant::from_breakpoints(wxs, wvs, Rat(1));
  m.forcing = PiecewiseConstant::from_breakpoints(wxs, fvs, Rat(1));
  for (int k = 1; k <= n - 1; ++k)
    m.forests.push_back(decompose(st.components[static_cast<size_t>(k)],
                                  levels_[static_cast<size_t>(k - 1)].depth));
  return m;
}

// ---------------------------------------------------------------------------
// audit

bool DiagnosticsReport::all_pass() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

namespace {

// fraction of {w = 2^{-j}} within a unit H^k component, j >= k
Rat unit_level_fraction(const Construction& c, int k, int j) {
  const int n = c.n();
  if (k == j) {
    if (k == n) return Rat(1);
    const LevelPlan& plan = c.levels()[static_cast<size_t>(k - 1)];
    Rat resw = pow2(-plan.depth);
    return resw + (1 - resw) * plan.f2;
  }
  const LevelPlan& plan = c.levels()[static_cast<size_t>(k - 1)];
  return (1 - pow2(-plan.depth)) * plan.f1 * unit_level_fraction(c, k + 1, j);
}

}  // namespace

DiagnosticsReport audit(const Construction& c) {
  DiagnosticsReport rep;
  auto add = [&rep](std::string name, bool pass, std::string detail = "") {
    rep.rows.push_back({std::move(name), pass, std::move(detail)});
  };
  const SequenceTable& t = c.table();
  const int n = c.n();
  const Rat eps = c.params().resolved_epsilon();
  const Rat& delta = c.params().delta;

  add("table identities", verify_identities(t).all_pass());
  add("measure(B) == beta exactly", c.measure_b() == t.beta, rat_str(c.measure_b()));

  bool g_ok = true;
  for (int k = 1; k <= n; ++k) {
    const Rat& m = c.measure_g()[static_cast<size_t>(k)];
    if (!(m <= t.mu[k] && m >= t.mu[k] * (1 - eps))) g_ok = false;
  }
  add("measure(G_k) within [mu_k(1-eps), mu_k]", g_ok);

  Rat sum = c.measure_b() + c.measure_err_total();
  for (int k = 1; k <= n; ++k) sum += c.measure_g()[static_cast<size_t>(k)];
  add("measures tile [0,1] exactly", sum == 1, rat_str(sum));
  add("error measure <= eps", c.measure_err_total() <= eps,
      rat_str(c.measure_err_total()));

  add("sup norm <= delta (exact)", c.sup_norm() <= delta, rat_str(c.sup_norm()));
  bool dev_ok = true;
  for (const auto& plan : c.levels())
    if (!(plan.step_dev <= delta * pow2(-plan.k - 1))) dev_ok = false;
  add("per-step deviation <= 2^{-(k+1)} delta", dev_ok);

  // honest structural integrals
  auto slope_density = make_density<Rat>(c, [](const Rat&, const Rat& s, const Rat&) {
    return s;
  });
  slope_density.ext = 0;
  FunctionalScan<Rat> slope_scan(c, slope_density);
  add("int u' == 0 exactly (u(0)=u(1)=0)", slope_scan.total() == 0,
      rat_str(slope_scan.total()));

  auto pde_density = make_density<Rat>(c, [](const Rat& w, const Rat& s, const Rat& f) {
    return w * s - w * f;
  });
  FunctionalScan<Rat> pde_scan(c, pde_density);
  add("int (w u' - w F) == -1 exactly", pde_scan.total() == -1,
      rat_str(pde_scan.total()));

  bool leaf_ok = true;
  for (int k = 1; k <= n; ++k)
    if (t.w_level[k] * t.g_slope[k] != -1) leaf_ok = false;
  add("w u' == -1 on every G_k (label values exact)", leaf_ok);

  bool frac_ok = true;
  for (int k = 1; k <= n - 1; ++k) {
    const LevelPlan& plan = c.levels()[static_cast<size_t>(k - 1)];
    for (int j = k; j <= n; ++j) {
      Rat frac = (j == k) ? plan.f2 : plan.f1 * unit_level_fraction(c, k + 1, j);
      if (!(frac <= (1 + eps) * t.mu[j] / t.alpha[k])) frac_ok = false;
    }
  }
  add("|{w=2^-j} cap W| <= (1+eps)(mu_j/alpha_k)|W| for all cubes", frac_ok);

  return rep;
}

// ---------------------------------------------------------------------------
// sawtooth_replace

SawtoothFragment sawtooth_replace(const Interval& w, const Rat& parent, const Rat& s1,
                                  const Rat& f1, const Rat& s2, const Rat& f2,
                                  const Int& m, const Rat& left_value) {
  if (m < 1) throw std::invalid_argument("sawtooth_replace: m must be >= 1");
  if (f1 <= 0 || f2 <= 0 || f1 + f2 != 1)
    throw std::invalid_argument("sawtooth_replace: fractions must be positive, sum 1");
  if (f1 * s1 + f2 * s2 != parent)
    throw std::invalid_argument("sawtooth_replace: slope/fraction mismatch");
  if (!m.fits_slong_p()) throw std::invalid_argument("sawtooth_replace: m too large");
  long mm = m.get_si();
  Rat tooth = w.length() / Rat(m);
  SawtoothFragment frag;
  std::vector<Rat> xs{w.a}, ys{left_value};
  Rat x = w.a, y = left_value;
  for (long i = 0; i < mm; ++i) {
    Rat x1 = x + f1 * tooth;
    Rat y1 = y + s1 * f1 * tooth;
    Rat x2 = x + tooth;
    Rat y2 = y + parent * tooth;
    frag.parts.emplace_back(Interval(x, x1), 0);
    frag.parts.emplace_back(Interval(x1, x2), 1);
    xs.push_back(x1);
    ys.push_back(y1);
    xs.push_back(x2);
    ys.push_back(y2);
    x = x2;
    y = y2;
  }
  frag.u = PiecewiseLinear::from_nodes(std::move(xs), std::move(ys), Rat(0));
  return frag;
}

// ---------------------------------------------------------------------------
// bundle io

nlohmann::json Construction::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "construction_bundle";
  j["params"] = params_.to_json();
  j["table"] = table_.to_json();
  j["m1"] = m1_.get_str();
  j["lambda1"] = rat_to_json(lambda1_);
  auto levels = nlohmann::json::array();
  for (const auto& p : levels_) {
    nlohmann::json lv;
    lv["k"] = p.k;
    lv["depth"] = p.depth;
    lv["comp_count"] = p.comp_count.get_str();
    lv["comp_len_max"] = rat_to_json(p.comp_len_max);
    lv["measure_in"] = rat_to_json(p.measure_in);
    lv["f1"] = rat_to_json(p.f1);
    lv["f2"] = rat_to_json(p.f2);
    lv["step_dev"] = rat_to_json(p.step_dev);
    auto classes = nlohmann::json::array();
    for (const auto& cls : p.classes)
      classes.push_back({{"layer", cls.layer},
                         {"len", rat_to_json(cls.len)},
                         {"teeth", cls.teeth.get_str()}});
    lv["classes"] = classes;
    levels.push_back(std::move(lv));
  }
  j["levels"] = levels;
  nlohmann::json a;
  a["measure_g"] = rat_vec_to_json(meas_g_, 1);
  a["measure_b"] = rat_to_json(meas_b_);
  a["measure_err"] = rat_vec_to_json(meas_err_, 1);
  a["err_total"] = rat_to_json(err_total_);
  a["sup_norm"] = rat_to_json(sup_norm_);
  j["audit"] = a;
  j["piece_count"] = piece_count().get_str();
  return j;
}

Construction load_bundle(const nlohmann::json& j) {
  if (j.at("kind") != "construction_bundle")
    throw std::invalid_argument("load_bundle: wrong kind");
  Construction c = build(BuildParams::from_json(j.at("params")));
  const auto& a = j.at("audit");
  bool ok = rat_vec_from_json(a.at("measure_g"), 1) == c.measure_g() &&
            rat_from_json(a.at("measure_b")) == c.measure_b() &&
            rat_from_json(a.at("err_total")) == c.measure_err_total() &&
            rat_from_json(a.at("sup_norm")) == c.sup_norm() &&
            j.at("m1").get<std::string>() == c.level1_teeth().get_str();
  if (!ok)
    throw std::invalid_argument("load_bundle: stored aggregates do not match rebuild");
  return c;
}

}  // namespace wcz
