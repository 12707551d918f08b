#include "wcz/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "wcz/jsonio.hpp"

namespace wcz {

Interval::Interval(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {
  if (!(a < b)) throw std::invalid_argument("Interval: requires a < b");
}

Interval Interval::doubled() const {
  Rat half = length() / 2;
  return Interval(a - half, b + half);
}

Real scalar_to_real(const Scalar& s, mpfr_prec_t prec) {
  if (std::holds_alternative<Rat>(s)) return Real(std::get<Rat>(s), prec);
  return std::get<Real>(s);
}

// ---------------------------------------------------------------------------
// PiecewiseConstant

PiecewiseConstant PiecewiseConstant::constant(const Rat& value) {
  PiecewiseConstant w;
  w.xs_ = {Rat(0), Rat(1)};
  w.vs_ = {value};
  w.ext_ = value;
  return w;
}

PiecewiseConstant PiecewiseConstant::from_breakpoints(std::vector<Rat> xs,
                                                      std::vector<Rat> vs, Rat exterior) {
  if (xs.size() < 2) throw std::invalid_argument("PiecewiseConstant: need >= 2 breakpoints");
  if (vs.size() + 1 != xs.size())
    throw std::invalid_argument("PiecewiseConstant: |values| must be |breakpoints|-1");
  for (size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1]))
      throw std::invalid_argument("PiecewiseConstant: breakpoints must strictly increase");
  PiecewiseConstant w;
  w.ext_ = std::move(exterior);
  w.xs_.push_back(std::move(xs[0]));
  for (size_t i = 0; i < vs.size(); ++i) {
    if (!w.vs_.empty() && w.vs_.back() == vs[i]) {
      w.xs_.back() = xs[i + 1];  // merge with previous piece
    } else {
      w.vs_.push_back(std::move(vs[i]));
      w.xs_.push_back(xs[i + 1]);
    }
  }
  return w;
}

bool PiecewiseConstant::strictly_positive() const {
  if (ext_ <= 0) return false;
  for (const auto& v : vs_)
    if (v <= 0) return false;
  return true;
}

Rat PiecewiseConstant::min_value() const {
  Rat m = ext_;
  for (const auto& v : vs_) m = rat_min(m, v);
  return m;
}

Rat PiecewiseConstant::max_value() const {
  Rat m = ext_;
  for (const auto& v : vs_) m = rat_max(m, v);
  return m;
}

Rat PiecewiseConstant::value_at(const Rat& x) const {
  if (xs_.empty() || x < xs_.front() || x >= xs_.back()) return ext_;
  size_t i = static_cast<size_t>(
      std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
  return vs_[i - 1];
}

namespace {

// Sum over the pieces of w overlapping Q of f(value) * overlap_length.
template <class Num, class F>
Num fold_pieces(const std::vector<Rat>& xs, const std::vector<Rat>& vs, const Rat& ext,
                const Interval& q, F f, Num zero) {
  Num acc = std::move(zero);
  if (xs.empty()) {
    acc += f(ext) * Num(q.length());
    return acc;
  }
  const Rat& lo = xs.front();
  const Rat& hi = xs.back();
  if (q.a < lo) acc += f(ext) * Num(rat_min(q.b, lo) - q.a);
  if (q.b > hi) acc += f(ext) * Num(q.b - rat_max(q.a, hi));
  Rat a = rat_max(q.a, lo), b = rat_min(q.b, hi);
  if (a >= b) return acc;
  size_t i = static_cast<size_t>(
      std::upper_bound(xs.begin(), xs.end(), a) - xs.begin());
  if (i == 0) i = 1;
  for (; i < xs.size() && xs[i - 1] < b; ++i) {
    Rat pa = rat_max(a, xs[i - 1]);
    Rat pb = rat_min(b, xs[i]);
    if (pa < pb) acc += f(vs[i - 1]) * Num(pb - pa);
  }
  return acc;
}

}  // namespace

Rat PiecewiseConstant::power_integral_int(const Interval& q, long gamma) const {
  auto f = [gamma](const Rat& v) { return rat_pow_int(v, gamma); };
  return fold_pieces<Rat>(xs_, vs_, ext_, q, f, Rat(0));
}

Real PiecewiseConstant::power_integral(const Interval& q, const Rat& gamma,
                                       mpfr_prec_t prec) const {
  if (!prec) prec = Real::default_precision();
  if (rat_is_integer(gamma) && gamma.get_num().fits_slong_p())
    return Real(power_integral_int(q, gamma.get_num().get_si()), prec);
  if (!strictly_positive())
    throw std::invalid_argument("power_integral: weight must be positive for real gamma");
  auto f = [&gamma, prec](const Rat& v) { return Real::pow(v, gamma, prec); };
  return fold_pieces<Real>(xs_, vs_, ext_, q, f, Real(Rat(0), prec));
}

PiecewiseConstant PiecewiseConstant::scaled(const Rat& c) const {
  PiecewiseConstant w;
  w.xs_ = xs_;
  w.ext_ = ext_ * c;
  w.vs_.reserve(vs_.size());
  for (const auto& v : vs_) w.vs_.push_back(v * c);
  return w;
}

PiecewiseConstant PiecewiseConstant::reflected(const Rat& center) const {
  std::vector<Rat> xs, vs;
  for (auto it = xs_.rbegin(); it != xs_.rend(); ++it) xs.push_back(2 * center - *it);
  vs.assign(vs_.rbegin(), vs_.rend());
  return from_breakpoints(std::move(xs), std::move(vs), ext_);
}

nlohmann::json PiecewiseConstant::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "piecewise_constant";
  j["breakpoints"] = rat_vec_to_json(xs_);
  j["values"] = rat_vec_to_json(vs_);
  j["exterior"] = rat_to_json(ext_);
  return j;
}

PiecewiseConstant PiecewiseConstant::from_json(const nlohmann::json& j) {
  if (j.at("kind") != "piecewise_constant")
    throw std::invalid_argument("PiecewiseConstant::from_json: wrong kind");
  return from_breakpoints(rat_vec_from_json(j.at("breakpoints")),
                          rat_vec_from_json(j.at("values")), rat_from_json(j.at("exterior")));
}

// ---------------------------------------------------------------------------
// PiecewiseLinear

PiecewiseLinear PiecewiseLinear::from_nodes(std::vector<Rat> xs, std::vector<Rat> ys,
                                            Rat exterior) {
  if (xs.size() < 2) throw std::invalid_argument("PiecewiseLinear: need >= 2 nodes");
  if (xs.size() != ys.size())
    throw std::invalid_argument("PiecewiseLinear: node count mismatch");
  for (size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1]))
      throw std::invalid_argument("PiecewiseLinear: breakpoints must strictly increase");
  PiecewiseLinear u;
  u.ext_ = std::move(exterior);
  u.xs_.push_back(xs[0]);
  u.ys_.push_back(ys[0]);
  for (size_t i = 1; i + 1 < xs.size(); ++i) {
    // drop node i when collinear with its neighbours
    Rat lhs = (ys[i] - u.ys_.back()) * (xs[i + 1] - xs[i]);
    Rat rhs = (ys[i + 1] - ys[i]) * (xs[i] - u.xs_.back());
    if (lhs == rhs) continue;
    u.xs_.push_back(xs[i]);
    u.ys_.push_back(ys[i]);
  }
  u.xs_.push_back(xs.back());
  u.ys_.push_back(ys.back());
  return u;
}

Rat PiecewiseLinear::value_at(const Rat& x) const {
  if (xs_.empty() || x < xs_.front() || x > xs_.back()) return ext_;
  size_t i = static_cast<size_t>(
      std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
  if (i == xs_.size()) return ys_.back();
  if (i == 0) return ys_.front();
  const Rat& x0 = xs_[i - 1];
  const Rat& x1 = xs_[i];
  return ys_[i - 1] + (ys_[i] - ys_[i - 1]) * (x - x0) / (x1 - x0);
}

bool PiecewiseLinear::extends_continuously() const {
  return ys_.front() == ext_ && ys_.back() == ext_;
}

PiecewiseConstant PiecewiseLinear::derivative() const {
  std::vector<Rat> vs;
  vs.reserve(xs_.size() - 1);
  for (size_t i = 0; i + 1 < xs_.size(); ++i)
    vs.push_back((ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]));
  return PiecewiseConstant::from_breakpoints(xs_, std::move(vs), Rat(0));
}

Rat PiecewiseLinear::sup_norm() const {
  Rat m = rat_abs(ext_);
  for (const auto& y : ys_) m = rat_max(m, rat_abs(y));
  return m;
}

nlohmann::json PiecewiseLinear::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "piecewise_linear";
  j["breakpoints"] = rat_vec_to_json(xs_);
  j["node_values"] = rat_vec_to_json(ys_);
  j["exterior"] = rat_to_json(ext_);
  return j;
}

PiecewiseLinear PiecewiseLinear::from_json(const nlohmann::json& j) {
  if (j.at("kind") != "piecewise_linear")
    throw std::invalid_argument("PiecewiseLinear::from_json: wrong kind");
  return from_nodes(rat_vec_from_json(j.at("breakpoints")),
                    rat_vec_from_json(j.at("node_values")), rat_from_json(j.at("exterior")));
}

// ---------------------------------------------------------------------------
// Spec-named fronts

Scalar pc_power_integral(const PiecewiseConstant& w, const Interval& q, const Rat& gamma,
                         mpfr_prec_t prec) {
  if (rat_is_integer(gamma) && gamma.get_num().fits_slong_p())
    return w.power_integral_int(q, gamma.get_num().get_si());
  return w.power_integral(q, gamma, prec);
}

PiecewiseConstant pl_derivative(const PiecewiseLinear& u) { return u.derivative(); }

Rat pl_sup_norm(const PiecewiseLinear& u) { return u.sup_norm(); }

// ---------------------------------------------------------------------------
// PrefixTable

template <class Num>
PrefixTable<Num>::PrefixTable(const PiecewiseConstant& w, const Rat& gamma, mpfr_prec_t prec)
    : w_(&w), gamma_(gamma), prec_(prec ? prec : Real::default_precision()) {
  const auto& xs = w.breakpoints();
  const auto& vs = w.values();
  auto value_pow = [this](const Rat& v) {
    if constexpr (std::is_same_v<Num, Rat>) {
      if (!rat_is_integer(gamma_) || !gamma_.get_num().fits_slong_p())
        throw std::invalid_argument("PrefixTable<Rat>: gamma must be an integer");
      return rat_pow_int(v, gamma_.get_num().get_si());
    } else {
      if (rat_is_integer(gamma_) && gamma_.get_num().fits_slong_p())
        return Real(rat_pow_int(v, gamma_.get_num().get_si()), prec_);
      if (v <= 0)
        throw std::invalid_argument("PrefixTable<Real>: values must be positive");
      return Real::pow(v, gamma_, prec_);
    }
  };
  pow_.reserve(vs.size());
  for (const auto& v : vs) pow_.push_back(value_pow(v));
  ext_pow_ = value_pow(w.exterior());
  s_.reserve(xs.size());
  Num acc = Num(Rat(0)) * ext_pow_;  // zero of the right precision
  if constexpr (std::is_same_v<Num, Rat>) acc = Rat(0);
  s_.push_back(acc);
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    acc += pow_[i] * Num(xs[i + 1] - xs[i]);
    s_.push_back(acc);
  }
}

template <class Num>
Num PrefixTable<Num>::prefix(const Rat& x) const {
  const auto& xs = w_->breakpoints();
  if (x <= xs.front()) return s_.front();
  if (x >= xs.back()) return s_.back();
  size_t i = static_cast<size_t>(
      std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
  return s_[i - 1] + pow_[i - 1] * Num(x - xs[i - 1]);
}

template <class Num>
Num PrefixTable<Num>::integral(const Interval& q) const {
  const auto& xs = w_->breakpoints();
  Num acc = prefix(q.b) - prefix(q.a);
  // exterior extension on either side of the window
  if (q.a < xs.front()) acc += ext_pow_ * Num(rat_min(q.b, xs.front()) - q.a);
  if (q.b > xs.back()) acc += ext_pow_ * Num(q.b - rat_max(q.a, xs.back()));
  return acc;
}

template class PrefixTable<Rat>;
template class PrefixTable<Real>;

PrefixTableRat prefix_tables_exact(const PiecewiseConstant& w, long gamma) {
  return PrefixTableRat(w, Rat(gamma));
}

PrefixTableReal prefix_tables(const PiecewiseConstant& w, const Rat& gamma,
                              mpfr_prec_t prec) {
  return PrefixTableReal(w, gamma, prec);
}

}  // namespace wcz
