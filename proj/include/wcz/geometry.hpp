#pragma once

#include <variant>
#include <vector>

#include "wcz/rational.hpp"
#include "wcz/real.hpp"

#include "json.hpp"

namespace wcz {

// Open interval (a, b) with rational endpoints, a < b strictly.
struct Interval {
  Rat a, b;
  Interval(Rat a_, Rat b_);
  Rat length() const { return b - a; }
  bool contains(const Rat& x) const { return x > a && x < b; }
  bool intersects_open(const Interval& o) const { return a < o.b && o.a < b; }
  Interval doubled() const;  // concentric interval of twice the length
};

// Exact scalar: rational when the computation stays rational, otherwise a
// precision-tagged high-precision value.
using Scalar = std::variant<Rat, Real>;

Real scalar_to_real(const Scalar& s, mpfr_prec_t prec = 0);

// Step function with rational breakpoints, constant on each piece and
// constant (exterior value) outside the window [x_0, x_M]. Values may be
// signed; weight-specific operations validate positivity. Canonical form:
// adjacent pieces with equal values are merged.
class PiecewiseConstant {
 public:
  PiecewiseConstant() = default;
  static PiecewiseConstant constant(const Rat& value);
  static PiecewiseConstant from_breakpoints(std::vector<Rat> xs, std::vector<Rat> vs,
                                            Rat exterior);

  const std::vector<Rat>& breakpoints() const { return xs_; }
  const std::vector<Rat>& values() const { return vs_; }
  const Rat& exterior() const { return ext_; }
  size_t piece_count() const { return vs_.size(); }

  bool strictly_positive() const;
  Rat min_value() const;  // including the exterior
  Rat max_value() const;

  // Value at x; on a breakpoint the right piece wins (measure-zero choice).
  Rat value_at(const Rat& x) const;

  // Exact integral of w^gamma over Q for integer gamma (w must be nonzero
  // on Q when gamma < 0).
  Rat power_integral_int(const Interval& q, long gamma) const;
  // High-precision integral of w^gamma over Q for rational gamma (w > 0).
  Real power_integral(const Interval& q, const Rat& gamma, mpfr_prec_t prec = 0) const;

  PiecewiseConstant scaled(const Rat& c) const;
  PiecewiseConstant reflected(const Rat& center) const;

  bool operator==(const PiecewiseConstant& o) const = default;

  nlohmann::json to_json() const;
  static PiecewiseConstant from_json(const nlohmann::json& j);

 private:
  std::vector<Rat> xs_;  // x_0 < ... < x_M
  std::vector<Rat> vs_;  // value on (x_{i-1}, x_i)
  Rat ext_ = Rat(0);
};

// Continuous piecewise-linear function given by nodes, constant outside
// the window. Canonical form: collinear interior nodes are merged.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  static PiecewiseLinear from_nodes(std::vector<Rat> xs, std::vector<Rat> ys, Rat exterior);

  const std::vector<Rat>& breakpoints() const { return xs_; }
  const std::vector<Rat>& node_values() const { return ys_; }
  const Rat& exterior() const { return ext_; }

  Rat value_at(const Rat& x) const;
  // True when the node values at the window ends equal the exterior value.
  bool extends_continuously() const;

  PiecewiseConstant derivative() const;  // exact slopes, exterior slope 0
  Rat sup_norm() const;                  // max(|node values|, |exterior|)

  bool operator==(const PiecewiseLinear& o) const = default;

  nlohmann::json to_json() const;
  static PiecewiseLinear from_json(const nlohmann::json& j);

 private:
  std::vector<Rat> xs_;
  std::vector<Rat> ys_;
  Rat ext_ = Rat(0);
};

// Spec-named operation fronts.
Scalar pc_power_integral(const PiecewiseConstant& w, const Interval& q, const Rat& gamma,
                         mpfr_prec_t prec = 0);
PiecewiseConstant pl_derivative(const PiecewiseLinear& u);
Rat pl_sup_norm(const PiecewiseLinear& u);

// Cumulative integrals S(x_i) = int_{x_0}^{x_i} w^gamma at every breakpoint;
// any interval integral (window or exterior parts included) in O(log M).
template <class Num>
class PrefixTable {
 public:
  PrefixTable(const PiecewiseConstant& w, const Rat& gamma, mpfr_prec_t prec = 0);

  const std::vector<Num>& table() const { return s_; }
  // int_{x_0}^{x} w^gamma for x inside the window (clamped to it).
  Num prefix(const Rat& x) const;
  // Integral over any interval, exterior extension included.
  Num integral(const Interval& q) const;

 private:
  Num piece_pow(size_t i) const;  // v_i^gamma
  const PiecewiseConstant* w_;
  Rat gamma_;
  mpfr_prec_t prec_;
  std::vector<Num> s_;       // size M+1
  std::vector<Num> pow_;     // v_i^gamma per piece
  Num ext_pow_;
};

using PrefixTableRat = PrefixTable<Rat>;
using PrefixTableReal = PrefixTable<Real>;

// Convenience front matching the spec name.
PrefixTableRat prefix_tables_exact(const PiecewiseConstant& w, long gamma);
PrefixTableReal prefix_tables(const PiecewiseConstant& w, const Rat& gamma,
                              mpfr_prec_t prec = 0);

}  // namespace wcz
