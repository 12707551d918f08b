#pragma once

#include <string>
#include <vector>

#include "wcz/geometry.hpp"
#include "wcz/sequences.hpp"
#include "wcz/whitney.hpp"

#include "json.hpp"

namespace wcz {

struct BuildParams {
  int n = 1;
  Rat delta = pow2(-10);   // L-infinity budget
  Rat epsilon = Rat(0);    // truncation budget; 0 = derive 2^{-(n+2) p_hint}
  Rat p_hint = Rat(3);     // only sizes epsilon via the 2^{(N+1)p} eps <= 1 rule

  // Throws std::invalid_argument on bad values or when the exact guard
  // 2^{(n+1) p_hint} * epsilon <= 1 fails.
  void validate() const;
  Rat resolved_epsilon() const;

  nlohmann::json to_json() const;
  static BuildParams from_json(const nlohmann::json& j);
};

enum class LabelKind { G, B, Error, Exterior };

struct Label {
  LabelKind kind = LabelKind::Exterior;
  int level = 0;  // k for G_k and error@k
  std::string str() const;
};

// One congruence class of Whitney cubes inside the canonical unit
// component of a level: layer j, relative length 2^{-j-8}, teeth count.
struct CubeClass {
  int layer = 0;
  Rat len;
  Int teeth;
};

// Step k refines Omega_{H^k} (k = 1..N-1). All components of Omega_{H^k}
// are congruent up to scale, so one canonical unit plan serves them all.
struct LevelPlan {
  int k = 0;
  int depth = 0;             // D_k
  Int comp_count;            // number of components of Omega_{H^k}
  Rat comp_len_max;          // largest component length
  Rat measure_in;            // |Omega_{H^k}|, exact
  Rat f1, f2;                // alpha_{k+1}/alpha_k, mu_k/alpha_k
  std::vector<CubeClass> classes;  // j = 1..depth
  Rat step_dev;              // exact bound on ||u_{k+1} - u_k||_inf
};

struct MaterializedPiece {
  Rat x0, x1;
  Label label;
  Rat w;
  Rat slope;
};

// Explicit view of a construction, only available when the exact piece
// count fits the requested budget.
struct Materialized {
  PiecewiseLinear u;
  PiecewiseConstant w;
  PiecewiseConstant forcing;  // F = u' + 1/w per piece, 1 outside [0,1]
  std::vector<MaterializedPiece> pieces;
  std::vector<WhitneyForest> forests;  // actual Whitney family per step
};

// The sawtooth/Whitney construction in exact shared form: per-level
// canonical patterns plus the level-1 tooth count. Every instance of a
// level is congruent, so measures, norms and integrals follow from
// per-level recursions, and prefix values at arbitrary rational points
// from descent through the structure.
class Construction {
 public:
  const BuildParams& params() const { return params_; }
  const SequenceTable& table() const { return table_; }
  int n() const { return table_.n; }
  const Int& level1_teeth() const { return m1_; }
  const Rat& level1_h_len() const { return lambda1_; }
  const std::vector<LevelPlan>& levels() const { return levels_; }

  const std::vector<Rat>& measure_g() const { return meas_g_; }  // 1-based
  const Rat& measure_b() const { return meas_b_; }
  const std::vector<Rat>& measure_err() const { return meas_err_; }  // 1-based
  const Rat& measure_err_total() const { return err_total_; }
  const Rat& sup_norm() const { return sup_norm_; }

  Int piece_count() const;
  bool materializable(const Int& budget) const { return piece_count() <= budget; }
  Materialized materialize(const Int& budget) const;

  // Versioned bundle: params + table + plan + audited aggregates.
  nlohmann::json to_json() const;

  friend Construction build(const BuildParams& params);
  template <class Num>
  friend class FunctionalScan;

 private:
  BuildParams params_;
  SequenceTable table_;
  Int m1_;
  Rat lambda1_;  // alpha_1 / m1
  std::vector<LevelPlan> levels_;
  std::vector<Rat> meas_g_;
  Rat meas_b_;
  std::vector<Rat> meas_err_;
  Rat err_total_;
  Rat sup_norm_;
};

Construction build(const BuildParams& params);

// Rebuilds from the bundle's params and verifies the stored aggregates
// match; throws std::invalid_argument on mismatch.
Construction load_bundle(const nlohmann::json& j);

// Per-label integrand densities for linear functionals int phi(w,u',F,label).
template <class Num>
struct LeafDensity {
  std::vector<Num> g;    // on Omega_{G_k}, 1-based, size n+1
  std::vector<Num> err;  // on error@k, 1-based, size n+1 (1..n-1 used)
  Num b;                 // on Omega_{B_N}
  Num ext;               // outside [0,1]
};

// Builds the density table from a pointwise map of (w, slope, F) per label.
template <class Num, class F>
LeafDensity<Num> make_density(const Construction& c, F f) {
  const SequenceTable& t = c.table();
  LeafDensity<Num> d;
  d.g.assign(static_cast<size_t>(t.n) + 1, Num(Rat(0)));
  d.err.assign(static_cast<size_t>(t.n) + 1, Num(Rat(0)));
  for (int k = 1; k <= t.n; ++k)
    d.g[static_cast<size_t>(k)] = f(t.w_level[k], t.g_slope[k], Rat(0));
  for (int k = 1; k < t.n; ++k)
    d.err[static_cast<size_t>(k)] = f(t.w_level[k], t.h[k], t.h[k] + pow2(k));
  d.b = f(Rat(1), t.b, t.b + 1);
  d.ext = f(Rat(1), Rat(0), Rat(1));
  return d;
}

// Exact prefix/integral evaluator for one leaf functional over one
// construction. prefix01 descends the shared structure, so it is exact at
// arbitrary rational points regardless of the virtual piece count.
template <class Num>
class FunctionalScan {
 public:
  FunctionalScan(const Construction& c, LeafDensity<Num> leaf);

  Num total() const { return total_; }
  // int_0^{clamp(x,[0,1])} phi
  Num prefix01(const Rat& x) const;
  // integral over q including the exterior extension
  Num integral(const Interval& q) const;

 private:
  Num from_rat(const Rat& q) const;
  Num descend(int k, const Rat& xi) const;

  const Construction* c_;
  LeafDensity<Num> leaf_;
  std::vector<Num> unit_;       // per-unit-length integral over H^k pattern
  std::vector<Num> cube_unit_;  // per-unit-length integral over a step-k cube
  std::vector<std::vector<Num>> cum_;  // cumulative segment totals per level
  Num tooth_total_;
  Num total_;
};

extern template class FunctionalScan<Rat>;
extern template class FunctionalScan<Real>;

struct AuditRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct DiagnosticsReport {
  std::vector<AuditRow> rows;
  bool all_pass() const;
};

DiagnosticsReport audit(const Construction& c);

// Piecewise-affine sawtooth replacement on W: m teeth, each a slope-s1
// stretch of fraction f1 followed by a slope-s2 stretch of fraction f2,
// agreeing at the tooth ends with the affine parent (anchored at
// left_value on W.a). Requires f1 + f2 = 1 and f1 s1 + f2 s2 = parent.
struct SawtoothFragment {
  PiecewiseLinear u;
  std::vector<std::pair<Interval, int>> parts;  // 0 = s1 part, 1 = s2 part
};

SawtoothFragment sawtooth_replace(const Interval& w, const Rat& parent, const Rat& s1,
                                  const Rat& f1, const Rat& s2, const Rat& f2,
                                  const Int& m, const Rat& left_value = Rat(0));

}  // namespace wcz
