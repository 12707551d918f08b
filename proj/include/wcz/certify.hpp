#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wcz/construct1d.hpp"

namespace wcz {

enum class RatioStatus { ok, undefined };

struct LedgerRow {
  std::string label;
  Rat measure;
  Real lhs;    // contribution to int w^s |u'|^p
  Real rhs_f;  // contribution to int w^s |F|^p
};

struct CertificateReport {
  int n = 0;
  Rat p, s;
  Real lhs, rhs_f, rhs_u, ratio;
  RatioStatus status = RatioStatus::ok;
  Real lhs_closed;   // beta b^p + sum mu_k^eff 2^{k(p-s)} with audited measures
  Real lhs_err;      // quarantined error-set contribution inside lhs
  Real rhs_f_err;    // error-set contribution inside rhs_f
  Rat sup_norm;      // exact ||u||_inf used in rhs_u
  std::vector<LedgerRow> ledger;
  Rat gamma_target = Rat(0);
  bool pass = false;
  mpfr_prec_t precision = 0;
};

// Forcing field F = u' + w^{-1} per piece (F = 1 outside [0,1]) for an
// explicit view; the shared-structure path carries F per label instead.
PiecewiseConstant make_forcing(const Materialized& m);

struct PdeReport {
  bool per_piece_ok = false;    // w u' - w F == -1 on every label class/piece
  long classes_checked = 0;
  int hat_tests = 0;
  bool hats_zero = false;       // every weak-form hat integral exactly zero
  Rat worst_residual = Rat(0);  // max |integral| over the hat tests
};

PdeReport pde_residual(const Construction& c, int test_count, unsigned long seed);
PdeReport pde_residual_explicit(const PiecewiseLinear& u, const PiecewiseConstant& w,
                                const PiecewiseConstant& forcing, int test_count,
                                unsigned long seed);

// int w^s |u'|^p over (0,1) against int w^s|F|^p + ||u||_inf^p int w^s.
// Rejects p < 2 or s < 1.
CertificateReport blowup_ratio(const Construction& c, const Rat& p, const Rat& s,
                               const Rat& gamma_target = Rat(0), mpfr_prec_t prec = 0);

// Closed-form certificate in the eps -> 0 limit (exact table measures,
// no error set, no rhs_u term unless supplied).
CertificateReport blowup_closed_form(const SequenceTable& t, const Rat& p, const Rat& s,
                                     mpfr_prec_t prec = 0);

struct SweepRow {
  int n = 0;
  Rat p, s;
  Real lhs, rhs_f, rhs_u, ratio;
  RatioStatus status = RatioStatus::ok;
  bool exceeded = false;  // ratio > gamma
};

struct SweepResult {
  std::vector<SweepRow> rows;          // one per N at (p, s)
  std::vector<SweepRow> control_rows;  // same constructions at (2, 1)
  std::optional<int> first_n;          // smallest N with ratio > gamma
  Rat p, s, gamma;
  int n_max = 0;
};

// Sweeps blowup_ratio over N = 1..n_max with delta/p_hint from `like`
// (epsilon re-derived per N); stops bookkeeping at the first success but
// still emits every row.
SweepResult find_n(const Rat& p, const Rat& s, const Rat& gamma, int n_max,
                   const BuildParams& like = BuildParams{}, mpfr_prec_t prec = 0);

}  // namespace wcz
