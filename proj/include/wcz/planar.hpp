#pragma once

#include <functional>
#include <optional>

#include "wcz/construct1d.hpp"
#include "wcz/geometry.hpp"

namespace wcz {

// Tensor extension of a 1D profile to the plane: W(x,y) = w(x),
// U(x,y) = u(x), F2(x,y) = (F(x), 0). Either an explicit profile or a
// constructed one backs it.
class PlanarExtension {
 public:
  explicit PlanarExtension(const PiecewiseConstant& w);
  PlanarExtension(const PiecewiseConstant& w, const PiecewiseConstant& forcing,
                  const PiecewiseLinear& u);
  explicit PlanarExtension(const Construction& c);

  // int over [a,b] of w, w^gamma, and of g = w u' - w F (when a profile
  // with u and F is attached).
  Rat int_w(const Interval& q) const;
  Real int_w_pow(const Interval& q, const Rat& gamma, mpfr_prec_t prec = 0) const;
  std::optional<Rat> int_pde(const Interval& q) const;

 private:
  std::function<Rat(const Interval&)> int_w_;
  std::function<Real(const Interval&, const Rat&, mpfr_prec_t)> int_w_pow_;
  std::function<Rat(const Interval&)> int_pde_;
  bool has_pde_ = false;
};

struct Square {
  Rat x, y, side;
};

struct Ar2Report {
  Rat r;
  Real sup_sampled;
  Square argmax;
  long squares = 0;
  mpfr_prec_t precision = 0;
};

// A_r product sampled over axis-parallel squares with corners on a
// grid x grid lattice of [-1,2]^2 plus dyadic side lengths. For tensor
// weights every square average reduces to the 1D interval average over
// the x-extent; rejects r <= 1, requires grid >= 8.
Ar2Report ar2_sampled(const PlanarExtension& ext, const Rat& r, int grid,
                      mpfr_prec_t prec = 0);

struct WeakFormReport {
  int tests = 0;
  bool all_zero = false;
  Rat worst_residual = Rat(0);
};

// int_{[0,1]^2} W grad U . grad phi - W F2 . grad phi for tensor-product
// hat test functions phi(x,y) = phi1(x) phi2(y) compactly supported in the
// open square; exact quadrature. Includes y-only test functions.
WeakFormReport weak_form_residual(const PlanarExtension& ext, int tests,
                                  unsigned long seed);

}  // namespace wcz
