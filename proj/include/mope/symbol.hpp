#pragma once

#include <span>
#include <string>
#include <vector>

#include "mope/errors.hpp"
#include "mope/rational.hpp"

namespace mope {

// Real polynomial, ascending coefficients. Trailing zeros are trimmed so the
// leading coefficient of a nonzero polynomial never vanishes.
struct Polynomial {
  std::vector<double> coeffs;

  Polynomial() = default;
  explicit Polynomial(std::vector<double> c);
  int degree() const;  // -1 for the zero polynomial
  double operator()(double x) const;
  std::string to_string() const;
};

struct RationalSymbol;  // recurrence.hpp

// Finite window of Laurent coefficients of a composed symbol f(c(z)),
// covering exponents [lmin, lmax] with lmax = deg f.
struct LaurentWindow {
  int lmin = 0;
  int lmax = 0;
  std::vector<double> coeffs;  // coeffs[l - lmin]
  double radius = 0.0;         // extraction circle |z| = radius
  bool alias_certified = false;
  bool tail_certified = false;  // |r_{-L}| <= 1e-14 * max |r_l|
  bool growth_regime = false;   // a pole with |b| >= 1: coefficients cannot decay

  double coeff(int l) const;
  double max_abs() const;
};

// Laurent coefficients of f(c(z)) on |z| = R via an N-point trapezoid rule,
// N doubled until two successive grids agree to 1e-12 relative. The window
// spans [-L, deg f]. For poles inside the unit disk the window is widened
// until the tail certificate holds; symbols with |b_j| >= 1 have structurally
// non-decaying negative coefficients and are flagged growth_regime instead.
LaurentWindow compose_laurent(const Polynomial& f, const RationalSymbol& c, int L);

// Default depth used when callers have no structural requirement.
int default_laurent_depth(const Polynomial& f);

// Independent algebraic route: expand each a_j/(z-b_j) as a geometric series
// in 1/z and compose polynomially. Exact up to the requested depth.
std::vector<double> laurent_series_compose(const Polynomial& f, const RationalSymbol& c, int L);

// Same expansion in exact rational arithmetic (inputs converted exactly).
std::vector<Rational> laurent_series_compose_exact(const Polynomial& f, const RationalSymbol& c,
                                                   int L);

// sum_{l>=1} l f_l f_{-l}.
double limiting_variance(const LaurentWindow& w);

// sum_{j>=1} min(j, n) r_j r_{-j}.
double finite_n_variance(const LaurentWindow& w, int n);

}  // namespace mope
