#pragma once

#include <vector>

#include "mope/cumulants.hpp"
#include "mope/families.hpp"
#include "mope/rational.hpp"
#include "mope/symbol.hpp"

namespace mope {

// Polynomial with exact rational coefficients, ascending.
struct RatPoly {
  std::vector<Rational> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  Rational operator()(const Rational& x) const;
  std::vector<double> to_doubles() const;
};

struct RationalMeasure {
  std::vector<Rational> support;  // strictly increasing
  std::vector<Rational> masses;   // positive
};

// Exact w_j * mu masses for the discrete families in their unscaled regime.
// Charlier is truncated where the Poisson tail falls below 1e-16 of the
// retained mass; the truncation point is reported via x_max.
struct FamilyMeasures {
  std::vector<RationalMeasure> weights;
  long long x_max = 0;
};
FamilyMeasures family_measures(const FamilySpec& spec);

// Exact moment tables for all four families: discrete ones by summation over
// the measures, Hermite/LaguerreII from the closed-form moment recurrences of
// their (normalized) weights.
class FamilyMoments {
 public:
  explicit FamilyMoments(const FamilySpec& spec);
  Rational moment(int weight_j, int power) const;  // weight_j is 1-based
  int m() const { return static_cast<int>(tables_.size()); }

 private:
  enum class Mode { Summation, Poisson, Gauss, Gamma };
  Mode mode_ = Mode::Summation;
  mutable std::vector<std::vector<Rational>> tables_;
  std::vector<RationalMeasure> measures_;  // Krawtchouk
  std::vector<Rational> rates_;            // Poisson: gamma_j*lambda*t; Gamma: n*sigma_j
  std::vector<Rational> gauss_mean_;       // Hermite
  Rational variance_ = 0;                  // Hermite: 1/n
  Rational alpha_ = 0;                     // LaguerreII
  void extend(int weight_j, int power) const;
};

// Monic multiple orthogonal polynomial of multi-index k from exact moments.
// Throws NonNormalIndexError when the orthogonality system is singular.
RatPoly mop_from_moments_exact(const FamilyMoments& moments, const MultiIndex& k);

// Double-precision route over explicit discrete measures with a residual
// certificate (residuals <= 1e-10 * moment scale).
Polynomial mop_from_moments(const std::vector<DiscreteMeasure>& measures, const MultiIndex& k);

// Solve x p_k = p_{k+e_l} + b p_k + sum_j a_j p_{k-e_j} for (b, a) from the
// computed polynomials and compare against the family formulas.
struct NnVerification {
  double b = 0.0;
  std::vector<double> a;
  bool consistent = false;  // the expansion is exactly solvable
  double max_gap = 0.0;     // worst |solved - formula|
};
NnVerification verify_nn_recurrence(const FamilySpec& spec, const MultiIndex& k, int l);

// Exact residual of p_{k+e_r} - p_{k+e_s} - (b_{k,s} - b_{k,r}) p_k.
double consistency_gap(const FamilySpec& spec, const MultiIndex& k, int r, int s);

// A tiny ensemble: m weight measures (w_j * mu combined), multiplicities n_j.
struct EnsembleSpec {
  std::vector<int> multiplicities;
  std::vector<RationalMeasure> weights;
  long long x_max = 0;  // Charlier truncation marker, 0 when exact

  int m() const { return static_cast<int>(weights.size()); }
  int particles() const;
};
EnsembleSpec ensemble_from_family(const FamilySpec& spec, const std::vector<int>& multiplicities);

// Every n-point configuration with its exact probability.
struct ExactDistribution {
  std::vector<Rational> support;
  std::vector<std::vector<int>> configs;  // indices into support
  std::vector<Rational> probs;
};
ExactDistribution enumerate_mope(const EnsembleSpec& spec);

// Moments of X = sum f(x_i) by exact summation, then the standard
// moment-to-cumulant triangle C_m = M_m - sum_i binom(m-1,i-1) C_i M_{m-i}.
CumulantReport exact_cumulants(const EnsembleSpec& spec, const Polynomial& f, int m_max);

double exact_mean(const EnsembleSpec& spec, const Polynomial& f);

// E[exp_r(lambda X)] with the truncated scalar exponential, exact until the
// final rounding.
double exact_mgf(const EnsembleSpec& spec, const Polynomial& f, double lambda, int r);

// E[prod_i exp_r(lambda f(x_i))]: the product form the determinant identity
// reproduces exactly; differs from exact_mgf at order lambda^{r+1}.
double exact_mgf_product(const EnsembleSpec& spec, const Polynomial& f, double lambda, int r);

}  // namespace mope
