#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mope/errors.hpp"

namespace mope {

enum class FamilyId { Hermite, LaguerreII, Charlier, Krawtchouk };

std::string family_name(FamilyId id);
FamilyId family_from_name(const std::string& name);

// A multi-index: m non-negative integers.
using MultiIndex = std::vector<int>;
int multi_index_sum(const MultiIndex& k);

// Parameters of one family of multiple orthogonal polynomials together with
// the scaling parameter n entering the varying-measure normalization.
//
// Hermite     source values a_1..a_m (distinct reals)
// LaguerreII  alpha >= 0 and rates sigma_1..sigma_m > 0 (distinct); alpha_hat,
//             when set, makes alpha = alpha_hat * n_scale
// Charlier    lambda > 0 and gamma_1..gamma_m in (0,1] (distinct); either an
//             integer time t (unscaled) or tau > 0 with t = n*tau (scaled)
// Krawtchouk  success probabilities p_1..p_m in (0,1) (distinct); either an
//             integer time t (unscaled) or tau > 0 with t = floor(n*tau)
struct FamilySpec {
  FamilyId family = FamilyId::Hermite;
  int m = 1;
  int n_scale = 1;

  std::vector<double> a;      // Hermite source values
  double alpha = 0.0;         // LaguerreII
  std::optional<double> alpha_hat;
  std::vector<double> sigma;  // LaguerreII
  double lambda = 1.0;        // Charlier
  std::vector<double> gamma;  // Charlier
  std::vector<double> p;      // Krawtchouk
  bool scaled = true;         // Charlier/Krawtchouk regime flag
  long long t = 0;            // unscaled time
  double tau = 0.0;           // scaled time

  void validate() const;  // throws ParameterDomainError

  // Effective LaguerreII alpha (alpha_hat * n when alpha_hat is set).
  double effective_alpha() const;
  // Effective integer time for the discrete families.
  long long effective_t() const;

  std::string to_json() const;
  static FamilySpec from_json(const std::string& text);
};

struct NnCoeffs {
  std::vector<double> a;  // one per weight, lowering coefficients
  std::vector<double> b;  // one per weight, diagonal coefficients
};

// Nearest-neighbor recurrence coefficients a_{k,j}, b_{k,j} at multi-index k,
// in the scaling used to build the recurrence matrix. For Charlier/Krawtchouk
// the `scaled` flag of the spec picks the raw or the 1/n-rescaled form.
NnCoeffs nn_coeffs(const FamilySpec& spec, const MultiIndex& k);

struct RationalSymbol;  // recurrence.hpp

// Limits of the recurrence coefficients along direction nu (nu_j >= 0,
// sum nu_j = 1). Returns the rational symbol with poles b_j(nu) and residues
// a_j(nu). Throws ConfluenceError when two limiting poles coincide.
RationalSymbol nevai_limits(const FamilySpec& spec, const std::vector<double>& nu);

// Weight w_j evaluated at x (1-based weight index j).
double weight_eval(const FamilySpec& spec, int j, double x);

struct DiscreteMeasure {
  std::vector<double> support;  // strictly increasing
  std::vector<double> masses;   // positive
};

struct ContinuousDensity {
  double lo = 0.0, hi = 0.0;  // support interval (hi may be +inf)
  std::string description;
};

struct BaseMeasure {
  std::optional<DiscreteMeasure> discrete;
  std::optional<ContinuousDensity> continuous;
};

// Reference measure mu. Discrete families return point masses (Charlier is
// truncated where the Poisson tail drops below 1e-16 of the retained mass);
// continuous families return a density descriptor for diagnostics only.
BaseMeasure base_measure(const FamilySpec& spec);

// Conversion between the jump-rate parameters gamma_j and the Krawtchouk
// success probabilities: gamma * rho = p_j/(1-p_j) with rho the walk odds.
double krawtchouk_gamma_to_p(double gamma, double rho);
double krawtchouk_p_to_gamma(double p, double rho);

}  // namespace mope
