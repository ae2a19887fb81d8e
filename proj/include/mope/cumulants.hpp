#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mope/banded.hpp"
#include "mope/families.hpp"
#include "mope/lattice_path.hpp"
#include "mope/rational.hpp"
#include "mope/symbol.hpp"

namespace mope {

// One ordered composition l_1 + ... + l_j = m (l_i >= 1) with the exact
// prefactor m! (-1)^{j+1} / (j * l_1! ... l_j!).
struct Composition {
  std::vector<int> parts;
  Rational prefactor;
};

// All compositions of m, lexicographic by parts, prefactors exact.
const std::vector<Composition>& compositions_of(int m);

// sum_j (-1)^{j+1}/j sum_{l_1+...+l_j=m} 1/(l_1!...l_j!), exactly. Zero for
// every m >= 2.
Rational partition_identity_sum(int m);

// Alternating-trace cumulant of the n-th leading block:
// C_m^{(n)}(B) = m! sum_j (-1)^{j+1}/j sum_{compositions} Tr P_n B^{l_1} P_n
// ... B^{l_j} P_n / (l_1! ... l_j!).
double cumulant(const HessenbergMatrix& b, int n, int m);

// Same value plus the cancellation scale sum |prefactor * trace| over the
// compositions, the right yardstick for asserting that a cumulant vanishes.
struct ValueWithScale {
  double value = 0.0;
  double scale = 0.0;
};
ValueWithScale cumulant_with_scale(const HessenbergMatrix& b, int n, int m);

struct CumulantReport {
  int n = 0;
  std::string matrix_id;
  std::vector<double> f;
  std::map<int, double> values;  // order -> C_m
  std::map<std::string, std::string> metadata;

  std::string to_json() const;
};

// Cumulants of the linear statistic sum f(x_i): C_m = C_m^{(n)}(f(J)).
CumulantReport linear_statistic_cumulants(const FamilySpec& spec, const LatticePath& path,
                                          const Polynomial& f, int n, int m_max);

// det(P_n exp_r(lambda f(B)) P_n + Q_n): determinant of the n x n leading
// block of the truncated exponential.
double mgf_determinant(const HessenbergMatrix& b, const Polynomial& f, double lambda, int n,
                       int r);

// C_m^{(n)}(B1) - C_m^{(n)}(B2) for m >= 2, evaluated from the entries with
// |i-n|, |k-n| < 2 m^2 max(band) only.
double cumulant_difference_windowed(const HessenbergMatrix& b1, const HessenbergMatrix& b2, int n,
                                    int m);

// Nested-commutator trace Tr P_n [B_-^{(u_1)}, B_+^{(v_1)}, ...] P_n for the
// split pair, with its cancellation scale. Checks that [B_-, B_+] has only
// finitely many non-trivial columns inside the available window and throws
// HypothesisViolatedError otherwise. Traces vanish for total weight >= 3 and
// n beyond the commutator's column support plus bandwidth margins; for total
// weight 2 the trace equals minus the second cumulant.
struct BchTraceResult {
  double value = 0.0;
  double scale = 0.0;
  int commutator_columns = 0;  // detected column support of [B_-, B_+]
};
BchTraceResult bch_commutator_trace(const SplitPair& b, int n,
                                    const std::vector<std::pair<int, int>>& composition);

// All (u_1,v_1,...,u_j,v_j) with u_i + v_i >= 1 and total weight m.
std::vector<std::vector<std::pair<int, int>>> bch_compositions(int m);

}  // namespace mope
