#pragma once

#include <complex>
#include <string>
#include <vector>

#include "mope/banded.hpp"
#include "mope/families.hpp"
#include "mope/lattice_path.hpp"
#include "mope/rational.hpp"
#include "mope/symbol.hpp"

namespace mope {

// The limiting symbol c(z) = z + sum_j a_j / (z - b_j) with distinct real
// poles b_j and real residues a_j.
struct RationalSymbol {
  std::vector<double> poles;
  std::vector<double> residues;

  int m() const { return static_cast<int>(poles.size()); }
  void validate() const;
  std::complex<double> operator()(std::complex<double> z) const;
  double max_abs_pole() const;
  double sum_abs_residue() const;
  std::string to_json() const;
};

// Path-indexed recurrence matrix: row n carries the expansion of
// x p_{k_n} over p_{k_0}..p_{k_{n+1}} (superdiagonal 1, diagonal b_{k_n,j_n},
// first subdiagonal sum_l a_{k_n,l}, deeper entries the telescoped products
// of consecutive-index b-differences).
HessenbergMatrix build_J(const FamilySpec& spec, const LatticePath& path, int rows);

// Same matrix capped at the dimension of the underlying function space for
// finite-support families (the closing row drops the superdiagonal).
HessenbergMatrix build_J_finite(const FamilySpec& spec, const LatticePath& path);

// Matrix of the Toeplitz operator with symbol c in the path-indexed basis
// pi_{k_n}(z) = prod_j (z - b_j)^{k_{n,j}}.
HessenbergMatrix build_Tc(const RationalSymbol& c, const LatticePath& path, int rows);

// Matrix of the Toeplitz operator with composed symbol f(c(z)) in the same
// basis. Evaluated by extending the basis below degree zero (where the
// elements are proper rationals annihilated by the polynomial-part
// projection), applying f to the extended shift matrix of c and reading off
// the non-negative block.
HessenbergMatrix composed_toeplitz_block(const Polynomial& f, const RationalSymbol& c,
                                         const LatticePath& path, int rows);

// (T)_{jk} = r_{k-j} from a Laurent window. Throws when the window does not
// cover offsets -(size-1)..band of the requested size.
HessenbergMatrix toeplitz_matrix(const LaurentWindow& w, int size);

// Change of basis: S_{j,k} = coefficient of z^k in pi_{k_j}(z); unit lower
// triangular. inverse_S solves S X = I by forward substitution.
HessenbergMatrix basis_change_S(const std::vector<double>& poles, const LatticePath& path,
                                int size);
HessenbergMatrix inverse_S(const HessenbergMatrix& s);

// Exact-rational conjugation S T S^{-1} of the Toeplitz matrix of f(c): the
// inputs are converted exactly (every double is dyadic) and the result is
// rounded once at the end. Reference route for validating the direct
// constructions; cost grows quickly with size.
HessenbergMatrix conjugated_toeplitz_exact(const Polynomial& f, const RationalSymbol& c,
                                           const LatticePath& path, int size);

// max_{|s|,|r|<=w} |J_{n+s,n+r} - T_{n+s,n+r}|.
double right_limit_gap(const HessenbergMatrix& j, const HessenbergMatrix& t, int n, int w);

// CSV dump of rows [i0,i1) x cols [j0,j1), header i,j,value.
std::string matrix_window_csv(const HessenbergMatrix& m, int i0, int i1, int j0, int j1);

}  // namespace mope
