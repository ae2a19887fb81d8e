#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mope/errors.hpp"

namespace mope {

// A one-sided banded real matrix: entries (i,j) vanish for j > i + band,
// everything at or below that superdiagonal may be dense. Rows are stored up
// to exact_rows; reading any entry in a row at or beyond exact_rows throws
// WindowExhaustedError instead of silently returning zero. Products and sums
// track the bandwidth additively and discount the exact window by the
// bandwidth debt of the left factor.
//
// A matrix may carry finite_dim = N, meaning it is an honest N x N matrix
// (all entries with row or column >= N are structurally zero). Finite
// matrices are closed under the algebra without window debt.
class HessenbergMatrix {
 public:
  HessenbergMatrix() = default;
  // band may be negative (strictly lower triangular parts).
  HessenbergMatrix(int rows, int band);

  static HessenbergMatrix identity(int rows);
  static HessenbergMatrix identity_like(const HessenbergMatrix& b, int rows);
  static HessenbergMatrix zero(int rows, int band);
  static HessenbergMatrix finite(int n, int band);
  static HessenbergMatrix finite_identity_of(int n);

  int rows() const { return rows_; }
  int band() const { return band_; }
  int exact_rows() const { return rows_; }
  std::optional<int> finite_dim() const { return finite_dim_; }

  // Number of stored columns in row i: [0, row_cols(i)).
  int row_cols(int i) const;

  // Checked read. Structural zeros (beyond the band or beyond finite_dim)
  // return 0; rows at or beyond exact_rows throw.
  double at(int i, int j) const;

  // Unchecked build access; (i,j) must lie inside the stored band.
  double& entry(int i, int j);
  double entry(int i, int j) const;

  // Dense copy of rows [r0, r1) x cols [c0, c1); rows must be exact.
  Eigen::MatrixXd block(int r0, int r1, int c0, int c1) const;
  // Leading n x n block.
  Eigen::MatrixXd leading_block(int n) const { return block(0, n, 0, n); }

  friend HessenbergMatrix multiply(const HessenbergMatrix& a, const HessenbergMatrix& b);
  friend HessenbergMatrix add(const HessenbergMatrix& a, const HessenbergMatrix& b);

 private:
  int rows_ = 0;
  int band_ = 0;
  std::optional<int> finite_dim_;
  std::vector<std::vector<double>> data_;  // data_[i] spans columns [0, row_cols(i))
};

HessenbergMatrix multiply(const HessenbergMatrix& a, const HessenbergMatrix& b);
HessenbergMatrix add(const HessenbergMatrix& a, const HessenbergMatrix& b);
HessenbergMatrix scale(const HessenbergMatrix& a, double t);
HessenbergMatrix power(const HessenbergMatrix& b, int k);

// Truncated exponential sum_{j<=r} (t B)^j / j!.
HessenbergMatrix exp_trunc(const HessenbergMatrix& b, double t, int r);

// p(B) with p given by ascending coefficients c0..cd (Horner).
HessenbergMatrix polynomial_apply(const HessenbergMatrix& b, std::span<const double> coeffs);

// Tr P_n B^{l_1} P_n B^{l_2} P_n ... B^{l_j} P_n with P_n the projection onto
// the first n coordinates.
double trace_product(const HessenbergMatrix& b, int n, std::span<const int> exponents);

// Tr P_n (X_1 X_2 ... X_k) P_n without intermediate projections.
double trace_window_product(const std::vector<const HessenbergMatrix*>& factors, int n);

struct SplitPair {
  HessenbergMatrix minus;  // strictly lower triangular part
  HessenbergMatrix plus;   // upper triangular banded part
};

// B = minus + plus where plus holds offsets 0..band_plus. Throws if B has
// entries above band_plus.
SplitPair split(const HessenbergMatrix& b, int band_plus);

HessenbergMatrix commutator(const HessenbergMatrix& a, const HessenbergMatrix& b);

// Nested right-fold bracket [X_1, [X_2, [... [X_{k-1}, X_k]...]]].
HessenbergMatrix nested_commutator(const std::vector<const HessenbergMatrix*>& xs);

// Signed word expansion of the nested bracket: value and the cancellation
// scale sum |Tr P_n (word) P_n| over all 2^{k-1} words.
struct TraceWithScale {
  double value = 0.0;
  double scale = 0.0;
};
TraceWithScale nested_commutator_trace(const std::vector<const HessenbergMatrix*>& xs, int n);

// Largest column index carrying an entry with |entry| > tol, scanning the
// exact window; -1 when none.
int last_nonzero_column(const HessenbergMatrix& b, double tol);

}  // namespace mope
