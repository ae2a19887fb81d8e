#include "mope/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mope {

namespace {

void require_window(bool cond, const char* what) {
  if (!cond) throw WindowExhaustedError(what);
}

}  // namespace

HessenbergMatrix::HessenbergMatrix(int rows, int band) : rows_(rows), band_(band) {
  if (rows < 0) throw Error("negative row count");
  data_.resize(rows);
  for (int i = 0; i < rows; ++i) data_[i].assign(row_cols(i), 0.0);
}

HessenbergMatrix HessenbergMatrix::identity(int rows) {
  HessenbergMatrix m(rows, 0);
  for (int i = 0; i < rows; ++i) m.entry(i, i) = 1.0;
  return m;
}

HessenbergMatrix HessenbergMatrix::identity_like(const HessenbergMatrix& b, int rows) {
  if (b.finite_dim_) return finite_identity_of(*b.finite_dim_);
  return identity(rows);
}

HessenbergMatrix HessenbergMatrix::zero(int rows, int band) {
  return HessenbergMatrix(rows, band);
}

HessenbergMatrix HessenbergMatrix::finite(int n, int band) {
  HessenbergMatrix m;
  m.rows_ = n;
  m.band_ = band;
  m.finite_dim_ = n;
  m.data_.resize(n);
  for (int i = 0; i < n; ++i) m.data_[i].assign(m.row_cols(i), 0.0);
  return m;
}

HessenbergMatrix HessenbergMatrix::finite_identity_of(int n) {
  HessenbergMatrix m = finite(n, 0);
  for (int i = 0; i < n; ++i) m.entry(i, i) = 1.0;
  return m;
}

int HessenbergMatrix::row_cols(int i) const {
  long long last = static_cast<long long>(i) + band_;
  if (finite_dim_) last = std::min<long long>(last, *finite_dim_ - 1);
  return static_cast<int>(std::max<long long>(0, last + 1));
}

double HessenbergMatrix::at(int i, int j) const {
  if (i < 0 || j < 0) throw Error("negative matrix index");
  if (i >= rows_) {
    if (finite_dim_) return 0.0;
    throw WindowExhaustedError("row beyond the exact window");
  }
  if (j >= row_cols(i)) return 0.0;
  return data_[i][j];
}

double& HessenbergMatrix::entry(int i, int j) {
  if (i < 0 || i >= rows_ || j < 0 || j >= row_cols(i))
    throw Error("entry index outside stored band");
  return data_[i][j];
}

double HessenbergMatrix::entry(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= row_cols(i))
    throw Error("entry index outside stored band");
  return data_[i][j];
}

Eigen::MatrixXd HessenbergMatrix::block(int r0, int r1, int c0, int c1) const {
  if (r0 < 0 || c0 < 0 || r1 < r0 || c1 < c0) throw Error("bad block bounds");
  if (!finite_dim_) require_window(r1 <= rows_, "block extends beyond the exact window");
  Eigen::MatrixXd out(r1 - r0, c1 - c0);
  for (int i = r0; i < r1; ++i)
    for (int j = c0; j < c1; ++j) out(i - r0, j - c0) = at(i, j);
  return out;
}

namespace {

bool same_finite(const HessenbergMatrix& a, const HessenbergMatrix& b) {
  if (a.finite_dim().has_value() != b.finite_dim().has_value()) return false;
  if (a.finite_dim() && *a.finite_dim() != *b.finite_dim()) return false;
  return true;
}

}  // namespace

HessenbergMatrix multiply(const HessenbergMatrix& a, const HessenbergMatrix& b) {
  if (!same_finite(a, b)) throw Error("cannot mix finite and windowed matrices");
  if (a.finite_dim()) {
    const int n = *a.finite_dim();
    int band = std::min(a.band() + b.band(), n - 1);
    HessenbergMatrix out = HessenbergMatrix::finite(n, band);
    for (int i = 0; i < n; ++i) {
      const int kmax = std::min<long long>(static_cast<long long>(i) + a.band(), n - 1);
      for (int k = 0; k <= kmax; ++k) {
        double c = a.entry(i, k);
        if (c == 0.0) continue;
        const int jmax = std::min<long long>(static_cast<long long>(k) + b.band(), n - 1);
        for (int j = 0; j <= jmax; ++j) out.entry(i, j) += c * b.entry(k, j);
      }
    }
    return out;
  }
  long long exact = std::min<long long>(a.rows(), static_cast<long long>(b.rows()) - a.band());
  require_window(exact > 0, "product has no exact rows left");
  const int band = a.band() + b.band();
  HessenbergMatrix out(static_cast<int>(exact), band);
  for (int i = 0; i < out.rows(); ++i) {
    const long long kmax = static_cast<long long>(i) + a.band();
    for (long long k = 0; k <= kmax; ++k) {
      double c = a.entry(i, static_cast<int>(k));
      if (c == 0.0) continue;
      const long long jcap = std::min<long long>(k + b.band(), static_cast<long long>(i) + band);
      for (long long j = 0; j <= jcap; ++j)
        out.entry(i, static_cast<int>(j)) += c * b.entry(static_cast<int>(k), static_cast<int>(j));
    }
  }
  return out;
}

HessenbergMatrix add(const HessenbergMatrix& a, const HessenbergMatrix& b) {
  if (!same_finite(a, b)) throw Error("cannot mix finite and windowed matrices");
  const int rows = std::min(a.rows(), b.rows());
  require_window(rows > 0 || (a.rows() == 0 && b.rows() == 0), "sum has no exact rows left");
  const int band = std::max(a.band(), b.band());
  HessenbergMatrix out =
      a.finite_dim() ? HessenbergMatrix::finite(*a.finite_dim(), band) : HessenbergMatrix(rows, band);
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.row_cols(i); ++j) out.entry(i, j) = a.at(i, j) + b.at(i, j);
  return out;
}

HessenbergMatrix scale(const HessenbergMatrix& a, double t) {
  HessenbergMatrix out = a;
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.row_cols(i); ++j) out.entry(i, j) *= t;
  return out;
}

HessenbergMatrix power(const HessenbergMatrix& b, int k) {
  if (k < 0) throw Error("negative matrix power");
  if (k == 0) return HessenbergMatrix::identity_like(b, b.rows());
  HessenbergMatrix out = b;
  for (int i = 1; i < k; ++i) out = multiply(out, b);
  return out;
}

HessenbergMatrix exp_trunc(const HessenbergMatrix& b, double t, int r) {
  if (r < 0) throw Error("exp_trunc order must be non-negative");
  HessenbergMatrix x = HessenbergMatrix::identity_like(b, b.rows());
  for (int k = r; k >= 1; --k) {
    HessenbergMatrix bx = scale(multiply(b, x), t / k);
    x = add(HessenbergMatrix::identity_like(b, bx.rows()), bx);
  }
  return x;
}

HessenbergMatrix polynomial_apply(const HessenbergMatrix& b, std::span<const double> coeffs) {
  int d = static_cast<int>(coeffs.size()) - 1;
  while (d > 0 && coeffs[d] == 0.0) --d;
  HessenbergMatrix x = scale(HessenbergMatrix::identity_like(b, b.rows()), d >= 0 ? coeffs[d] : 0.0);
  for (int i = d - 1; i >= 0; --i) {
    HessenbergMatrix xb = multiply(x, b);
    HessenbergMatrix ci = scale(HessenbergMatrix::identity_like(b, xb.rows()), coeffs[i]);
    x = add(xb, ci);
  }
  return x;
}

double trace_product(const HessenbergMatrix& b, int n, std::span<const int> exponents) {
  if (exponents.empty()) return static_cast<double>(n);
  int lmax = 0;
  for (int l : exponents) {
    if (l < 1) throw Error("trace_product exponents must be positive");
    lmax = std::max(lmax, l);
  }
  std::vector<HessenbergMatrix> pow;
  pow.reserve(lmax);
  pow.push_back(b);
  for (int l = 2; l <= lmax; ++l) pow.push_back(multiply(pow.back(), b));
  std::vector<Eigen::MatrixXd> blocks(lmax);
  for (int l = 1; l <= lmax; ++l) {
    require_window(pow[l - 1].finite_dim().has_value() || pow[l - 1].rows() >= n,
                   "trace_product window exhausted");
    blocks[l - 1] = pow[l - 1].leading_block(n);
  }
  Eigen::MatrixXd m = blocks[exponents[0] - 1];
  for (size_t i = 1; i < exponents.size(); ++i) m = m * blocks[exponents[i] - 1];
  return m.trace();
}

double trace_window_product(const std::vector<const HessenbergMatrix*>& factors, int n) {
  if (factors.empty()) return static_cast<double>(n);
  HessenbergMatrix prod = *factors[0];
  for (size_t i = 1; i < factors.size(); ++i) prod = multiply(prod, *factors[i]);
  require_window(prod.finite_dim().has_value() || prod.rows() >= n,
                 "trace window exhausted");
  double tr = 0.0;
  for (int i = 0; i < n; ++i) tr += prod.at(i, i);
  return tr;
}

SplitPair split(const HessenbergMatrix& b, int band_plus) {
  if (band_plus < 0) throw Error("band_plus must be non-negative");
  for (int i = 0; i < b.rows(); ++i)
    for (int j = i + band_plus + 1; j < b.row_cols(i); ++j)
      if (b.entry(i, j) != 0.0) throw Error("matrix has entries above band_plus");
  SplitPair out;
  out.minus = b.finite_dim() ? HessenbergMatrix::finite(*b.finite_dim(), -1)
                             : HessenbergMatrix(b.rows(), -1);
  out.plus = b.finite_dim() ? HessenbergMatrix::finite(*b.finite_dim(), band_plus)
                            : HessenbergMatrix(b.rows(), band_plus);
  for (int i = 0; i < b.rows(); ++i) {
    for (int j = 0; j < b.row_cols(i); ++j) {
      double v = b.entry(i, j);
      if (v == 0.0) continue;
      if (j < i)
        out.minus.entry(i, j) = v;
      else
        out.plus.entry(i, j) = v;
    }
  }
  return out;
}

HessenbergMatrix commutator(const HessenbergMatrix& a, const HessenbergMatrix& b) {
  return add(multiply(a, b), scale(multiply(b, a), -1.0));
}

HessenbergMatrix nested_commutator(const std::vector<const HessenbergMatrix*>& xs) {
  if (xs.empty()) throw Error("nested commutator needs at least one factor");
  HessenbergMatrix y = *xs.back();
  for (int i = static_cast<int>(xs.size()) - 2; i >= 0; --i) y = commutator(*xs[i], y);
  return y;
}

TraceWithScale nested_commutator_trace(const std::vector<const HessenbergMatrix*>& xs, int n) {
  if (xs.empty()) throw Error("nested commutator needs at least one factor");
  // expand [x_0, [x_1, [...]]] into signed words, right to left
  struct Word {
    int sign;
    std::vector<const HessenbergMatrix*> factors;
  };
  std::vector<Word> words{{1, {xs.back()}}};
  for (int i = static_cast<int>(xs.size()) - 2; i >= 0; --i) {
    std::vector<Word> next;
    next.reserve(words.size() * 2);
    for (const Word& w : words) {
      Word left{w.sign, {}};
      left.factors.push_back(xs[i]);
      left.factors.insert(left.factors.end(), w.factors.begin(), w.factors.end());
      Word right{-w.sign, w.factors};
      right.factors.push_back(xs[i]);
      next.push_back(std::move(left));
      next.push_back(std::move(right));
    }
    words = std::move(next);
  }
  TraceWithScale out;
  for (const Word& w : words) {
    double tr = trace_window_product(w.factors, n);
    out.value += w.sign * tr;
    out.scale += std::abs(tr);
  }
  return out;
}

int last_nonzero_column(const HessenbergMatrix& b, double tol) {
  int last = -1;
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.row_cols(i); ++j)
      if (std::abs(b.entry(i, j)) > tol) last = std::max(last, j);
  return last;
}

}  // namespace mope
