#include "mope/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mope/io.hpp"

namespace mope {

void RationalSymbol::validate() const {
  if (poles.size() != residues.size()) throw Error("symbol poles/residues length mismatch");
  for (size_t i = 0; i < poles.size(); ++i)
    for (size_t j = i + 1; j < poles.size(); ++j)
      if (poles[i] == poles[j]) throw ConfluenceError("symbol has coincident poles");
}

std::complex<double> RationalSymbol::operator()(std::complex<double> z) const {
  std::complex<double> v = z;
  for (size_t j = 0; j < poles.size(); ++j) v += residues[j] / (z - poles[j]);
  return v;
}

double RationalSymbol::max_abs_pole() const {
  double m = 0.0;
  for (double b : poles) m = std::max(m, std::abs(b));
  return m;
}

double RationalSymbol::sum_abs_residue() const {
  double s = 0.0;
  for (double a : residues) s += std::abs(a);
  return s;
}

std::string RationalSymbol::to_json() const {
  nlohmann::json j;
  j["poles"] = poles;
  j["residues"] = residues;
  return j.dump();
}

namespace {

// Shared row recursion for the path-indexed recurrence matrices: row n holds
// superdiagonal 1, diagonal diag(n), and below-diagonal entries built from
// running products of the telescoping factors bfac(i, l).
//
// Rows n in [lo, hi) are stored with shift -lo; cap_dim, when non-negative,
// clips the superdiagonal at the finite function-space dimension.
HessenbergMatrix build_rows(int lo, int hi, int m, int cap_dim,
                            const std::function<double(int)>& diag,
                            const std::function<double(int, int)>& alpha,
                            const std::function<double(int, int)>& bfac) {
  const int rows = hi - lo;
  HessenbergMatrix out = cap_dim >= 0 ? HessenbergMatrix::finite(cap_dim, 1)
                                      : HessenbergMatrix(rows, 1);
  std::vector<double> prods(m);
  for (int n = lo; n < hi; ++n) {
    const int row = n - lo;
    if (cap_dim < 0 || row + 1 < cap_dim) out.entry(row, row + 1) = 1.0;
    out.entry(row, row) = diag(n);
    if (n == lo) continue;
    double s = 0.0;
    for (int l = 1; l <= m; ++l) {
      prods[l - 1] = alpha(n, l);
      s += prods[l - 1];
    }
    out.entry(row, row - 1) = s;
    for (int r = 1; n - 1 - r >= lo; ++r) {
      double sum = 0.0;
      for (int l = 1; l <= m; ++l) {
        prods[l - 1] *= bfac(n - r + 1, l);
        sum += prods[l - 1];
      }
      out.entry(row, row - 1 - r) = sum;
    }
  }
  return out;
}

// Multi-indices along the path for n in [0, hi] and the b-difference factors
// B_{i,l} = b_{k_{i-1}-e_l, l} - b_{k_{i-1}-e_l, j_{i-1}} for i in [2, hi).
struct JWalk {
  std::vector<MultiIndex> k;              // k[n]
  std::vector<std::vector<double>> bfac;  // bfac[i][l-1], i >= 2
};

JWalk walk_path(const FamilySpec& spec, const LatticePath& path, int hi) {
  if (path.length() < hi) throw Error("path shorter than the requested rows");
  const int m = spec.m;
  JWalk w;
  w.k.resize(hi + 1, MultiIndex(m, 0));
  for (int n = 0; n < hi; ++n) {
    w.k[n + 1] = w.k[n];
    w.k[n + 1][path.step(n) - 1] += 1;
  }
  w.bfac.assign(hi, std::vector<double>(m, 0.0));
  for (int i = 2; i < hi; ++i) {
    const int jprev = path.step(i - 1);
    for (int l = 1; l <= m; ++l) {
      if (l == jprev || w.k[i - 1][l - 1] == 0) {
        // either the two b's coincide or the factor multiplies a vanished
        // branch; both give zero
        w.bfac[i][l - 1] = 0.0;
        continue;
      }
      MultiIndex shifted = w.k[i - 1];
      shifted[l - 1] -= 1;
      NnCoeffs nb = nn_coeffs(spec, shifted);
      w.bfac[i][l - 1] = nb.b[l - 1] - nb.b[jprev - 1];
    }
  }
  return w;
}

HessenbergMatrix build_J_rows(const FamilySpec& spec, const LatticePath& path, int rows,
                              int cap_dim) {
  spec.validate();
  const int m = spec.m;
  JWalk w = walk_path(spec, path, rows);
  std::vector<NnCoeffs> coeffs(rows);
  for (int n = 0; n < rows; ++n) {
    coeffs[n] = nn_coeffs(spec, w.k[n]);
    for (int l = 0; l < m; ++l)
      if (w.k[n][l] == 0 && coeffs[n].a[l] != 0.0)
        throw ParameterDomainError(
            "family has a non-vanishing lowering coefficient at the boundary");
  }
  auto diag = [&](int n) { return coeffs[n].b[path.step(n) - 1]; };
  auto alpha = [&](int n, int l) { return coeffs[n].a[l - 1]; };
  auto bfac = [&](int i, int l) { return w.bfac[i][l - 1]; };
  return build_rows(0, rows, m, cap_dim, diag, alpha, bfac);
}

}  // namespace

HessenbergMatrix build_J(const FamilySpec& spec, const LatticePath& path, int rows) {
  return build_J_rows(spec, path, rows, -1);
}

HessenbergMatrix build_J_finite(const FamilySpec& spec, const LatticePath& path) {
  spec.validate();
  if (spec.family != FamilyId::Krawtchouk || spec.scaled)
    throw ParameterDomainError("finite recurrence matrix needs an unscaled finite-support family");
  const int dim = static_cast<int>(spec.t) + spec.n_scale;  // support size
  return build_J_rows(spec, path, dim, dim);
}

HessenbergMatrix build_Tc(const RationalSymbol& c, const LatticePath& path, int rows) {
  c.validate();
  if (path.m() != c.m()) throw Error("symbol/path dimension mismatch");
  if (path.length() < rows) throw Error("path shorter than the requested rows");
  const int m = c.m();
  auto diag = [&](int n) { return c.poles[path.step(n) - 1]; };
  auto alpha = [&](int n, int l) {
    (void)n;
    return c.residues[l - 1];
  };
  auto bfac = [&](int i, int l) { return c.poles[l - 1] - c.poles[path.step(i - 1) - 1]; };
  return build_rows(0, rows, m, -1, diag, alpha, bfac);
}

HessenbergMatrix composed_toeplitz_block(const Polynomial& f, const RationalSymbol& c,
                                         const LatticePath& path, int rows) {
  c.validate();
  const int d = std::max(f.degree(), 0);
  const int scaffold = 2 * d + 4;
  const int hi = rows + d + 1;
  if (path.length() < hi) throw Error("path shorter than needed for the composed block");
  LatticePath ext = path.extended_below(scaffold);
  const int m = c.m();
  auto diag = [&](int n) { return c.poles[ext.step(n) - 1]; };
  auto alpha = [&](int n, int l) {
    (void)n;
    return c.residues[l - 1];
  };
  auto bfac = [&](int i, int l) { return c.poles[l - 1] - c.poles[ext.step(i - 1) - 1]; };
  HessenbergMatrix shift = build_rows(-scaffold, hi, m, -1, diag, alpha, bfac);
  HessenbergMatrix fm = polynomial_apply(shift, f.coeffs);
  if (fm.rows() < scaffold + rows)
    throw WindowExhaustedError("composed block window exhausted");
  HessenbergMatrix out(rows, std::max(d, 0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < out.row_cols(i); ++j) out.entry(i, j) = fm.at(i + scaffold, j + scaffold);
  return out;
}

HessenbergMatrix toeplitz_matrix(const LaurentWindow& w, int size) {
  if (size < 1) throw Error("toeplitz size must be positive");
  if (w.lmin > -(size - 1) && size > 1)
    throw Error("laurent window too narrow for the requested size");
  const int band = std::max(w.lmax, 0);
  HessenbergMatrix out(size, band);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < out.row_cols(i); ++j) {
      int off = j - i;
      out.entry(i, j) = (off >= w.lmin && off <= w.lmax) ? w.coeff(off) : 0.0;
    }
  return out;
}

HessenbergMatrix basis_change_S(const std::vector<double>& poles, const LatticePath& path,
                                int size) {
  if (path.length() < size - 1) throw Error("path shorter than the requested size");
  HessenbergMatrix s(size, 0);
  std::vector<double> poly{1.0};
  for (int j = 0; j < size; ++j) {
    for (int k = 0; k <= j; ++k) s.entry(j, k) = poly[k];
    if (j + 1 < size) {
      double b = poles.at(path.step(j) - 1);
      std::vector<double> next(poly.size() + 1, 0.0);
      for (size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] += poly[k];
        next[k] -= b * poly[k];
      }
      poly = std::move(next);
    }
  }
  return s;
}

HessenbergMatrix inverse_S(const HessenbergMatrix& s) {
  const int n = s.rows();
  HessenbergMatrix x(n, 0);
  for (int j = 0; j < n; ++j) {
    x.entry(j, j) = 1.0;
    for (int i = j + 1; i < n; ++i) {
      double acc = 0.0;
      for (int k = j; k < i; ++k) acc += s.entry(i, k) * x.at(k, j);
      x.entry(i, j) = -acc;
    }
  }
  return x;
}

HessenbergMatrix conjugated_toeplitz_exact(const Polynomial& f, const RationalSymbol& c,
                                           const LatticePath& path, int size) {
  c.validate();
  const int d = std::max(f.degree(), 0);
  const int big = size + d + 2;
  if (path.length() < big) throw Error("path shorter than needed for the exact conjugation");

  std::vector<Rational> rcoef = laurent_series_compose_exact(f, c, big + d + 1);
  const int lmin = -(big + d + 1);
  auto r_at = [&](long long off) -> Rational {
    if (off > d || off < lmin) return Rational(0);
    return rcoef[static_cast<size_t>(off - lmin)];
  };

  std::vector<Rational> rpoles(c.poles.size());
  for (size_t i = 0; i < c.poles.size(); ++i) rpoles[i] = rational_from_double(c.poles[i]);

  // S rows: coefficients of the running pole products along the path.
  std::vector<std::vector<Rational>> s(big);
  {
    std::vector<Rational> poly{Rational(1)};
    for (int j = 0; j < big; ++j) {
      s[j] = poly;
      if (j + 1 < big) {
        const Rational& b = rpoles[path.step(j) - 1];
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        for (size_t k = 0; k < poly.size(); ++k) {
          next[k + 1] += poly[k];
          next[k] -= b * poly[k];
        }
        poly = std::move(next);
      }
    }
  }
  auto s_at = [&](int i, int j) -> Rational {
    if (j > i) return Rational(0);
    return s[i][j];
  };

  // Y = T S^{-1} from Y S = T, solving columns high to low; Y has upper
  // bandwidth d so each sum is finite.
  std::vector<std::vector<Rational>> y(big, std::vector<Rational>(big, Rational(0)));
  for (int j = big - 1; j >= 0; --j) {
    for (int i = 0; i < big; ++i) {
      Rational acc = r_at(j - i);
      const int kmax = std::min<long long>(static_cast<long long>(i) + d, big - 1);
      for (int k = j + 1; k <= kmax; ++k) acc -= y[i][k] * s_at(k, j);
      y[i][j] = acc;
    }
  }

  HessenbergMatrix out(size, d);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < out.row_cols(i); ++j) {
      Rational acc(0);
      for (int k = j > d ? j - d : 0; k <= i; ++k) acc += s_at(i, k) * y[k][j];
      out.entry(i, j) = to_double(acc);
    }
  }
  return out;
}

double right_limit_gap(const HessenbergMatrix& j, const HessenbergMatrix& t, int n, int w) {
  double gap = 0.0;
  for (int s = -w; s <= w; ++s)
    for (int r = -w; r <= w; ++r) {
      int row = n + s, col = n + r;
      if (row < 0 || col < 0) continue;
      gap = std::max(gap, std::abs(j.at(row, col) - t.at(row, col)));
    }
  return gap;
}

std::string matrix_window_csv(const HessenbergMatrix& m, int i0, int i1, int j0, int j1) {
  CsvWriter csv({"i", "j", "value"});
  for (int i = i0; i < i1; ++i)
    for (int j = j0; j < j1; ++j)
      csv.add_row({std::to_string(i), std::to_string(j), format_double(m.at(i, j))});
  return csv.str();
}

}  // namespace mope
