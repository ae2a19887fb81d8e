#include "mope/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "mope/recurrence.hpp"

namespace mope {

Polynomial::Polynomial(std::vector<double> c) : coeffs(std::move(c)) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
}

int Polynomial::degree() const { return static_cast<int>(coeffs.size()) - 1; }

double Polynomial::operator()(double x) const {
  double v = 0.0;
  for (int i = degree(); i >= 0; --i) v = v * x + coeffs[i];
  return v;
}

std::string Polynomial::to_string() const {
  std::ostringstream os;
  if (coeffs.empty()) return "0";
  for (int i = 0; i <= degree(); ++i) {
    if (i) os << " + ";
    os << coeffs[i] << "*x^" << i;
  }
  return os.str();
}

double LaurentWindow::coeff(int l) const {
  if (l > lmax) return 0.0;
  if (l < lmin) throw Error("laurent coefficient below the computed window");
  return coeffs[static_cast<size_t>(l - lmin)];
}

double LaurentWindow::max_abs() const {
  double m = 0.0;
  for (double v : coeffs) m = std::max(m, std::abs(v));
  return m;
}

int default_laurent_depth(const Polynomial& f) { return 8 * std::max(f.degree(), 0) + 40; }

namespace {

using LD = long double;
using CLD = std::complex<LD>;

// One trapezoid pass: coefficients of f(c(z)) on |z| = R for exponents in
// [lmin, lmax], N equispaced nodes.
std::vector<double> trapezoid_coeffs(const Polynomial& f, const RationalSymbol& c, LD radius,
                                     int N, int lmin, int lmax) {
  std::vector<CLD> values(N);
  const LD two_pi = 2.0L * std::numbers::pi_v<LD>;
  for (int t = 0; t < N; ++t) {
    LD theta = two_pi * t / N;
    CLD z(radius * std::cos(theta), radius * std::sin(theta));
    CLD cz = z;
    for (size_t j = 0; j < c.poles.size(); ++j)
      cz += CLD(c.residues[j]) / (z - CLD(c.poles[j]));
    CLD fv = 0.0L;
    for (int i = f.degree(); i >= 0; --i) fv = fv * cz + CLD(f.coeffs[i]);
    values[t] = fv;
  }
  std::vector<double> out(lmax - lmin + 1);
  for (int l = lmin; l <= lmax; ++l) {
    CLD acc = 0.0L;
    for (int t = 0; t < N; ++t) {
      LD theta = -two_pi * static_cast<LD>(l) * t / N;
      acc += values[t] * CLD(std::cos(theta), std::sin(theta));
    }
    acc /= static_cast<LD>(N);
    LD scalepow = std::pow(radius, static_cast<LD>(-l));
    out[l - lmin] = static_cast<double>(acc.real() * scalepow);
  }
  return out;
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

LaurentWindow compose_laurent(const Polynomial& f, const RationalSymbol& c, int L) {
  c.validate();
  if (L < 0) throw Error("laurent depth must be non-negative");
  const int d = std::max(f.degree(), 0);
  const double maxb = c.max_abs_pole();
  const bool growth = maxb >= 1.0 - 1e-9;

  int depth = L;
  const int extra_positive = 3;  // computed above deg f to check structural vanishing
  for (int attempt = 0; attempt < 12; ++attempt) {
    // Candidate radii: the generous default circle, then a circle hugging the
    // outermost pole. On the big circle the mean that produces a coefficient
    // at depth l is smaller than the integrand by a factor (|b|/R)^l, so for
    // deep windows the roundoff of the node values drowns it; the near circle
    // keeps (R / max(1,|b|))^depth of order e^3. The default is tried first
    // whenever it has a chance of certifying.
    const double r_default = 2.0 * (1.0 + maxb + c.sum_abs_residue());
    const double r_near = std::max(maxb, 1.0) * (1.0 + 3.0 / std::max(depth, 3));
    std::vector<double> radii;
    if (depth * std::log(r_default / std::max(maxb, 1.0)) < std::log(1e5))
      radii = {r_default, r_near};
    else
      radii = {r_near};

    const int lmin = -depth, lmax = d + extra_positive;
    bool certified = false;
    double radius = 0.0;
    std::vector<double> cur;
    for (double rad : radii) {
      if (rad <= maxb) throw ContourError("contour radius does not enclose the poles");
      int N = std::max(64, next_pow2(4 * (depth + d + 1)));
      std::vector<double> prev = trapezoid_coeffs(f, c, rad, N, lmin, lmax);
      while (N <= (1 << 17)) {
        N *= 2;
        cur = trapezoid_coeffs(f, c, rad, N, lmin, lmax);
        double scale = 0.0, diff = 0.0;
        for (size_t i = 0; i < cur.size(); ++i) {
          scale = std::max(scale, std::abs(cur[i]));
          diff = std::max(diff, std::abs(cur[i] - prev[i]));
        }
        if (diff <= 1e-12 * std::max(scale, 1e-300)) {
          certified = true;
          break;
        }
        prev = cur;
      }
      if (certified) {
        radius = rad;
        break;
      }
    }
    if (!certified) throw WindowCertificationError("quadrature did not stabilize under refinement");

    LaurentWindow w;
    w.lmin = lmin;
    w.lmax = d;
    w.coeffs.assign(cur.begin(), cur.begin() + (d - lmin + 1));
    w.radius = radius;
    w.alias_certified = true;
    w.growth_regime = growth;

    double maxabs = w.max_abs();
    for (int l = d + 1; l <= lmax; ++l)
      if (std::abs(cur[l - lmin]) > 1e-13 * std::max(maxabs, 1e-300))
        throw WindowCertificationError("positive laurent side fails to vanish beyond deg f");

    if (growth) {
      // a pole on or outside the unit circle: negative coefficients cannot
      // decay, so the plain tail certificate is unattainable by construction
      w.tail_certified = false;
      return w;
    }
    if (std::abs(w.coeff(lmin)) <= 1e-14 * std::max(maxabs, 1e-300)) {
      w.tail_certified = true;
      return w;
    }
    depth = static_cast<int>(std::ceil(depth * 1.6)) + 8;
    if (depth > 4000) break;
  }
  throw WindowCertificationError("laurent tail did not certify; window widening exhausted");
}

namespace {

// Composed Laurent series by polynomial arithmetic on 1/z expansions,
// exact for the scalar type up to the stated depth.
template <typename T>
std::vector<T> series_compose_impl(const std::vector<T>& fcoeffs, const std::vector<T>& poles,
                                   const std::vector<T>& residues, int L) {
  const int d = static_cast<int>(fcoeffs.size()) - 1;
  const int work = L + std::max(d, 1) + 2;  // exponents [-work, +max(d,1)]
  const int top = std::max(d, 1);
  const int W = work + top + 1;  // vector length
  auto idx = [&](int e) { return e + work; };

  // c(z) = z + sum a_j b_j^{s-1} z^{-s}
  std::vector<T> cser(W, T(0));
  cser[idx(1)] = T(1);
  for (size_t j = 0; j < poles.size(); ++j) {
    T p = residues[j];
    for (int s = 1; s <= work; ++s) {
      cser[idx(-s)] += p;
      p *= poles[j];
    }
  }

  // Horner: acc = f_d; acc = acc * c + f_i
  std::vector<T> acc(W, T(0));
  acc[idx(0)] = d >= 0 ? fcoeffs[d] : T(0);
  for (int i = d - 1; i >= 0; --i) {
    std::vector<T> next(W, T(0));
    for (int e1 = -work; e1 <= top; ++e1) {
      const T& a = acc[idx(e1)];
      if (a == T(0)) continue;
      for (int e2 = -work; e2 <= 1; ++e2) {
        const T& b = cser[idx(e2)];
        if (b == T(0)) continue;
        int e = e1 + e2;
        if (e < -work || e > top) continue;
        next[idx(e)] += a * b;
      }
    }
    next[idx(0)] += fcoeffs[i];
    acc = std::move(next);
  }

  std::vector<T> out(L + std::max(d, 0) + 1, T(0));
  for (int e = -L; e <= std::max(d, 0); ++e) out[e + L] = acc[idx(e)];
  return out;
}

}  // namespace

std::vector<double> laurent_series_compose(const Polynomial& f, const RationalSymbol& c, int L) {
  c.validate();
  std::vector<double> fc = f.coeffs;
  return series_compose_impl<double>(fc, c.poles, c.residues, L);
}

std::vector<Rational> laurent_series_compose_exact(const Polynomial& f, const RationalSymbol& c,
                                                   int L) {
  c.validate();
  std::vector<Rational> fc, poles, res;
  for (double v : f.coeffs) fc.push_back(rational_from_double(v));
  for (double v : c.poles) poles.push_back(rational_from_double(v));
  for (double v : c.residues) res.push_back(rational_from_double(v));
  return series_compose_impl<Rational>(fc, poles, res, L);
}

double limiting_variance(const LaurentWindow& w) {
  int top = std::min(w.lmax, -w.lmin);
  double v = 0.0;
  for (int l = 1; l <= top; ++l) v += l * w.coeff(l) * w.coeff(-l);
  return v;
}

double finite_n_variance(const LaurentWindow& w, int n) {
  int top = std::min(w.lmax, -w.lmin);
  double v = 0.0;
  for (int j = 1; j <= top; ++j) v += std::min(j, n) * w.coeff(j) * w.coeff(-j);
  return v;
}

}  // namespace mope
