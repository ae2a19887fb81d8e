#include "mope/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace mope {

Rational RatPoly::operator()(const Rational& x) const {
  Rational v(0);
  for (int i = degree(); i >= 0; --i) v = v * x + c[i];
  return v;
}

std::vector<double> RatPoly::to_doubles() const {
  std::vector<double> out(c.size());
  for (size_t i = 0; i < c.size(); ++i) out[i] = to_double(c[i]);
  return out;
}

namespace {

// Exact masses (gamma * lambda * t)^x / x! on 0..x_max, tail below 1e-16.
RationalMeasure poisson_like_measure(const Rational& rate, long long x_max) {
  RationalMeasure out;
  Rational mass(1);
  for (long long x = 0; x <= x_max; ++x) {
    out.support.push_back(Rational(x));
    out.masses.push_back(mass);
    mass = mass * rate / Rational(x + 1);
  }
  return out;
}

long long poisson_truncation_point(double rate) {
  double mass = 1.0, total = 0.0;
  long long x = 0;
  while (x < 200000) {
    total += mass;
    double next = mass * rate / (x + 1);
    if (x + 2 > 2 * rate && next / (1.0 - rate / (x + 2)) < 1e-16 * total) break;
    mass = next;
    ++x;
  }
  return x;
}

}  // namespace

FamilyMeasures family_measures(const FamilySpec& spec) {
  spec.validate();
  FamilyMeasures out;
  switch (spec.family) {
    case FamilyId::Charlier: {
      if (spec.scaled)
        throw ParameterDomainError("exact charlier measures need the unscaled regime");
      Rational lt = rational_from_double(spec.lambda) * Rational(spec.t);
      double worst_rate = 0.0;
      for (double g : spec.gamma) worst_rate = std::max(worst_rate, g);
      worst_rate *= spec.lambda * static_cast<double>(spec.t);
      out.x_max = poisson_truncation_point(std::max(worst_rate, 1.0));
      for (int j = 0; j < spec.m; ++j) {
        Rational rate = rational_from_double(spec.gamma[j]) * lt;
        out.weights.push_back(poisson_like_measure(rate, out.x_max));
      }
      break;
    }
    case FamilyId::Krawtchouk: {
      if (spec.scaled)
        throw ParameterDomainError("exact krawtchouk measures need the unscaled regime");
      const long long N = spec.t + spec.n_scale - 1;
      out.x_max = N;
      for (int j = 0; j < spec.m; ++j) {
        Rational pj = rational_from_double(spec.p[j]);
        Rational rho = pj / (Rational(1) - pj);
        RationalMeasure meas;
        Rational binom_mass;
        for (long long x = 0; x <= N; ++x) {
          // rho^x / (x! (N-x)!)
          Rational mass = rational_pow(rho, x) /
                          (Rational(big_factorial(static_cast<unsigned>(x))) *
                           Rational(big_factorial(static_cast<unsigned>(N - x))));
          meas.support.push_back(Rational(x));
          meas.masses.push_back(mass);
        }
        (void)binom_mass;
        out.weights.push_back(std::move(meas));
      }
      break;
    }
    default:
      throw ParameterDomainError("exact measures exist only for the discrete families");
  }
  return out;
}

FamilyMoments::FamilyMoments(const FamilySpec& spec) {
  spec.validate();
  tables_.resize(spec.m);
  switch (spec.family) {
    case FamilyId::Charlier: {
      if (spec.scaled)
        throw ParameterDomainError("exact charlier moments need the unscaled regime");
      mode_ = Mode::Poisson;
      Rational lt = rational_from_double(spec.lambda) * Rational(spec.t);
      for (double g : spec.gamma) rates_.push_back(rational_from_double(g) * lt);
      break;
    }
    case FamilyId::Krawtchouk: {
      mode_ = Mode::Summation;
      FamilyMeasures fm = family_measures(spec);
      measures_ = std::move(fm.weights);
      break;
    }
    case FamilyId::Hermite: {
      mode_ = Mode::Gauss;
      variance_ = Rational(1) / Rational(spec.n_scale);
      for (double aj : spec.a) gauss_mean_.push_back(rational_from_double(aj));
      break;
    }
    case FamilyId::LaguerreII: {
      mode_ = Mode::Gamma;
      alpha_ = rational_from_double(spec.effective_alpha());
      for (double s : spec.sigma)
        rates_.push_back(rational_from_double(s) * Rational(spec.n_scale));
      break;
    }
  }
}

void FamilyMoments::extend(int weight_j, int power) const {
  auto& tab = tables_[weight_j - 1];
  if (static_cast<int>(tab.size()) > power) return;
  switch (mode_) {
    case Mode::Summation: {
      const RationalMeasure& meas = measures_[weight_j - 1];
      for (int s = static_cast<int>(tab.size()); s <= power; ++s) {
        Rational acc(0);
        for (size_t i = 0; i < meas.support.size(); ++i)
          acc += rational_pow(meas.support[i], s) * meas.masses[i];
        tab.push_back(acc);
      }
      break;
    }
    case Mode::Poisson: {
      // normalized poisson with rate rho: M_{s+1} = rho sum_i binom(s,i) M_i
      const Rational& rho = rates_[weight_j - 1];
      if (tab.empty()) tab.push_back(Rational(1));
      for (int s = static_cast<int>(tab.size()); s <= power; ++s) {
        Rational acc(0);
        for (int i = 0; i < s; ++i) acc += Rational(big_binomial(s - 1, i)) * tab[i];
        tab.push_back(rho * acc);
      }
      break;
    }
    case Mode::Gauss: {
      // normalized gaussian with mean a_j and variance 1/n
      const Rational& a = gauss_mean_[weight_j - 1];
      if (tab.empty()) tab.push_back(Rational(1));
      if (tab.size() == 1 && power >= 1) tab.push_back(a);
      for (int s = static_cast<int>(tab.size()); s <= power; ++s)
        tab.push_back(a * tab[s - 1] + Rational(s - 1) * variance_ * tab[s - 2]);
      break;
    }
    case Mode::Gamma: {
      // normalized gamma density x^alpha e^{-rate x}: M_s = M_{s-1}(alpha+s)/rate
      const Rational& rate = rates_[weight_j - 1];
      if (tab.empty()) tab.push_back(Rational(1));
      for (int s = static_cast<int>(tab.size()); s <= power; ++s)
        tab.push_back(tab[s - 1] * (alpha_ + Rational(s)) / rate);
      break;
    }
  }
}

Rational FamilyMoments::moment(int weight_j, int power) const {
  if (weight_j < 1 || weight_j > m()) throw Error("weight index out of range");
  if (power < 0) throw Error("moment power must be non-negative");
  extend(weight_j, power);
  return tables_[weight_j - 1][power];
}

namespace {

// Gaussian elimination with nonzero pivoting, exact. Returns false when the
// system is singular.
bool solve_rational(std::vector<std::vector<Rational>>& a, std::vector<Rational>& rhs,
                    std::vector<Rational>& sol) {
  const int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (int c2 = col; c2 < n; ++c2) a[r][c2] -= f * a[col][c2];
      rhs[r] -= f * rhs[col];
    }
  }
  sol.assign(n, Rational(0));
  for (int r = n - 1; r >= 0; --r) {
    Rational acc = rhs[r];
    for (int c2 = r + 1; c2 < n; ++c2) acc -= a[r][c2] * sol[c2];
    sol[r] = acc / a[r][r];
  }
  return true;
}

}  // namespace

RatPoly mop_from_moments_exact(const FamilyMoments& moments, const MultiIndex& k) {
  const int m = moments.m();
  if (static_cast<int>(k.size()) != m) throw Error("multi-index length mismatch");
  int total = 0;
  for (int v : k) {
    if (v < 0) throw Error("multi-index entries must be non-negative");
    total += v;
  }
  // monic x^K + sum_{i<K} c_i x^i with K = |k| conditions
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> rhs;
  for (int j = 1; j <= m; ++j)
    for (int l = 0; l < k[j - 1]; ++l) {
      std::vector<Rational> row(total);
      for (int i = 0; i < total; ++i) row[i] = moments.moment(j, i + l);
      a.push_back(std::move(row));
      rhs.push_back(-moments.moment(j, total + l));
    }
  std::vector<Rational> sol;
  if (total > 0 && !solve_rational(a, rhs, sol))
    throw NonNormalIndexError("orthogonality system is singular at the requested multi-index");
  RatPoly p;
  p.c = std::move(sol);
  p.c.push_back(Rational(1));
  return p;
}

Polynomial mop_from_moments(const std::vector<DiscreteMeasure>& measures, const MultiIndex& k) {
  const int m = static_cast<int>(measures.size());
  if (static_cast<int>(k.size()) != m) throw Error("multi-index length mismatch");
  int total = 0;
  for (int v : k) total += v;
  auto moment = [&](int j, int s) {
    double acc = 0.0;
    const DiscreteMeasure& meas = measures[j - 1];
    for (size_t i = 0; i < meas.support.size(); ++i)
      acc += std::pow(meas.support[i], s) * meas.masses[i];
    return acc;
  };
  Eigen::MatrixXd a(total, total);
  Eigen::VectorXd rhs(total);
  double scale = 1.0;
  int row = 0;
  for (int j = 1; j <= m; ++j)
    for (int l = 0; l < k[j - 1]; ++l, ++row) {
      for (int i = 0; i < total; ++i) {
        a(row, i) = moment(j, i + l);
        scale = std::max(scale, std::abs(a(row, i)));
      }
      rhs(row) = -moment(j, total + l);
      scale = std::max(scale, std::abs(rhs(row)));
    }
  Polynomial out;
  if (total == 0) {
    out.coeffs = {1.0};
    return out;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (lu.rank() < total)
    throw NonNormalIndexError("orthogonality system is singular at the requested multi-index");
  Eigen::VectorXd sol = lu.solve(rhs);
  double resid = (a * sol - rhs).cwiseAbs().maxCoeff();
  if (resid > 1e-10 * scale)
    throw NonNormalIndexError("orthogonality residual exceeds certification threshold");
  out.coeffs.assign(sol.data(), sol.data() + total);
  out.coeffs.push_back(1.0);
  return out;
}

NnVerification verify_nn_recurrence(const FamilySpec& spec, const MultiIndex& k, int l) {
  spec.validate();
  const int m = spec.m;
  if (l < 1 || l > m) throw Error("direction out of range");
  FamilyMoments moments(spec);
  RatPoly pk = mop_from_moments_exact(moments, k);
  MultiIndex up = k;
  up[l - 1] += 1;
  RatPoly pup = mop_from_moments_exact(moments, up);
  const int total = multi_index_sum(k);

  std::vector<int> down_dirs;
  std::vector<RatPoly> pdn;
  for (int j = 1; j <= m; ++j)
    if (k[j - 1] >= 1) {
      MultiIndex dn = k;
      dn[j - 1] -= 1;
      down_dirs.push_back(j);
      pdn.push_back(mop_from_moments_exact(moments, dn));
    }

  // rhs = x p_k - p_{k+e_l}, degree <= K since both are monic of degree K+1
  std::vector<Rational> rhs(total + 2, Rational(0));
  for (int i = 0; i <= pk.degree(); ++i) rhs[i + 1] += pk.c[i];
  for (int i = 0; i <= pup.degree(); ++i) rhs[i] -= pup.c[i];

  // unknowns: b (times p_k) and a_j (times p_{k-e_j})
  const int unknowns = 1 + static_cast<int>(down_dirs.size());
  // b is the coefficient of x^K (p_k monic, p_dn have degree K-1)
  Rational b = rhs[total];
  NnVerification out;
  out.a.assign(m, 0.0);
  out.b = to_double(b);

  std::vector<Rational> asol(down_dirs.size(), Rational(0));
  if (!down_dirs.empty()) {
    // remaining rows: rhs - b p_k = sum_j a_j p_dn_j on degrees 0..K-1,
    // solved through the exact normal equations
    std::vector<Rational> target(total, Rational(0));
    for (int i = 0; i < total; ++i) target[i] = rhs[i] - b * pk.c[i];
    const int na = static_cast<int>(down_dirs.size());
    auto col_at = [&](int cix, int deg) {
      return deg <= pdn[cix].degree() ? pdn[cix].c[deg] : Rational(0);
    };
    std::vector<std::vector<Rational>> a(na, std::vector<Rational>(na, Rational(0)));
    std::vector<Rational> r2(na, Rational(0));
    for (int i = 0; i < na; ++i)
      for (int deg = 0; deg < total; ++deg) {
        for (int j = 0; j < na; ++j) a[i][j] += col_at(i, deg) * col_at(j, deg);
        r2[i] += col_at(i, deg) * target[deg];
      }
    if (!solve_rational(a, r2, asol))
      throw NonNormalIndexError("lowered polynomials are linearly dependent");
    // full-residual consistency over all degrees
    out.consistent = true;
    for (int deg = 0; deg < total; ++deg) {
      Rational acc = target[deg];
      for (int cix = 0; cix < na; ++cix)
        if (deg <= pdn[cix].degree()) acc -= asol[cix] * pdn[cix].c[deg];
      if (acc != 0) {
        // tolerate the 1e-16-level charlier truncation of the measures
        double gap = std::abs(to_double(acc));
        if (gap > 1e-9) out.consistent = false;
      }
    }
    for (int cix = 0; cix < na; ++cix) out.a[down_dirs[cix] - 1] = to_double(asol[cix]);
  } else {
    out.consistent = true;
  }
  if (unknowns == 1 && total > 0) {
    for (int i = 0; i < total; ++i)
      if (rhs[i] - b * pk.c[i] != 0 && std::abs(to_double(rhs[i] - b * pk.c[i])) > 1e-9)
        out.consistent = false;
  }

  NnCoeffs formula = nn_coeffs(spec, k);
  out.max_gap = std::abs(out.b - formula.b[l - 1]);
  for (int j = 0; j < m; ++j) out.max_gap = std::max(out.max_gap, std::abs(out.a[j] - formula.a[j]));
  return out;
}

double consistency_gap(const FamilySpec& spec, const MultiIndex& k, int r, int s) {
  FamilyMoments moments(spec);
  MultiIndex kr = k, ks = k;
  kr[r - 1] += 1;
  ks[s - 1] += 1;
  RatPoly pr = mop_from_moments_exact(moments, kr);
  RatPoly ps = mop_from_moments_exact(moments, ks);
  RatPoly pk = mop_from_moments_exact(moments, k);
  NnCoeffs formula = nn_coeffs(spec, k);
  Rational diff_b = rational_from_double(formula.b[s - 1]) - rational_from_double(formula.b[r - 1]);
  double gap = 0.0;
  for (int i = 0; i <= std::max(pr.degree(), ps.degree()); ++i) {
    Rational lhs = (i <= pr.degree() ? pr.c[i] : Rational(0)) -
                   (i <= ps.degree() ? ps.c[i] : Rational(0));
    Rational rhsv = i <= pk.degree() ? diff_b * pk.c[i] : Rational(0);
    gap = std::max(gap, std::abs(to_double(lhs - rhsv)));
  }
  return gap;
}

int EnsembleSpec::particles() const {
  int n = 0;
  for (int v : multiplicities) n += v;
  return n;
}

EnsembleSpec ensemble_from_family(const FamilySpec& spec, const std::vector<int>& multiplicities) {
  if (static_cast<int>(multiplicities.size()) != spec.m)
    throw ParameterDomainError("multiplicities length must match m");
  for (int v : multiplicities)
    if (v < 0) throw ParameterDomainError("multiplicities must be non-negative");
  FamilyMeasures fm = family_measures(spec);
  EnsembleSpec out;
  out.multiplicities = multiplicities;
  out.weights = std::move(fm.weights);
  out.x_max = fm.x_max;
  return out;
}

ExactDistribution enumerate_mope(const EnsembleSpec& spec) {
  const int n = spec.particles();
  if (n < 1) throw InvalidEnsembleError("ensemble needs at least one particle");
  const auto& support = spec.weights.at(0).support;
  const int s = static_cast<int>(support.size());
  if (s < n) throw InvalidEnsembleError("support smaller than the particle count");
  // C(s, n) guard
  double log_configs = 0.0;
  for (int i = 0; i < n; ++i) log_configs += std::log(0.0 + s - i) - std::log(1.0 + i);
  if (log_configs > std::log(1e6)) throw SizeError("too many configurations to enumerate");

  ExactDistribution out;
  out.support = support;

  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  Rational z(0);
  std::vector<Rational> raw;
  while (true) {
    // Vandermonde
    Rational vdm(1);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) vdm *= support[idx[b]] - support[idx[a]];
    // stacked weight rows x^d * mass_j(x)
    std::vector<std::vector<Rational>> h;
    for (int j = 0; j < spec.m(); ++j)
      for (int d = 0; d < spec.multiplicities[j]; ++d) {
        std::vector<Rational> row(n);
        for (int i = 0; i < n; ++i)
          row[i] = rational_pow(support[idx[i]], d) * spec.weights[j].masses[idx[i]];
        h.push_back(std::move(row));
      }
    // exact determinant by elimination
    Rational det(1);
    {
      std::vector<std::vector<Rational>> a = h;
      bool singular = false;
      for (int col = 0; col < n && !singular; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
          if (a[r][col] != 0) {
            piv = r;
            break;
          }
        if (piv < 0) {
          det = 0;
          singular = true;
          break;
        }
        if (piv != col) {
          std::swap(a[piv], a[col]);
          det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < n; ++r) {
          if (a[r][col] == 0) continue;
          Rational f = a[r][col] / a[col][col];
          for (int c2 = col; c2 < n; ++c2) a[r][c2] -= f * a[col][c2];
        }
      }
    }
    Rational w = vdm * det;
    raw.push_back(w);
    z += w;
    out.configs.push_back(idx);

    // next combination
    int pos = n - 1;
    while (pos >= 0 && idx[pos] == s - n + pos) --pos;
    if (pos < 0) break;
    idx[pos] += 1;
    for (int q = pos + 1; q < n; ++q) idx[q] = idx[q - 1] + 1;
  }
  if (z == 0) throw InvalidEnsembleError("ensemble normalization vanishes");
  out.probs.resize(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    out.probs[i] = raw[i] / z;
    if (out.probs[i] < 0)
      throw InvalidEnsembleError("ensemble density is negative on a configuration");
  }
  return out;
}

namespace {

std::vector<Rational> rational_coeffs(const Polynomial& f) {
  std::vector<Rational> out;
  for (double v : f.coeffs) out.push_back(rational_from_double(v));
  return out;
}

Rational statistic_value(const ExactDistribution& d, const std::vector<Rational>& f, size_t ci) {
  Rational x(0);
  for (int i : d.configs[ci]) {
    Rational v(0);
    const Rational& pt = d.support[i];
    for (int p = static_cast<int>(f.size()) - 1; p >= 0; --p) v = v * pt + f[p];
    x += v;
  }
  return x;
}

}  // namespace

CumulantReport exact_cumulants(const EnsembleSpec& spec, const Polynomial& f, int m_max) {
  if (m_max < 1) throw Error("m_max must be positive");
  ExactDistribution d = enumerate_mope(spec);
  std::vector<Rational> fr = rational_coeffs(f);
  std::vector<Rational> moments(m_max + 1, Rational(0));
  moments[0] = 1;
  for (size_t ci = 0; ci < d.configs.size(); ++ci) {
    Rational x = statistic_value(d, fr, ci);
    Rational pw(1);
    for (int p = 1; p <= m_max; ++p) {
      pw *= x;
      moments[p] += d.probs[ci] * pw;
    }
  }
  std::vector<Rational> cum(m_max + 1, Rational(0));
  for (int m = 1; m <= m_max; ++m) {
    Rational acc = moments[m];
    for (int i = 1; i < m; ++i)
      acc -= Rational(big_binomial(m - 1, i - 1)) * cum[i] * moments[m - i];
    cum[m] = acc;
  }
  CumulantReport report;
  report.n = spec.particles();
  report.matrix_id = "enumeration";
  report.f = f.coeffs;
  for (int m = 1; m <= m_max; ++m) report.values[m] = to_double(cum[m]);
  report.metadata["x_max"] = std::to_string(spec.x_max);
  return report;
}

double exact_mean(const EnsembleSpec& spec, const Polynomial& f) {
  ExactDistribution d = enumerate_mope(spec);
  std::vector<Rational> fr = rational_coeffs(f);
  Rational acc(0);
  for (size_t ci = 0; ci < d.configs.size(); ++ci)
    acc += d.probs[ci] * statistic_value(d, fr, ci);
  return to_double(acc);
}

namespace {

Rational exp_trunc_scalar(const Rational& x, int r) {
  Rational e(1), term(1);
  for (int j = 1; j <= r; ++j) {
    term = term * x / Rational(j);
    e += term;
  }
  return e;
}

}  // namespace

double exact_mgf(const EnsembleSpec& spec, const Polynomial& f, double lambda, int r) {
  ExactDistribution d = enumerate_mope(spec);
  std::vector<Rational> fr = rational_coeffs(f);
  Rational lam = rational_from_double(lambda);
  Rational acc(0);
  for (size_t ci = 0; ci < d.configs.size(); ++ci)
    acc += d.probs[ci] * exp_trunc_scalar(statistic_value(d, fr, ci) * lam, r);
  return to_double(acc);
}

double exact_mgf_product(const EnsembleSpec& spec, const Polynomial& f, double lambda, int r) {
  ExactDistribution d = enumerate_mope(spec);
  std::vector<Rational> fr = rational_coeffs(f);
  Rational lam = rational_from_double(lambda);
  Rational acc(0);
  for (size_t ci = 0; ci < d.configs.size(); ++ci) {
    Rational prod(1);
    for (int i : d.configs[ci]) {
      Rational v(0);
      const Rational& pt = d.support[i];
      for (int p = static_cast<int>(fr.size()) - 1; p >= 0; --p) v = v * pt + fr[p];
      prod *= exp_trunc_scalar(v * lam, r);
    }
    acc += d.probs[ci] * prod;
  }
  return to_double(acc);
}

}  // namespace mope
