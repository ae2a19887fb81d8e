#include "mope/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "mope/io.hpp"
#include "mope/recurrence.hpp"

namespace mope {

namespace {

void compositions_rec(int remaining, std::vector<int>& parts,
                      std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(parts);
    return;
  }
  for (int l = 1; l <= remaining; ++l) {
    parts.push_back(l);
    compositions_rec(remaining - l, parts, out);
    parts.pop_back();
  }
}

std::vector<Composition> make_compositions(int m) {
  std::vector<std::vector<int>> raw;
  std::vector<int> scratch;
  compositions_rec(m, scratch, raw);
  std::sort(raw.begin(), raw.end());
  std::vector<Composition> out;
  out.reserve(raw.size());
  const BigInt mfact = big_factorial(m);
  for (auto& parts : raw) {
    BigInt denom = static_cast<int>(parts.size());
    for (int l : parts) denom *= big_factorial(l);
    Rational pref(mfact, denom);
    if (parts.size() % 2 == 0) pref = -pref;
    out.push_back({std::move(parts), std::move(pref)});
  }
  return out;
}

}  // namespace

const std::vector<Composition>& compositions_of(int m) {
  if (m < 1) throw Error("composition order must be positive");
  static std::mutex mu;
  static std::map<int, std::vector<Composition>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, make_compositions(m)).first;
  return it->second;
}

Rational partition_identity_sum(int m) {
  Rational total(0);
  const BigInt mfact = big_factorial(m);
  for (const Composition& c : compositions_of(m)) total += c.prefactor;
  return total / Rational(mfact);
}

namespace {

struct BlockPowers {
  std::vector<Eigen::MatrixXd> blocks;  // blocks[l-1] = leading block of B^l
};

BlockPowers block_powers(const HessenbergMatrix& b, int n, int lmax) {
  BlockPowers out;
  HessenbergMatrix p = b;
  for (int l = 1; l <= lmax; ++l) {
    if (l > 1) p = multiply(p, b);
    if (!p.finite_dim() && p.rows() < n)
      throw WindowExhaustedError("cumulant window exhausted; build more rows");
    out.blocks.push_back(p.leading_block(n));
  }
  return out;
}

ValueWithScale cumulant_impl(const HessenbergMatrix& b, int n, int m) {
  if (n < 0) throw Error("cumulant needs n >= 0");
  if (m < 1) throw Error("cumulant order must be positive");
  if (n == 0) return {0.0, 0.0};
  BlockPowers pw = block_powers(b, n, m);
  const auto& comps = compositions_of(m);
  std::vector<double> terms(comps.size());
  parallel_for(static_cast<int>(comps.size()), [&](int ci) {
    const Composition& comp = comps[ci];
    Eigen::MatrixXd prod = pw.blocks[comp.parts[0] - 1];
    for (size_t i = 1; i < comp.parts.size(); ++i) prod = prod * pw.blocks[comp.parts[i] - 1];
    terms[ci] = to_double(comp.prefactor) * prod.trace();
  });
  ValueWithScale out;
  for (double t : terms) {  // fixed composition order keeps runs reproducible
    out.value += t;
    out.scale += std::abs(t);
  }
  return out;
}

}  // namespace

double cumulant(const HessenbergMatrix& b, int n, int m) { return cumulant_impl(b, n, m).value; }

ValueWithScale cumulant_with_scale(const HessenbergMatrix& b, int n, int m) {
  return cumulant_impl(b, n, m);
}

std::string CumulantReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["matrix_id"] = matrix_id;
  j["f"] = f;
  nlohmann::json vals;
  for (const auto& [m, v] : values) vals[std::to_string(m)] = v;
  j["values"] = vals;
  j["metadata"] = metadata;
  return j.dump();
}

CumulantReport linear_statistic_cumulants(const FamilySpec& spec, const LatticePath& path,
                                          const Polynomial& f, int n, int m_max) {
  if (m_max < 1) throw Error("m_max must be positive");
  const int d = std::max(f.degree(), 1);
  HessenbergMatrix j;
  if (spec.family == FamilyId::Krawtchouk && !spec.scaled) {
    j = build_J_finite(spec, path);
    if (n > *j.finite_dim())
      throw ParameterDomainError("more particles than the finite support carries");
  } else {
    j = build_J(spec, path, n + m_max * d + 2);
  }
  HessenbergMatrix fj = polynomial_apply(j, f.coeffs);
  CumulantReport report;
  report.n = n;
  report.matrix_id = "f(J)";
  report.f = f.coeffs;
  report.metadata["family"] = family_name(spec.family);
  report.metadata["n_scale"] = std::to_string(spec.n_scale);
  for (int m = 1; m <= m_max; ++m) report.values[m] = cumulant(fj, n, m);
  return report;
}

double mgf_determinant(const HessenbergMatrix& b, const Polynomial& f, double lambda, int n,
                       int r) {
  if (r < 0) throw Error("exponential order must be non-negative");
  HessenbergMatrix fb = polynomial_apply(b, f.coeffs);
  HessenbergMatrix e = exp_trunc(fb, lambda, r);
  if (!e.finite_dim() && e.rows() < n)
    throw WindowExhaustedError("mgf window exhausted; build more rows");
  Eigen::MatrixXd block = e.leading_block(n);
  return Eigen::PartialPivLU<Eigen::MatrixXd>(block).determinant();
}

double cumulant_difference_windowed(const HessenbergMatrix& b1, const HessenbergMatrix& b2, int n,
                                    int m) {
  if (m < 2) throw Error("windowed differences need m >= 2");
  const int band = std::max({b1.band(), b2.band(), 1});
  const int w = 2 * m * m * band;
  const int base = std::max(0, n - w);
  const int top = n + w;
  const int local_n = n - base;
  const int size = top - base;

  auto local = [&](const HessenbergMatrix& b) {
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) l(i, j) = b.at(base + i, base + j);
    return l;
  };

  // m! sum_{j>=2} (-1)^{j+1}/j sum_comps [Tr P L^{l_1} P ... L^{l_j} P
  //                                        - Tr P L^m P] / (l_1!...l_j!)
  // equals C_m^{(n)} by the vanishing of the partition sum; every bracket is
  // supported on the window.
  auto windowed = [&](const Eigen::MatrixXd& l) {
    std::vector<Eigen::MatrixXd> pow(m);
    pow[0] = l;
    for (int k = 1; k < m; ++k) pow[k] = pow[k - 1] * l;
    std::vector<Eigen::MatrixXd> proj(m);
    for (int k = 0; k < m; ++k) {
      proj[k] = pow[k];
      proj[k].block(local_n, 0, size - local_n, size).setZero();
      proj[k].block(0, local_n, size, size - local_n).setZero();
    }
    const double full = proj[m - 1].trace();
    double acc = 0.0;
    for (const Composition& comp : compositions_of(m)) {
      if (comp.parts.size() < 2) continue;
      Eigen::MatrixXd prod = proj[comp.parts[0] - 1];
      for (size_t i = 1; i < comp.parts.size(); ++i) prod = prod * proj[comp.parts[i] - 1];
      acc += to_double(comp.prefactor) * (prod.trace() - full);
    }
    return acc;
  };

  return windowed(local(b1)) - windowed(local(b2));
}

std::vector<std::vector<std::pair<int, int>>> bch_compositions(int m) {
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<std::pair<int, int>> cur;
  std::function<void(int)> rec = [&](int remaining) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int w = 1; w <= remaining; ++w)
      for (int u = 0; u <= w; ++u) {
        cur.emplace_back(u, w - u);
        rec(remaining - w);
        cur.pop_back();
      }
  };
  rec(m);
  return out;
}

BchTraceResult bch_commutator_trace(const SplitPair& b, int n,
                                    const std::vector<std::pair<int, int>>& composition) {
  int total = 0;
  for (auto [u, v] : composition) {
    if (u < 0 || v < 0 || u + v < 1) throw Error("bad bch composition block");
    total += u + v;
  }
  if (total < 1) throw Error("empty bch composition");

  // hypothesis: [B_-, B_+] must have bounded column support
  HessenbergMatrix k = commutator(b.minus, b.plus);
  double kmax = 0.0;
  int max_col = -1;
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.row_cols(i); ++j) {
      kmax = std::max(kmax, std::abs(k.entry(i, j)));
      max_col = std::max(max_col, j);
    }
  int cols = last_nonzero_column(k, 1e-12 * std::max(kmax, 1e-300)) + 1;
  const int margin = std::max(b.plus.band(), 1) + 2;
  if (kmax > 0.0 && cols >= max_col + 1 - margin)
    throw HypothesisViolatedError(
        "[B-, B+] has non-trivial columns up to the window edge; split hypothesis unverified");

  std::vector<const HessenbergMatrix*> factors;
  for (auto [u, v] : composition) {
    for (int i = 0; i < u; ++i) factors.push_back(&b.minus);
    for (int i = 0; i < v; ++i) factors.push_back(&b.plus);
  }
  TraceWithScale t = nested_commutator_trace(factors, n);
  BchTraceResult out;
  out.value = t.value;
  out.scale = t.scale;
  out.commutator_columns = cols;
  return out;
}

}  // namespace mope
