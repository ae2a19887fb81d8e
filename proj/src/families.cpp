#include "mope/families.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mope/recurrence.hpp"

namespace mope {

using nlohmann::json;

std::string family_name(FamilyId id) {
  switch (id) {
    case FamilyId::Hermite: return "hermite";
    case FamilyId::LaguerreII: return "laguerre2";
    case FamilyId::Charlier: return "charlier";
    case FamilyId::Krawtchouk: return "krawtchouk";
  }
  return "?";
}

FamilyId family_from_name(const std::string& name) {
  if (name == "hermite") return FamilyId::Hermite;
  if (name == "laguerre2") return FamilyId::LaguerreII;
  if (name == "charlier") return FamilyId::Charlier;
  if (name == "krawtchouk") return FamilyId::Krawtchouk;
  throw ParameterDomainError("unknown family: " + name);
}

int multi_index_sum(const MultiIndex& k) {
  int s = 0;
  for (int v : k) s += v;
  return s;
}

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw ParameterDomainError(msg);
}

void require_distinct(const std::vector<double>& v, const std::string& what) {
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      require(v[i] != v[j], what + " must be pairwise distinct");
}

void check_index(const FamilySpec& spec, const MultiIndex& k) {
  require(static_cast<int>(k.size()) == spec.m, "multi-index length does not match m");
  for (int v : k) require(v >= 0, "multi-index entries must be non-negative");
}

}  // namespace

void FamilySpec::validate() const {
  require(m >= 1, "m must be at least 1");
  require(n_scale >= 1, "n_scale must be at least 1");
  switch (family) {
    case FamilyId::Hermite:
      require(static_cast<int>(a.size()) == m, "hermite needs m source values");
      require_distinct(a, "hermite source values");
      break;
    case FamilyId::LaguerreII:
      require(static_cast<int>(sigma.size()) == m, "laguerre2 needs m sigma values");
      for (double s : sigma) require(s > 0, "laguerre2 sigma must be positive");
      require_distinct(sigma, "laguerre2 sigma values");
      require(alpha >= 0, "laguerre2 alpha must be non-negative");
      if (alpha_hat) require(*alpha_hat >= 0, "laguerre2 alpha_hat must be non-negative");
      break;
    case FamilyId::Charlier:
      require(static_cast<int>(gamma.size()) == m, "charlier needs m gamma values");
      for (double g : gamma) require(g > 0 && g <= 1, "charlier gamma must lie in (0,1]");
      require_distinct(gamma, "charlier gamma values");
      require(lambda > 0, "charlier lambda must be positive");
      if (scaled)
        require(tau > 0, "charlier scaled mode needs tau > 0");
      else
        require(t >= 1, "charlier unscaled mode needs integer t >= 1");
      break;
    case FamilyId::Krawtchouk:
      require(static_cast<int>(p.size()) == m, "krawtchouk needs m probabilities");
      for (double q : p) require(q > 0 && q < 1, "krawtchouk p must lie in (0,1)");
      require_distinct(p, "krawtchouk probabilities");
      if (scaled)
        require(tau > 0, "krawtchouk scaled mode needs tau > 0");
      else
        require(t >= 1, "krawtchouk unscaled mode needs integer t >= 1");
      break;
  }
}

double FamilySpec::effective_alpha() const {
  if (alpha_hat) return *alpha_hat * n_scale;
  return alpha;
}

long long FamilySpec::effective_t() const {
  if (!scaled) return t;
  if (family == FamilyId::Krawtchouk)
    return static_cast<long long>(std::floor(tau * n_scale));
  return static_cast<long long>(std::llround(tau * n_scale));
}

NnCoeffs nn_coeffs(const FamilySpec& spec, const MultiIndex& k) {
  spec.validate();
  check_index(spec, k);
  const int m = spec.m;
  const double n = static_cast<double>(spec.n_scale);
  const int total = multi_index_sum(k);
  NnCoeffs out;
  out.a.resize(m);
  out.b.resize(m);
  switch (spec.family) {
    case FamilyId::Hermite:
      for (int j = 0; j < m; ++j) {
        out.a[j] = k[j] / n;
        out.b[j] = spec.a[j];
      }
      break;
    case FamilyId::LaguerreII: {
      const double al = spec.effective_alpha();
      double cross = 0.0;
      for (int r = 0; r < m; ++r) cross += k[r] / (n * spec.sigma[r]);
      for (int j = 0; j < m; ++j) {
        out.a[j] = k[j] * (total + al) / (n * n * spec.sigma[j] * spec.sigma[j]);
        out.b[j] = (total + al + 1) / (n * spec.sigma[j]) + cross;
      }
      break;
    }
    case FamilyId::Charlier: {
      // raw: a = k_j*lambda*t*gamma_j, b = lambda*t*gamma_l + |k|
      if (!spec.scaled) {
        const double lt = spec.lambda * static_cast<double>(spec.t);
        for (int j = 0; j < m; ++j) {
          out.a[j] = k[j] * lt * spec.gamma[j];
          out.b[j] = lt * spec.gamma[j] + total;
        }
      } else {
        const double ltau = spec.lambda * spec.tau;
        for (int j = 0; j < m; ++j) {
          out.a[j] = k[j] * ltau * spec.gamma[j] / n;
          out.b[j] = ltau * spec.gamma[j] + total / n;
        }
      }
      break;
    }
    case FamilyId::Krawtchouk: {
      const double tt = static_cast<double>(spec.effective_t());
      const double np = static_cast<double>(spec.n_scale);
      double cross = 0.0;
      for (int l = 0; l < m; ++l) cross += k[l] * (1.0 - spec.p[l]);
      for (int j = 0; j < m; ++j) {
        double araw = spec.p[j] * (1.0 - spec.p[j]) * k[j] * (tt + np - total);
        double braw = (tt + np - 1 - total) * spec.p[j] + cross;
        if (!spec.scaled) {
          out.a[j] = araw;
          out.b[j] = braw;
        } else {
          out.a[j] = araw / (n * n);
          out.b[j] = braw / n;
        }
      }
      break;
    }
  }
  return out;
}

RationalSymbol nevai_limits(const FamilySpec& spec, const std::vector<double>& nu) {
  spec.validate();
  require(static_cast<int>(nu.size()) == spec.m, "nu length does not match m");
  double s = 0.0;
  for (double v : nu) {
    require(v >= 0, "nu entries must be non-negative");
    s += v;
  }
  require(std::abs(s - 1.0) <= 1e-12, "nu must sum to 1");

  const int m = spec.m;
  std::vector<double> res(m), poles(m);
  switch (spec.family) {
    case FamilyId::Hermite:
      for (int j = 0; j < m; ++j) {
        res[j] = nu[j];
        poles[j] = spec.a[j];
      }
      break;
    case FamilyId::LaguerreII: {
      // alpha fixed contributes nothing in the limit; alpha_hat shifts it.
      const double ah = spec.alpha_hat ? *spec.alpha_hat : 0.0;
      double cross = 0.0;
      for (int r = 0; r < m; ++r) cross += nu[r] / spec.sigma[r];
      for (int j = 0; j < m; ++j) {
        res[j] = nu[j] * (1.0 + ah) / (spec.sigma[j] * spec.sigma[j]);
        poles[j] = (1.0 + ah) / spec.sigma[j] + cross;
      }
      break;
    }
    case FamilyId::Charlier: {
      require(spec.scaled, "nevai limits need the scaled charlier regime");
      const double ltau = spec.lambda * spec.tau;
      for (int j = 0; j < m; ++j) {
        res[j] = nu[j] * ltau * spec.gamma[j];
        poles[j] = ltau * spec.gamma[j] + 1.0;
      }
      break;
    }
    case FamilyId::Krawtchouk: {
      require(spec.scaled, "nevai limits need the scaled krawtchouk regime");
      double cross = 0.0;
      for (int l = 0; l < m; ++l) cross += nu[l] * (1.0 - spec.p[l]);
      for (int j = 0; j < m; ++j) {
        res[j] = spec.p[j] * (1.0 - spec.p[j]) * nu[j] * spec.tau;
        poles[j] = spec.tau * spec.p[j] + cross;
      }
      break;
    }
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::abs(poles[i] - poles[j]) <= 1e-12 * std::max(1.0, std::abs(poles[i])))
        throw ConfluenceError("limiting poles coincide; confluent symbols are unsupported");
  RationalSymbol c;
  c.poles = poles;
  c.residues = res;
  return c;
}

double weight_eval(const FamilySpec& spec, int j, double x) {
  spec.validate();
  require(j >= 1 && j <= spec.m, "weight index out of range");
  const double n = static_cast<double>(spec.n_scale);
  switch (spec.family) {
    case FamilyId::Hermite:
      return std::exp(-n * (0.5 * x * x - spec.a[j - 1] * x));
    case FamilyId::LaguerreII:
      if (x < 0) throw ParameterDomainError("laguerre2 weight needs x >= 0");
      return std::pow(x, spec.effective_alpha()) * std::exp(-n * spec.sigma[j - 1] * x);
    case FamilyId::Charlier: {
      if (x < 0 || x != std::floor(x))
        throw ParameterDomainError("charlier weight needs integer x >= 0");
      return std::pow(spec.gamma[j - 1], x);
    }
    case FamilyId::Krawtchouk: {
      long long N = spec.effective_t() + spec.n_scale - 1;
      if (x < 0 || x > static_cast<double>(N) || x != std::floor(x))
        throw ParameterDomainError("krawtchouk weight needs integer x in [0, t+n-1]");
      double ratio = spec.p[j - 1] / (1.0 - spec.p[j - 1]);
      return std::pow(ratio, x);
    }
  }
  return 0.0;
}

BaseMeasure base_measure(const FamilySpec& spec) {
  spec.validate();
  BaseMeasure out;
  switch (spec.family) {
    case FamilyId::Hermite: {
      ContinuousDensity d;
      d.lo = -std::numeric_limits<double>::infinity();
      d.hi = std::numeric_limits<double>::infinity();
      d.description = "lebesgue";
      out.continuous = d;
      break;
    }
    case FamilyId::LaguerreII: {
      ContinuousDensity d;
      d.lo = 0.0;
      d.hi = std::numeric_limits<double>::infinity();
      d.description = "lebesgue on (0,inf)";
      out.continuous = d;
      break;
    }
    case FamilyId::Charlier: {
      // Poisson masses (lambda*t)^x / x!, truncated once the remaining tail
      // is below 1e-16 of the retained mass.
      const double lt = spec.lambda * (spec.scaled ? spec.tau * spec.n_scale
                                                   : static_cast<double>(spec.t));
      DiscreteMeasure d;
      double mass = 1.0, total = 0.0;
      int x = 0;
      while (true) {
        d.support.push_back(x);
        d.masses.push_back(mass);
        total += mass;
        double next = mass * lt / (x + 1);
        // geometric-style bound on the remaining tail once lt/(x+2) < 1/2
        if (x + 2 > 2 * lt && next / (1.0 - lt / (x + 2)) < 1e-16 * total) break;
        mass = next;
        ++x;
        if (x > 100000) break;
      }
      out.discrete = d;
      break;
    }
    case FamilyId::Krawtchouk: {
      // masses rho^x / (x! (t+n-1-x)!) with walk odds rho fixed to 1.
      long long N = spec.effective_t() + spec.n_scale - 1;
      DiscreteMeasure d;
      for (long long x = 0; x <= N; ++x) {
        double lg = -std::lgamma(static_cast<double>(x + 1)) -
                    std::lgamma(static_cast<double>(N - x + 1));
        d.support.push_back(static_cast<double>(x));
        d.masses.push_back(std::exp(lg));
      }
      out.discrete = d;
      break;
    }
  }
  return out;
}

double krawtchouk_gamma_to_p(double gamma, double rho) {
  require(gamma > 0 && rho > 0, "gamma and rho must be positive");
  double odds = gamma * rho;
  return odds / (1.0 + odds);
}

double krawtchouk_p_to_gamma(double p, double rho) {
  require(p > 0 && p < 1 && rho > 0, "p must lie in (0,1) and rho must be positive");
  return p / ((1.0 - p) * rho);
}

std::string FamilySpec::to_json() const {
  json j;
  j["family"] = family_name(family);
  j["m"] = m;
  j["n_scale"] = n_scale;
  json params;
  switch (family) {
    case FamilyId::Hermite:
      params["a"] = a;
      break;
    case FamilyId::LaguerreII:
      params["alpha"] = alpha;
      params["sigma"] = sigma;
      if (alpha_hat) params["alpha_hat"] = *alpha_hat;
      break;
    case FamilyId::Charlier:
      params["lambda"] = lambda;
      params["gamma"] = gamma;
      if (scaled)
        params["tau"] = tau;
      else
        params["t"] = t;
      break;
    case FamilyId::Krawtchouk:
      params["p"] = p;
      if (scaled)
        params["tau"] = tau;
      else
        params["t"] = t;
      break;
  }
  j["params"] = params;
  return j.dump();
}

FamilySpec FamilySpec::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid family JSON: ") + e.what());
  }
  FamilySpec spec;
  try {
    spec.family = family_from_name(j.at("family").get<std::string>());
    spec.m = j.at("m").get<int>();
    spec.n_scale = j.at("n_scale").get<int>();
    const json& params = j.at("params");
    switch (spec.family) {
      case FamilyId::Hermite:
        spec.a = params.at("a").get<std::vector<double>>();
        break;
      case FamilyId::LaguerreII:
        spec.alpha = params.value("alpha", 0.0);
        spec.sigma = params.at("sigma").get<std::vector<double>>();
        if (params.contains("alpha_hat")) spec.alpha_hat = params["alpha_hat"].get<double>();
        break;
      case FamilyId::Charlier:
        spec.lambda = params.at("lambda").get<double>();
        spec.gamma = params.at("gamma").get<std::vector<double>>();
        if (params.contains("tau")) {
          spec.scaled = true;
          spec.tau = params["tau"].get<double>();
        } else {
          spec.scaled = false;
          spec.t = params.at("t").get<long long>();
        }
        break;
      case FamilyId::Krawtchouk:
        spec.p = params.at("p").get<std::vector<double>>();
        if (params.contains("tau")) {
          spec.scaled = true;
          spec.tau = params["tau"].get<double>();
        } else {
          spec.scaled = false;
          spec.t = params.at("t").get<long long>();
        }
        break;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("family JSON missing field: ") + e.what());
  }
  spec.validate();
  return spec;
}

}  // namespace mope
