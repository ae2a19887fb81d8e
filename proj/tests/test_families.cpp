#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mope/families.hpp"
#include "mope/lattice_path.hpp"
#include "mope/recurrence.hpp"

using namespace mope;

namespace {

FamilySpec hermite2(int n) {
  FamilySpec s;
  s.family = FamilyId::Hermite;
  s.m = 2;
  s.a = {1.0, -1.0};
  s.n_scale = n;
  return s;
}

FamilySpec charlier_unscaled(double lambda, long long t, std::vector<double> gamma) {
  FamilySpec s;
  s.family = FamilyId::Charlier;
  s.m = static_cast<int>(gamma.size());
  s.lambda = lambda;
  s.gamma = std::move(gamma);
  s.scaled = false;
  s.t = t;
  s.n_scale = 1;
  return s;
}

FamilySpec krawtchouk_unscaled(long long t, int n, std::vector<double> p) {
  FamilySpec s;
  s.family = FamilyId::Krawtchouk;
  s.m = static_cast<int>(p.size());
  s.p = std::move(p);
  s.scaled = false;
  s.t = t;
  s.n_scale = n;
  return s;
}

}  // namespace

TEST_CASE("hermite coefficients") {
  FamilySpec s = hermite2(10);
  NnCoeffs c = nn_coeffs(s, {2, 1});
  CHECK(c.a[0] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(c.a[1] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(c.b[0] == 1.0);
  CHECK(c.b[1] == -1.0);
}

TEST_CASE("charlier unscaled coefficients are exact") {
  FamilySpec s = charlier_unscaled(1.0, 2, {0.5, 1.0});
  NnCoeffs c = nn_coeffs(s, {1, 1});
  // binary-fraction parameters make these exact
  CHECK(c.a[0] == 1.0);
  CHECK(c.a[1] == 2.0);
  CHECK(c.b[0] == 3.0);
  CHECK(c.b[1] == 4.0);
}

TEST_CASE("laguerre2 coefficients") {
  FamilySpec s;
  s.family = FamilyId::LaguerreII;
  s.m = 2;
  s.alpha = 0.0;
  s.sigma = {1.0, 2.0};
  s.n_scale = 2;
  NnCoeffs c = nn_coeffs(s, {1, 1});
  CHECK(c.a[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.a[1] == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(c.b[0] == doctest::Approx(2.25).epsilon(1e-15));
}

TEST_CASE("krawtchouk unscaled coefficients are exact") {
  FamilySpec s = krawtchouk_unscaled(3, 2, {0.5, 0.25});
  NnCoeffs c = nn_coeffs(s, {1, 0});
  CHECK(c.a[0] == 1.0);   // 0.25 * 1 * (3+2-1)
  CHECK(c.b[0] == 2.0);   // (3+2-1-1)*0.5 + 1*0.5
}

TEST_CASE("lowering coefficients stay non-negative on valid ranges") {
  std::vector<FamilySpec> specs;
  specs.push_back(hermite2(7));
  specs.push_back(charlier_unscaled(1.5, 3, {0.25, 0.75}));
  specs.push_back(krawtchouk_unscaled(60, 3, {0.3, 0.6}));
  FamilySpec lag;
  lag.family = FamilyId::LaguerreII;
  lag.m = 2;
  lag.alpha = 0.5;
  lag.sigma = {0.7, 1.3};
  lag.n_scale = 5;
  specs.push_back(lag);
  for (const FamilySpec& s : specs) {
    for (int k1 = 0; k1 <= 50; ++k1)
      for (int k2 = 0; k1 + k2 <= 50; ++k2) {
        NnCoeffs c = nn_coeffs(s, {k1, k2});
        for (double a : c.a) CHECK(a >= 0.0);
      }
  }
}

TEST_CASE("nevai limits: hermite") {
  FamilySpec s = hermite2(10);
  RationalSymbol c = nevai_limits(s, {0.5, 0.5});
  CHECK(c.residues[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.residues[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.poles[0] == 1.0);
  CHECK(c.poles[1] == -1.0);
}

TEST_CASE("nevai limits: charlier scaled") {
  FamilySpec s;
  s.family = FamilyId::Charlier;
  s.m = 2;
  s.lambda = 1.0;
  s.tau = 1.0;
  s.gamma = {0.5, 1.0};
  s.scaled = true;
  s.n_scale = 100;
  RationalSymbol c = nevai_limits(s, {0.5, 0.5});
  CHECK(c.residues[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(c.residues[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.poles[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(c.poles[1] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("nevai limits: single-weight hermite reduces to z + 1/z") {
  FamilySpec s;
  s.family = FamilyId::Hermite;
  s.m = 1;
  s.a = {0.0};
  s.n_scale = 10;
  RationalSymbol c = nevai_limits(s, {1.0});
  CHECK(c.poles[0] == 0.0);
  CHECK(c.residues[0] == 1.0);
}

TEST_CASE("nevai limits match coefficients along a balanced path, 1/N rate") {
  std::vector<FamilySpec> specs;
  specs.push_back(hermite2(1));
  FamilySpec ch;
  ch.family = FamilyId::Charlier;
  ch.m = 2;
  ch.lambda = 1.0;
  ch.tau = 0.5;
  ch.gamma = {0.5, 1.0};
  ch.scaled = true;
  specs.push_back(ch);
  FamilySpec kw;
  kw.family = FamilyId::Krawtchouk;
  kw.m = 2;
  kw.p = {0.25, 0.5};
  kw.tau = 2.0;
  kw.scaled = true;
  specs.push_back(kw);
  FamilySpec lag;
  lag.family = FamilyId::LaguerreII;
  lag.m = 2;
  lag.alpha = 0.5;
  lag.sigma = {1.0, 2.0};
  specs.push_back(lag);

  const std::vector<double> nu{0.5, 0.5};
  for (FamilySpec s : specs) {
    RationalSymbol limit = nevai_limits(s, nu);
    for (int N : {1000, 10000, 100000}) {
      s.n_scale = N;
      MultiIndex k{static_cast<int>(std::lround(N * nu[0])),
                   static_cast<int>(std::lround(N * nu[1]))};
      NnCoeffs c = nn_coeffs(s, k);
      for (int j = 0; j < 2; ++j) {
        CHECK(std::abs(c.a[j] - limit.residues[j]) <= 10.0 * 2 / static_cast<double>(N));
        CHECK(std::abs(c.b[j] - limit.poles[j]) <= 10.0 * 2 / static_cast<double>(N));
      }
    }
  }
}

TEST_CASE("confluent limiting poles are rejected") {
  FamilySpec s = hermite2(5);
  s.a = {1.0, 1.0 + 1e-14};  // passes distinctness but collapses in the limit
  CHECK_THROWS_AS(nevai_limits(s, {0.5, 0.5}), ConfluenceError);
}

TEST_CASE("weights") {
  FamilySpec ch = charlier_unscaled(1.0, 2, {0.5, 1.0});
  CHECK(weight_eval(ch, 1, 3.0) == 0.125);
  CHECK_THROWS_AS(weight_eval(ch, 1, -1.0), ParameterDomainError);

  FamilySpec kw = krawtchouk_unscaled(3, 2, {0.5, 0.25});
  BaseMeasure mu = base_measure(kw);
  REQUIRE(mu.discrete.has_value());
  CHECK(mu.discrete->masses[0] == doctest::Approx(1.0 / 24.0).epsilon(1e-14));

  // weights stay non-negative on their supports
  for (int x = 0; x <= 4; ++x) {
    CHECK(weight_eval(kw, 1, x) >= 0.0);
    CHECK(weight_eval(kw, 2, x) >= 0.0);
  }
  FamilySpec h = hermite2(3);
  for (double x : {-2.0, 0.0, 1.5}) {
    CHECK(weight_eval(h, 1, x) >= 0.0);
    CHECK(weight_eval(h, 2, x) >= 0.0);
  }
}

TEST_CASE("gamma/p conversion round-trips") {
  double rho = 1.0;
  for (double p : {0.25, 0.5, 0.9}) {
    double g = krawtchouk_p_to_gamma(p, rho);
    CHECK(krawtchouk_gamma_to_p(g, rho) == doctest::Approx(p).epsilon(1e-14));
  }
}

TEST_CASE("family JSON round-trip") {
  FamilySpec s = hermite2(100);
  FamilySpec back = FamilySpec::from_json(s.to_json());
  CHECK(back.family == FamilyId::Hermite);
  CHECK(back.m == 2);
  CHECK(back.n_scale == 100);
  CHECK(back.a == std::vector<double>{1.0, -1.0});

  CHECK_THROWS_AS(FamilySpec::from_json("{not json"), ConfigError);
  CHECK_THROWS_AS(FamilySpec::from_json(R"({"family":"hermite","m":2})"), ConfigError);

  FamilySpec kw = krawtchouk_unscaled(2, 2, {0.25, 0.5});
  FamilySpec kb = FamilySpec::from_json(kw.to_json());
  CHECK(kb.scaled == false);
  CHECK(kb.t == 2);
}

TEST_CASE("invalid parameters are rejected") {
  FamilySpec s = hermite2(10);
  s.a = {1.0, 1.0};
  CHECK_THROWS_AS(nn_coeffs(s, {1, 1}), ParameterDomainError);
  FamilySpec ch = charlier_unscaled(1.0, 2, {0.5, 1.5});
  CHECK_THROWS_AS(nn_coeffs(ch, {1, 1}), ParameterDomainError);
  FamilySpec kw = krawtchouk_unscaled(3, 2, {0.5, 0.25});
  CHECK_THROWS_AS(nn_coeffs(kw, {1}), ParameterDomainError);
}
