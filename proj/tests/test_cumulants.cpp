#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mope/cumulants.hpp"
#include "mope/recurrence.hpp"

using namespace mope;

namespace {

RationalSymbol hermite_sym() {
  RationalSymbol c;
  c.poles = {1.0, -1.0};
  c.residues = {0.5, 0.5};
  return c;
}

FamilySpec hermite2(int n) {
  FamilySpec s;
  s.family = FamilyId::Hermite;
  s.m = 2;
  s.a = {1.0, -1.0};
  s.n_scale = n;
  return s;
}

}  // namespace

TEST_CASE("composition prefactors") {
  const auto& c2 = compositions_of(2);
  REQUIRE(c2.size() == 2);
  // (1,1): 2!*(-1)/(2*1*1) = -1; (2): 2!*(+1)/(1*2!) = 1
  CHECK(c2[0].parts == std::vector<int>{1, 1});
  CHECK(c2[0].prefactor == Rational(-1));
  CHECK(c2[1].parts == std::vector<int>{2});
  CHECK(c2[1].prefactor == Rational(1));
  CHECK(compositions_of(6).size() == 32);
}

TEST_CASE("first cumulant is the projected trace") {
  HessenbergMatrix b(8, 1);
  for (int i = 0; i < 8; ++i) {
    b.entry(i, i) = 1.0 + i;
    b.entry(i, i + 1) = 0.5;
    if (i) b.entry(i, i - 1) = -0.25;
  }
  CHECK(cumulant(b, 5, 1) == doctest::Approx(1 + 2 + 3 + 4 + 5).epsilon(1e-14));
}

TEST_CASE("second cumulant is the boundary-crossing trace") {
  HessenbergMatrix b(12, 1);
  for (int i = 0; i < 12; ++i) {
    b.entry(i, i) = 0.3;
    b.entry(i, i + 1) = 1.0;
    if (i) b.entry(i, i - 1) = 0.8;
  }
  const int n = 6;
  // Tr P B^2 P - Tr (P B P)^2 = Tr P B Q B P
  double direct = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = n; k <= i + 1; ++k) direct += b.at(i, k) * b.at(k, i);
  CHECK(cumulant(b, n, 2) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("toeplitz second cumulant equals the min(j,n) sum") {
  const double a = 0.45;
  RationalSymbol c;
  c.poles = {0.0};
  c.residues = {a};
  LaurentWindow w = compose_laurent(Polynomial({0.0, 1.0}), c, 16);
  HessenbergMatrix t = toeplitz_matrix(w, 12);
  CHECK(cumulant(t, 3, 2) == doctest::Approx(a).epsilon(1e-12));
  for (int n : {1, 2, 5, 9})
    CHECK(cumulant(t, n, 2) == doctest::Approx(finite_n_variance(w, n)).epsilon(1e-12));
}

TEST_CASE("toeplitz second cumulant matches finite_n_variance for composed symbols") {
  RationalSymbol c = hermite_sym();
  for (int d : {1, 2, 3}) {
    std::vector<double> fc(d + 1, 0.0);
    fc[d] = 1.0;
    Polynomial f{fc};
    LaurentWindow w = compose_laurent(f, c, 240);
    HessenbergMatrix t = toeplitz_matrix(w, 220);
    for (int n : {5, 50, 200}) {
      double lhs = cumulant(t, n, 2);
      double rhs = finite_n_variance(w, n);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("second cumulants agree between the path basis and the canonical basis") {
  RationalSymbol c = hermite_sym();
  LatticePath p = step_line(2, 120);
  for (int d : {1, 2, 3}) {
    std::vector<double> fc(d + 1, 0.0);
    fc[d] = 1.0;
    Polynomial f{fc};
    LaurentWindow w = compose_laurent(f, c, 100);
    for (int n : {20, 60}) {
      HessenbergMatrix tpath = composed_toeplitz_block(f, c, p, n + 4 * d + 2);
      HessenbergMatrix tcan = toeplitz_matrix(w, n + 4 * d + 2);
      double lhs = cumulant(tpath, n, 2);
      double rhs = cumulant(tcan, n, 2);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("higher cumulants of the composed block vanish against their scale") {
  RationalSymbol c = hermite_sym();
  LatticePath p = step_line(2, 100);
  Polynomial f({0.0, 0.0, 1.0});
  HessenbergMatrix t = composed_toeplitz_block(f, c, p, 80);
  for (int n : {20, 60})
    for (int m : {3, 4}) {
      ValueWithScale v = cumulant_with_scale(t, n, m);
      CHECK(std::abs(v.value) <= 1e-9 * std::max(v.scale, 1e-300));
    }
}

TEST_CASE("mgf determinant basics") {
  FamilySpec s = hermite2(20);
  LatticePath p = step_line(2, 60);
  HessenbergMatrix j = build_J(s, p, 56);
  Polynomial f({0.0, 0.0, 1.0});
  CHECK(mgf_determinant(j, f, 0.0, 20, 4) == 1.0);
}

TEST_CASE("cumulants from the log determinant match the trace formula") {
  const int n = 50;
  FamilySpec s = hermite2(n);
  LatticePath p = step_line(2, n + 30);
  HessenbergMatrix j = build_J(s, p, n + 26);
  Polynomial f({0.0, 0.0, 1.0});
  const double h = 1e-3;
  auto g = [&](double lam) { return std::log(mgf_determinant(j, f, lam, n, 5)); };
  double g1 = (-g(2 * h) + 8 * g(h) - 8 * g(-h) + g(-2 * h)) / (12 * h);
  double g2 = (-g(2 * h) + 16 * g(h) - 30 * g(0) + 16 * g(-h) - g(-2 * h)) / (12 * h * h);
  double g3 = (g(2 * h) - 2 * g(h) + 2 * g(-h) - g(-2 * h)) / (2 * h * h * h);
  CumulantReport r = linear_statistic_cumulants(s, p, f, n, 3);
  CHECK(std::abs(g1 - r.values[1]) <= 1e-5 * std::abs(r.values[1]));
  CHECK(std::abs(g2 - r.values[2]) <= 1e-5 * std::abs(r.values[2]));
  CHECK(std::abs(g3 - r.values[3]) <= 1e-5 * std::abs(r.values[3]));
}

TEST_CASE("windowed differences") {
  const int n = 100;
  FamilySpec s = hermite2(n);
  LatticePath p = step_line(2, n + 40);
  HessenbergMatrix j = build_J(s, p, n + 36);
  HessenbergMatrix t = build_Tc(hermite_sym(), p, n + 36);

  SUBCASE("identical matrices give exactly zero") {
    CHECK(cumulant_difference_windowed(j, j, n, 2) == 0.0);
    CHECK(cumulant_difference_windowed(j, j, n, 3) == 0.0);
  }
  SUBCASE("early-row perturbations are invisible") {
    HessenbergMatrix jj = j;
    for (int i = 0; i < 10; ++i)
      for (int q = 0; q < jj.row_cols(i); ++q) jj.entry(i, q) += 3.0;
    CHECK(cumulant_difference_windowed(j, jj, n, 2) == 0.0);
  }
  SUBCASE("windowed equals full") {
    for (int m : {2, 3}) {
      double full = cumulant(j, n, m) - cumulant(t, n, m);
      double win = cumulant_difference_windowed(j, t, n, m);
      CHECK(std::abs(full - win) <= 1e-9 * std::max(1.0, std::abs(full)));
    }
  }
  SUBCASE("m=1 is rejected") {
    CHECK_THROWS_AS(cumulant_difference_windowed(j, t, n, 1), Error);
  }
}

TEST_CASE("cumulant report serializes") {
  FamilySpec s = hermite2(30);
  LatticePath p = step_line(2, 44);
  CumulantReport r = linear_statistic_cumulants(s, p, Polynomial({0.0, 1.0}), 30, 2);
  // C1 of the identity statistic is the diagonal sum of J
  HessenbergMatrix j = build_J(s, p, 31);
  double diag = 0.0;
  for (int i = 0; i < 30; ++i) diag += j.at(i, i);
  CHECK(r.values[1] == doctest::Approx(diag).epsilon(1e-13));
  CHECK(r.to_json().find("\"matrix_id\":\"f(J)\"") != std::string::npos);
}

TEST_CASE("bch traces") {
  RationalSymbol c = hermite_sym();
  Polynomial f({0.0, 0.0, 1.0});
  LaurentWindow w = compose_laurent(f, c, 80);
  HessenbergMatrix t = toeplitz_matrix(w, 70);
  SplitPair sp = split(t, f.degree());
  const int n = 40;

  SUBCASE("weight >= 3 brackets vanish against their scale") {
    for (int m : {3, 4})
      for (const auto& comp : bch_compositions(m)) {
        BchTraceResult r = bch_commutator_trace(sp, n, comp);
        CHECK(std::abs(r.value) <= 1e-10 * std::max(r.scale, 1e-300));
      }
  }
  SUBCASE("weight-2 bracket equals minus the second cumulant") {
    BchTraceResult r = bch_commutator_trace(sp, n, {{1, 1}});
    double c2 = cumulant(t, n, 2);
    CHECK(r.value == doctest::Approx(-c2).epsilon(1e-11));
  }
  SUBCASE("trailing plus-powers above one give structural zeros") {
    BchTraceResult r = bch_commutator_trace(sp, n, {{0, 2}});
    CHECK(r.value == 0.0);
  }
  SUBCASE("commutator column support is deg r_+") {
    BchTraceResult r = bch_commutator_trace(sp, n, {{1, 1}});
    CHECK(r.commutator_columns <= f.degree());
  }
  SUBCASE("(2,1) bracket on a squared one-pole symbol") {
    RationalSymbol c1;
    c1.poles = {0.0};
    c1.residues = {0.8};
    LaurentWindow w1 = compose_laurent(f, c1, 40);
    SplitPair sp1 = split(toeplitz_matrix(w1, 40), 2);
    BchTraceResult r = bch_commutator_trace(sp1, 20, {{2, 1}});
    CHECK(std::abs(r.value) <= 1e-10);
  }
  SUBCASE("unbounded commutator columns are rejected") {
    // a lower-triangular part with growing, non-toeplitz entries makes
    // [B-, B+] carry non-trivial columns across the whole window
    HessenbergMatrix bad(40, 1);
    for (int i = 0; i < 40; ++i) {
      bad.entry(i, i + 1) = 1.0;
      if (i) bad.entry(i, i - 1) = std::sqrt(1.0 + i);
    }
    SplitPair sb = split(bad, 1);
    CHECK_THROWS_AS(bch_commutator_trace(sb, 20, {{1, 1}}), HypothesisViolatedError);
  }
}

TEST_CASE("clt sweep for the external-source model") {
  Polynomial f({0.0, 0.0, 1.0});
  RationalSymbol c = hermite_sym();
  LaurentWindow w = compose_laurent(f, c, 12);
  const double sigma2 = limiting_variance(w);
  CHECK(sigma2 == doctest::Approx(6.0).epsilon(1e-12));
  std::vector<double> c3s, c4s;
  for (int n : {50, 100, 200}) {
    FamilySpec s = hermite2(n);
    LatticePath p = step_line(2, n + 12);
    CumulantReport r = linear_statistic_cumulants(s, p, f, n, 4);
    // the balanced external-source model carries the limit variance exactly
    CHECK(std::abs(r.values[2] - sigma2) <= 1e-10);
    c3s.push_back(std::abs(r.values[3]));
    c4s.push_back(std::abs(r.values[4]));
  }
  CHECK(c3s[1] < c3s[0]);
  CHECK(c3s[2] < c3s[1]);
  CHECK(c4s[1] < c4s[0]);
  CHECK(c4s[2] < c4s[1]);
}
