#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mope/banded.hpp"
#include "mope/cumulants.hpp"

using namespace mope;

namespace {

// tridiagonal Toeplitz with sub, diag, super values
HessenbergMatrix tridiag(int rows, double sub, double diag, double super) {
  HessenbergMatrix m(rows, 1);
  for (int i = 0; i < rows; ++i) {
    if (i + 1 <= i + 1) m.entry(i, i + 1) = super;
    m.entry(i, i) = diag;
    if (i >= 1) m.entry(i, i - 1) = sub;
  }
  return m;
}

HessenbergMatrix shift_up(int rows) {  // ones on the first superdiagonal
  HessenbergMatrix m(rows, 1);
  for (int i = 0; i < rows; ++i) m.entry(i, i + 1) = 1.0;
  return m;
}

HessenbergMatrix random_dense_finite(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HessenbergMatrix m = HessenbergMatrix::finite(n, n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.entry(i, j) = u(gen);
  return m;
}

}  // namespace

TEST_CASE("identity multiplication preserves the exact window") {
  HessenbergMatrix b = tridiag(10, 2.0, -1.0, 1.0);
  HessenbergMatrix ib = multiply(HessenbergMatrix::identity(10), b);
  CHECK(ib.rows() == 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j <= i + 1; ++j) CHECK(ib.at(i, j) == b.at(i, j));
}

TEST_CASE("shift squared moves the band") {
  HessenbergMatrix n2 = power(shift_up(6), 2);
  CHECK(n2.band() == 2);
  for (int i = 0; i < n2.rows(); ++i) {
    CHECK(n2.at(i, i + 2) == 1.0);
    CHECK(n2.at(i, i + 1) == 0.0);
    CHECK(n2.at(i, i) == 0.0);
  }
}

TEST_CASE("tridiagonal square interior diagonal") {
  HessenbergMatrix t = tridiag(8, 1.0, 0.0, 1.0);
  HessenbergMatrix t2 = multiply(t, t);
  for (int i = 1; i < t2.rows(); ++i) CHECK(t2.at(i, i) == 2.0);
  CHECK(t2.at(0, 0) == 1.0);  // boundary row has only one neighbor
}

TEST_CASE("bandwidth bookkeeping: entries beyond the declared band vanish") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HessenbergMatrix a(14, 2), b(14, 1);
  for (int i = 0; i < 14; ++i) {
    for (int j = 0; j < a.row_cols(i); ++j) a.entry(i, j) = u(gen);
    for (int j = 0; j < b.row_cols(i); ++j) b.entry(i, j) = u(gen);
  }
  HessenbergMatrix ab = multiply(a, b);
  CHECK(ab.band() == 3);
  for (int i = 0; i < ab.rows(); ++i)
    for (int j = i + 4; j < i + 8; ++j) CHECK(ab.at(i, j) == 0.0);
}

TEST_CASE("window accounting fails loudly") {
  HessenbergMatrix b = tridiag(5, 1.0, 1.0, 1.0);
  HessenbergMatrix b2 = multiply(b, b);
  CHECK(b2.rows() == 4);  // one row of debt
  CHECK_THROWS_AS(b2.at(4, 0), WindowExhaustedError);
  CHECK_THROWS_AS((void)multiply(b2, power(b, 3)).at(2, 0), WindowExhaustedError);
}

TEST_CASE("exp_trunc basics") {
  HessenbergMatrix z(6, 0);
  HessenbergMatrix e = exp_trunc(z, 0.7, 3);
  for (int i = 0; i < e.rows(); ++i) CHECK(e.at(i, i) == 1.0);

  HessenbergMatrix b = tridiag(6, 0.5, 0.25, 1.0);
  HessenbergMatrix e0 = exp_trunc(b, 0.0, 4);
  for (int i = 0; i < e0.rows(); ++i)
    for (int j = 0; j < e0.row_cols(i); ++j) CHECK(e0.at(i, j) == (i == j ? 1.0 : 0.0));

  HessenbergMatrix n = shift_up(8);
  HessenbergMatrix en = exp_trunc(n, 1.0, 2);
  for (int i = 0; i < en.rows(); ++i) {
    CHECK(en.at(i, i) == 1.0);
    CHECK(en.at(i, i + 1) == 1.0);
    CHECK(en.at(i, i + 2) == 0.5);
  }
}

TEST_CASE("trace_product against a dense reference") {
  CHECK(trace_product(HessenbergMatrix::identity(9), 7, std::vector<int>{1}) == 7.0);

  // diagonal matrices: projections commute, so (1,1) and (2) agree
  HessenbergMatrix d(9, 0);
  for (int i = 0; i < 9; ++i) d.entry(i, i) = 0.3 * i - 1.0;
  std::vector<int> e11{1, 1}, e2{2};
  CHECK(trace_product(d, 5, e11) == doctest::Approx(trace_product(d, 5, e2)).epsilon(1e-14));

  HessenbergMatrix t = tridiag(20, 0.7, -0.2, 1.0);
  Eigen::MatrixXd dense = t.block(0, 20, 0, 20);
  Eigen::MatrixXd p3 = dense.block(0, 0, 3, 3);
  double ref = (p3 * p3).trace();
  CHECK(trace_product(t, 3, e11) == doctest::Approx(ref).epsilon(1e-13));

  // larger windows against the dense reference
  for (int n : {5, 12, 19}) {
    std::vector<int> comp{2, 1};
    Eigen::MatrixXd b2 = (dense * dense).block(0, 0, n, n);
    Eigen::MatrixXd b1 = dense.block(0, 0, n, n);
    double want = (b2 * b1).trace();
    // guard rows: only n + 3 rows of exactness are needed
    CHECK(trace_product(t, n, comp) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("split and commutator structure") {
  HessenbergMatrix t = tridiag(12, 0.4, 0.1, 1.0);
  SplitPair sp = split(t, 1);
  for (int i = 0; i < 12; ++i) {
    CHECK(sp.plus.at(i, i) == 0.1);
    CHECK(sp.plus.at(i, i + 1) == 1.0);
    if (i >= 1) {
      CHECK(sp.minus.at(i, i - 1) == 0.4);
      CHECK(sp.plus.at(i, i - 1) == 0.0);
    }
  }
  HessenbergMatrix sum = add(sp.minus, sp.plus);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < sum.row_cols(i); ++j) CHECK(sum.at(i, j) == t.at(i, j));

  HessenbergMatrix bb = commutator(t, t);
  for (int i = 0; i < bb.rows(); ++i)
    for (int j = 0; j < bb.row_cols(i); ++j) CHECK(bb.at(i, j) == 0.0);
}

TEST_CASE("dynkin powers expand to the nested bracket") {
  // [X1^(2), X2^(1)] = [X1, [X1, X2]] on random dense 4x4 matrices
  HessenbergMatrix x1 = random_dense_finite(4, 11), x2 = random_dense_finite(4, 22);
  HessenbergMatrix lhs = nested_commutator({&x1, &x1, &x2});
  Eigen::MatrixXd a = x1.block(0, 4, 0, 4), b = x2.block(0, 4, 0, 4);
  Eigen::MatrixXd inner = a * b - b * a;
  Eigen::MatrixXd ref = a * inner - inner * a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(lhs.at(i, j) == doctest::Approx(ref(i, j)).epsilon(1e-13));
}

TEST_CASE("toeplitz split commutator has finitely many columns") {
  // symbol parts of r = (z + a/z)^2: r_+ = z^2 + 2a, r_- = a^2/z^2
  const double a = 0.8;
  const int rows = 16;
  HessenbergMatrix rp(rows, 2), rm(rows, -2);
  for (int i = 0; i < rows; ++i) {
    rp.entry(i, i + 2) = 1.0;
    rp.entry(i, i) = 2 * a;
    if (i >= 2) rm.entry(i, i - 2) = a * a;
  }
  HessenbergMatrix k = commutator(rm, rp);
  // columns beyond deg r_+ - 1 vanish
  CHECK(last_nonzero_column(k, 1e-14) <= 1);
}

TEST_CASE("finite matrices close the algebra") {
  HessenbergMatrix f = random_dense_finite(5, 33);
  HessenbergMatrix f4 = power(f, 4);
  CHECK(f4.rows() == 5);  // no window debt
  Eigen::MatrixXd d = f.block(0, 5, 0, 5);
  Eigen::MatrixXd d4 = d * d * d * d;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(f4.at(i, j) == doctest::Approx(d4(i, j)).epsilon(1e-12));
}

TEST_CASE("partition identity vanishes exactly for 2..12") {
  for (int m = 2; m <= 12; ++m) CHECK(partition_identity_sum(m) == Rational(0));
  CHECK(partition_identity_sum(1) == Rational(1));
}

TEST_CASE("alternating trace sum vanishes on random finite matrices") {
  // trace of every t^m coefficient of log(e^{tA}e^{tB}) vanishes for m >= 2
  HessenbergMatrix a = random_dense_finite(5, 44), b = random_dense_finite(5, 55);
  Eigen::MatrixXd da = a.block(0, 5, 0, 5), db = b.block(0, 5, 0, 5);
  std::vector<Eigen::MatrixXd> pa{Eigen::MatrixXd::Identity(5, 5)};
  std::vector<Eigen::MatrixXd> pb{Eigen::MatrixXd::Identity(5, 5)};
  for (int i = 1; i <= 5; ++i) {
    pa.push_back(pa.back() * da);
    pb.push_back(pb.back() * db);
  }
  for (int m = 2; m <= 5; ++m) {
    double sum = 0.0, scale = 0.0;
    for (const auto& comp : bch_compositions(m)) {
      int j = static_cast<int>(comp.size());
      Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(5, 5);
      double fact = 1.0;
      for (auto [u, v] : comp) {
        prod = prod * pa[u] * pb[v];
        for (int q = 2; q <= u; ++q) fact *= q;
        for (int q = 2; q <= v; ++q) fact *= q;
      }
      double term = ((j % 2 == 1) ? 1.0 : -1.0) / j * prod.trace() / fact;
      sum += term;
      scale += std::abs(term);
    }
    CHECK(std::abs(sum) <= 1e-10 * scale);
  }
}
