#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mope/lattice_path.hpp"

using namespace mope;

TEST_CASE("step line m=2") {
  LatticePath p = step_line(2, 4);
  CHECK(p.index(0) == MultiIndex{0, 0});
  CHECK(p.index(1) == MultiIndex{1, 0});
  CHECK(p.index(2) == MultiIndex{1, 1});
  CHECK(p.index(3) == MultiIndex{2, 1});
  CHECK(p.index(4) == MultiIndex{2, 2});
  p.validate();
}

TEST_CASE("step line m=1 and m=3") {
  LatticePath p1 = step_line(1, 3);
  CHECK(p1.index(3) == MultiIndex{3});
  LatticePath p3 = step_line(3, 3);
  CHECK(p3.index(1) == MultiIndex{1, 0, 0});
  CHECK(p3.index(2) == MultiIndex{1, 1, 0});
  CHECK(p3.index(3) == MultiIndex{1, 1, 1});
}

TEST_CASE("ray path matches the step line for the balanced direction") {
  LatticePath a = ray_path({0.5, 0.5}, 40);
  LatticePath b = step_line(2, 40);
  CHECK(a.steps() == b.steps());
}

TEST_CASE("ray path degenerate direction") {
  LatticePath p = ray_path({1.0, 0.0}, 3);
  CHECK(p.index(3) == MultiIndex{3, 0});
}

TEST_CASE("ray path (1/3, 2/3)") {
  LatticePath p = ray_path({1.0 / 3.0, 2.0 / 3.0}, 6);
  CHECK(p.index(6) == MultiIndex{2, 4});
  for (int j = 0; j < 2; ++j)
    CHECK(std::abs(p.index(6)[j] - 6 * p.nu()[j]) <= 1e-9);
}

TEST_CASE("ray path stays within m of the ray") {
  std::vector<double> nu{0.17, 0.33, 0.5};
  const int N = 100000;
  LatticePath p = ray_path(nu, N);
  MultiIndex k(3, 0);
  for (int n = 0; n < N; ++n) {
    k[p.step(n) - 1] += 1;
    for (int j = 0; j < 3; ++j) CHECK(std::abs(k[j] - (n + 1) * nu[j]) <= 3.0);
  }
  p.validate();
}

TEST_CASE("alternating hermite path") {
  LatticePath p = hermite_alternating_path(8);
  CHECK(p.index(0) == MultiIndex{0, 0});
  CHECK(p.index(2) == MultiIndex{1, 1});
  CHECK(p.index(5) == MultiIndex{3, 2});
  // k_j = (floor((j+1)/2), floor(j/2))
  for (int j = 0; j <= 8; ++j) {
    CHECK(p.index(j)[0] == (j + 1) / 2);
    CHECK(p.index(j)[1] == j / 2);
  }
}

TEST_CASE("negative extension peels cyclically and keeps positive steps") {
  LatticePath p = step_line(2, 5).extended_below(4);
  CHECK(p.lo() == -4);
  CHECK(p.index(0) == MultiIndex{0, 0});
  CHECK(p.index(5) == step_line(2, 5).index(5));
  MultiIndex km1 = p.index(-1);
  CHECK(km1[0] + km1[1] == -1);
  CHECK(p.index(-4)[0] + p.index(-4)[1] == -4);
}

TEST_CASE("path json round trip") {
  LatticePath p = ray_path({0.25, 0.75}, 7);
  LatticePath q = LatticePath::from_json(p.to_json());
  CHECK(q.steps() == p.steps());
  CHECK(q.m() == 2);
  CHECK_THROWS_AS(LatticePath::from_json("{"), ConfigError);
}

TEST_CASE("generator output validates") {
  step_line(3, 17).validate();
  ray_path({0.2, 0.8}, 31).validate();
  hermite_alternating_path(9).validate();
}
