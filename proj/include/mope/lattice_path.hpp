#pragma once

#include <string>
#include <vector>

#include "mope/errors.hpp"
#include "mope/families.hpp"

namespace mope {

// An admissible up-right lattice path k_0 = 0, k_{n+1} = k_n + e_{j_n},
// stored as the 1-based step sequence {j_n} together with the direction nu.
// Steps may also extend to negative indices (k_{-s-1} = k_{-s} - e), which is
// used as a computational scaffold when evaluating composed Toeplitz blocks.
class LatticePath {
 public:
  LatticePath(int m, std::vector<int> steps, std::vector<double> nu);

  int m() const { return m_; }
  int length() const { return static_cast<int>(steps_.size()); }
  const std::vector<int>& steps() const { return steps_; }
  const std::vector<double>& nu() const { return nu_; }

  // 1-based direction of the step taken from k_n; n in [lo(), length()).
  int step(int n) const;
  // Multi-index k_n; n in [lo(), length()].
  MultiIndex index(int n) const;

  // How far the path extends below zero (lo() <= 0; 0 when not extended).
  int lo() const { return lo_; }
  // Returns a copy extended by `depth` backward steps below index 0,
  // peeling directions cyclically.
  LatticePath extended_below(int depth) const;

  // Checks |k_n| = n, unit steps, and |k_{N,j}/N - nu_j| <= m/N at the final
  // index. Throws Error with a description on violation.
  void validate() const;

  std::string to_json() const;
  static LatticePath from_json(const std::string& text);

 private:
  int m_;
  int lo_ = 0;                // most negative defined index
  std::vector<int> steps_;    // step(lo_), step(lo_+1), ..., step(length-1)
  std::vector<double> nu_;
};

// Cyclic path j_n = (n mod m) + 1 with nu = (1/m, ..., 1/m).
LatticePath step_line(int m, int length);

// Greedy path tracking nu: j_n = argmax_j ((n+1) nu_j - k_{n,j}), smallest
// index on ties. Satisfies |k_{n,j} - n nu_j| <= m for all n.
LatticePath ray_path(const std::vector<double>& nu, int length);

// The interleaved m=2 path k_j = (floor((j+1)/2), floor(j/2)).
LatticePath hermite_alternating_path(int length);

}  // namespace mope
