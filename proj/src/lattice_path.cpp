#include "mope/lattice_path.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace mope {

using nlohmann::json;

LatticePath::LatticePath(int m, std::vector<int> steps, std::vector<double> nu)
    : m_(m), steps_(std::move(steps)), nu_(std::move(nu)) {
  if (m_ < 1) throw Error("path dimension must be at least 1");
  if (static_cast<int>(nu_.size()) != m_) throw Error("nu length does not match m");
  for (int s : steps_)
    if (s < 1 || s > m_) throw Error("path step out of range");
}

int LatticePath::step(int n) const {
  if (n < lo_ || n >= lo_ + static_cast<int>(steps_.size()))
    throw Error("path step index out of range");
  return steps_[n - lo_];
}

MultiIndex LatticePath::index(int n) const {
  if (n < lo_ || n > lo_ + static_cast<int>(steps_.size()))
    throw Error("path index out of range");
  MultiIndex k(m_, 0);
  if (n >= 0) {
    for (int i = 0; i < n; ++i) k[step(i) - 1] += 1;
  } else {
    for (int i = n; i < 0; ++i) k[step(i) - 1] -= 1;
  }
  return k;
}

LatticePath LatticePath::extended_below(int depth) const {
  if (depth < 0) throw Error("extension depth must be non-negative");
  LatticePath out = *this;
  int new_lo = lo_ - depth;
  std::vector<int> ext;
  ext.reserve(steps_.size() + depth);
  // backward steps peel directions cyclically; the exposed block of any
  // composed-symbol evaluation does not depend on this choice
  for (int n = new_lo; n < lo_; ++n) {
    int idx = ((n % m_) + m_) % m_;
    ext.push_back(idx + 1);
  }
  ext.insert(ext.end(), steps_.begin(), steps_.end());
  out.steps_ = std::move(ext);
  out.lo_ = new_lo;
  return out;
}

void LatticePath::validate() const {
  double s = 0.0;
  for (double v : nu_) {
    if (v < 0) throw Error("nu entries must be non-negative");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-12) throw Error("nu must sum to 1");
  const int N = length() + lo_;  // final non-negative index
  if (N > 0) {
    MultiIndex k = index(N);
    for (int j = 0; j < m_; ++j) {
      if (std::abs(static_cast<double>(k[j]) / N - nu_[j]) > static_cast<double>(m_) / N)
        throw Error("path does not track nu at the horizon");
    }
  }
}

std::string LatticePath::to_json() const {
  json j;
  j["m"] = m_;
  j["nu"] = nu_;
  std::vector<int> pos_steps(steps_.begin() + (-lo_), steps_.end());
  j["steps"] = pos_steps;
  return j.dump();
}

LatticePath LatticePath::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid path JSON: ") + e.what());
  }
  try {
    return LatticePath(j.at("m").get<int>(), j.at("steps").get<std::vector<int>>(),
                       j.at("nu").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("path JSON missing field: ") + e.what());
  }
}

LatticePath step_line(int m, int length) {
  if (m < 1 || length < 0) throw Error("step_line needs m >= 1 and length >= 0");
  std::vector<int> steps(length);
  for (int n = 0; n < length; ++n) steps[n] = (n % m) + 1;
  std::vector<double> nu(m, 1.0 / m);
  return LatticePath(m, std::move(steps), std::move(nu));
}

LatticePath ray_path(const std::vector<double>& nu, int length) {
  const int m = static_cast<int>(nu.size());
  if (m < 1 || length < 0) throw Error("ray_path needs m >= 1 and length >= 0");
  double s = 0.0;
  for (double v : nu) {
    if (v < 0) throw Error("nu entries must be non-negative");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-12) throw Error("nu must sum to 1");
  std::vector<int> steps(length);
  std::vector<int> k(m, 0);
  for (int n = 0; n < length; ++n) {
    int best = 0;
    double best_score = (n + 1) * nu[0] - k[0];
    for (int j = 1; j < m; ++j) {
      double score = (n + 1) * nu[j] - k[j];
      if (score > best_score) {
        best = j;
        best_score = score;
      }
    }
    steps[n] = best + 1;
    k[best] += 1;
  }
  return LatticePath(m, std::move(steps), nu);
}

LatticePath hermite_alternating_path(int length) {
  // k_j = (floor((j+1)/2), floor(j/2)): directions alternate 1,2,1,2,...
  return step_line(2, length);
}

}  // namespace mope
