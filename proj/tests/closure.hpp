#pragma once

// Brute-force closure of a set of reflections: every product of at most
// `len` generators, as matrices, deduplicated by rounded entries.

#include "support.hpp"

#include <cmath>
#include <set>

namespace testing_support {

inline Mat reflection_matrix(const Mat& g, const Vec& x) {
  const double q = x.dot(g * x);
  return Mat::Identity(x.size(), x.size()) - (2.0 / q) * x * (g * x).transpose();
}

inline std::vector<long long> matrix_key(const Mat& m) {
  std::vector<long long> k;
  k.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.size(); ++i) k.push_back(std::llround(m.data()[i] * 1e6));
  return k;
}

inline std::set<std::vector<long long>> reflection_closure(const Mat& g, const std::vector<Vec>& gens, int len) {
  std::vector<Mat> mats;
  for (const Vec& x : gens) mats.push_back(reflection_matrix(g, x));
  const auto n = g.rows();
  std::set<std::vector<long long>> seen{matrix_key(Mat::Identity(n, n))};
  std::vector<Mat> frontier{Mat::Identity(n, n)};
  for (int l = 0; l < len; ++l) {
    std::vector<Mat> next;
    for (const Mat& m : frontier)
      for (const Mat& r : mats) {
        Mat p = r * m;
        if (seen.insert(matrix_key(p)).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return seen;
}

// Each side's generators lie in the other side's closure.
inline bool same_reflection_subgroup(const Mat& g, const std::vector<Vec>& a, const std::vector<Vec>& b, int len) {
  const auto ca = reflection_closure(g, a, len), cb = reflection_closure(g, b, len);
  for (const Vec& x : b)
    if (!ca.count(matrix_key(reflection_matrix(g, x)))) return false;
  for (const Vec& x : a)
    if (!cb.count(matrix_key(reflection_matrix(g, x)))) return false;
  return true;
}

}  // namespace testing_support
