#pragma once

// Data-parallel inner loops. Each kernel has a plain serial version and an
// OpenMP version with identical results; callers pick one with `Exec`.
// The serial versions are the reference the tests compare against.

#include "coxlim/datum.hpp"

#include <cstdint>
#include <vector>

namespace coxlim::kernels {

enum class Exec { serial, parallel };

using Bits = std::vector<std::uint64_t>;

inline bool bits_subset(const Bits& a, const Bits& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] & ~b[k]) return false;
  return true;
}

/// Index of the first set bit of a & ~b, or -1.
long first_bit_outside(const Bits& a, const Bits& b);

/// Sign of a root: the entry of largest magnitude decides.
inline bool root_is_negative(const double* v, int n) {
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    if (v[i] * v[i] > best * best) best = v[i];
  return best < 0.0;
}

/// One BFS step. For every frontier column x and simple index i, the child
/// s_i x goes to column j*n + i of `children`; `deeper[j*n+i]` is set iff
/// (x, a_i) < -tol, i.e. the child is a strictly deeper positive root.
struct Expansion {
  Mat children;
  std::vector<char> deeper;
};

/// Entry (k, l) = X_k^T G Y_l.
/// `negative_sets`: result[c] has bit k set iff elements[k] * X_c is negative.
/// `positive_pairing`: flag c set iff (eta, X_c) > tol.
/// `isotropic_hits`: for each column pair (P_c, X_c) of points in V1, the
/// point of the line through them on the isotropic quadric nearest X_c.
/// Columns with no intersection come back with `ok[c] = 0`.
struct Hits {
  Mat points;
  std::vector<char> ok;
};

namespace serial {
Expansion expand_frontier(const Mat& gram, const Mat& frontier, double tol);
Mat pairwise_form(const Mat& gram, const Mat& X, const Mat& Y);
std::vector<Bits> negative_sets(const std::vector<Mat>& elements, const Mat& X);
std::vector<char> positive_pairing(const Mat& gram, const Vec& eta, const Mat& X, double tol);
Hits isotropic_hits(const Mat& gram, const Mat& P, const Mat& X, double tangent_tol);
}  // namespace serial

namespace parallel {
Expansion expand_frontier(const Mat& gram, const Mat& frontier, double tol);
Mat pairwise_form(const Mat& gram, const Mat& X, const Mat& Y);
std::vector<Bits> negative_sets(const std::vector<Mat>& elements, const Mat& X);
std::vector<char> positive_pairing(const Mat& gram, const Vec& eta, const Mat& X, double tol);
Hits isotropic_hits(const Mat& gram, const Mat& P, const Mat& X, double tangent_tol);
}  // namespace parallel

inline Expansion expand_frontier(Exec e, const Mat& gram, const Mat& frontier, double tol) {
  return e == Exec::parallel ? parallel::expand_frontier(gram, frontier, tol)
                             : serial::expand_frontier(gram, frontier, tol);
}
inline Mat pairwise_form(Exec e, const Mat& gram, const Mat& X, const Mat& Y) {
  return e == Exec::parallel ? parallel::pairwise_form(gram, X, Y)
                             : serial::pairwise_form(gram, X, Y);
}
inline std::vector<Bits> negative_sets(Exec e, const std::vector<Mat>& elements, const Mat& X) {
  return e == Exec::parallel ? parallel::negative_sets(elements, X)
                             : serial::negative_sets(elements, X);
}
inline std::vector<char> positive_pairing(Exec e, const Mat& gram, const Vec& eta, const Mat& X,
                                          double tol) {
  return e == Exec::parallel ? parallel::positive_pairing(gram, eta, X, tol)
                             : serial::positive_pairing(gram, eta, X, tol);
}
inline Hits isotropic_hits(Exec e, const Mat& gram, const Mat& P, const Mat& X,
                           double tangent_tol) {
  return e == Exec::parallel ? parallel::isotropic_hits(gram, P, X, tangent_tol)
                             : serial::isotropic_hits(gram, P, X, tangent_tol);
}

/// Threads OpenMP would use; 1 when built without it.
int max_threads();

}  // namespace coxlim::kernels
