#pragma once

// Per-column bodies shared by the serial and OpenMP kernels, so both loops
// run the exact same arithmetic.

#include "coxlim/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace coxlim::kernels::detail {

inline void expand_column(const Mat& gram, const Mat& frontier, double tol, Eigen::Index j,
                          Expansion& out) {
  const Eigen::Index n = gram.rows();
  const Vec gx = gram * frontier.col(j);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index c = j * n + i;
    out.children.col(c) = frontier.col(j);
    out.children(i, c) -= 2.0 * gx[i];
    out.deeper[c] = gx[i] < -tol ? 1 : 0;
  }
}

inline void negative_column(const std::vector<Mat>& elements, const Mat& X, Eigen::Index c,
                            Bits& out) {
  const int n = static_cast<int>(X.rows());
  Vec img(n);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    img.noalias() = elements[k] * X.col(c);
    if (root_is_negative(img.data(), n)) out[k >> 6] |= std::uint64_t{1} << (k & 63);
  }
}

inline void hit_column(const Mat& gram, const Mat& P, const Mat& X, double tangent_tol,
                       Eigen::Index c, Hits& out) {
  const Vec p = P.col(c);
  const Vec u = X.col(c) - p;
  const Vec gu = gram * u;
  const double A = u.dot(gu);
  const double B = p.dot(gu);
  const double C = p.dot(gram * p);
  double t = std::numeric_limits<double>::quiet_NaN();
  const double scale = std::max({std::abs(A), std::abs(B), std::abs(C), 1e-300});
  if (std::abs(A) <= 1e-14 * scale) {
    if (std::abs(B) > 1e-14 * scale) t = -C / (2.0 * B);
  } else {
    const double disc = B * B - A * C;
    if (disc < 0.0) {
      const double ts = -B / A;
      const double q = C + 2.0 * B * ts + A * ts * ts;
      if (std::abs(q) <= tangent_tol) t = ts;
    } else {
      const double r = std::sqrt(disc);
      const double t1 = (-B + r) / A;
      const double t2 = (-B - r) / A;
      t = std::abs(t1 - 1.0) <= std::abs(t2 - 1.0) ? t1 : t2;
    }
  }
  if (std::isfinite(t)) {
    out.points.col(c) = p + t * u;
    out.ok[c] = 1;
  } else {
    out.points.col(c).setZero();
    out.ok[c] = 0;
  }
}

inline std::size_t bit_words(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace coxlim::kernels::detail
