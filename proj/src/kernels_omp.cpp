#include "kernel_ops.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace coxlim::kernels {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace parallel {

Expansion expand_frontier(const Mat& gram, const Mat& frontier, double tol) {
  const Eigen::Index n = gram.rows();
  Expansion out{Mat(n, frontier.cols() * n), std::vector<char>(frontier.cols() * n)};
  const Eigen::Index cols = frontier.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < cols; ++j) detail::expand_column(gram, frontier, tol, j, out);
  return out;
}

Mat pairwise_form(const Mat& gram, const Mat& X, const Mat& Y) {
  const Mat gy = gram * Y;
  Mat out(X.cols(), Y.cols());
  const Eigen::Index rows = X.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index k = 0; k < rows; ++k) out.row(k) = X.col(k).transpose() * gy;
  return out;
}

std::vector<Bits> negative_sets(const std::vector<Mat>& elements, const Mat& X) {
  std::vector<Bits> out(X.cols(), Bits(detail::bit_words(elements.size()), 0));
  const Eigen::Index cols = X.cols();
#pragma omp parallel for schedule(dynamic, 4)
  for (Eigen::Index c = 0; c < cols; ++c) detail::negative_column(elements, X, c, out[c]);
  return out;
}

std::vector<char> positive_pairing(const Mat& gram, const Vec& eta, const Mat& X, double tol) {
  const Vec g = gram * eta;
  std::vector<char> out(X.cols());
  const Eigen::Index cols = X.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < cols; ++c) out[c] = g.dot(X.col(c)) > tol ? 1 : 0;
  return out;
}

Hits isotropic_hits(const Mat& gram, const Mat& P, const Mat& X, double tangent_tol) {
  Hits out{Mat(P.rows(), P.cols()), std::vector<char>(P.cols())};
  const Eigen::Index cols = P.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index c = 0; c < cols; ++c) detail::hit_column(gram, P, X, tangent_tol, c, out);
  return out;
}

}  // namespace parallel
}  // namespace coxlim::kernels
