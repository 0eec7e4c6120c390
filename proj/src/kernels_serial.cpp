#include "kernel_ops.hpp"

namespace coxlim::kernels {

long first_bit_outside(const Bits& a, const Bits& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::uint64_t diff = a[k] & ~b[k];
    if (diff) return static_cast<long>(k * 64 + std::countr_zero(diff));
  }
  return -1;
}

namespace serial {

Expansion expand_frontier(const Mat& gram, const Mat& frontier, double tol) {
  const Eigen::Index n = gram.rows();
  Expansion out{Mat(n, frontier.cols() * n), std::vector<char>(frontier.cols() * n)};
  for (Eigen::Index j = 0; j < frontier.cols(); ++j)
    detail::expand_column(gram, frontier, tol, j, out);
  return out;
}

Mat pairwise_form(const Mat& gram, const Mat& X, const Mat& Y) {
  const Mat gy = gram * Y;
  Mat out(X.cols(), Y.cols());
  for (Eigen::Index k = 0; k < X.cols(); ++k)
    out.row(k) = X.col(k).transpose() * gy;
  return out;
}

std::vector<Bits> negative_sets(const std::vector<Mat>& elements, const Mat& X) {
  std::vector<Bits> out(X.cols(), Bits(detail::bit_words(elements.size()), 0));
  for (Eigen::Index c = 0; c < X.cols(); ++c) detail::negative_column(elements, X, c, out[c]);
  return out;
}

std::vector<char> positive_pairing(const Mat& gram, const Vec& eta, const Mat& X, double tol) {
  const Vec g = gram * eta;
  std::vector<char> out(X.cols());
  for (Eigen::Index c = 0; c < X.cols(); ++c) out[c] = g.dot(X.col(c)) > tol ? 1 : 0;
  return out;
}

Hits isotropic_hits(const Mat& gram, const Mat& P, const Mat& X, double tangent_tol) {
  Hits out{Mat(P.rows(), P.cols()), std::vector<char>(P.cols())};
  for (Eigen::Index c = 0; c < P.cols(); ++c)
    detail::hit_column(gram, P, X, tangent_tol, c, out);
  return out;
}

}  // namespace serial
}  // namespace coxlim::kernels
