#include "support.hpp"

#include "coxlim/dominance.hpp"

#include <doctest.h>

using namespace coxlim;
using namespace testing_support;
namespace k = coxlim::kernels;

namespace {

Mat random_mat(std::mt19937& rng, int rows, int cols) {
  Mat m(rows, cols);
  for (int c = 0; c < cols; ++c) m.col(c) = random_vec(rng, rows);
  return m;
}

}  // namespace

TEST_CASE("bit helpers") {
  const k::Bits a{0b1010}, b{0b1110}, c{0b0100};
  CHECK(k::bits_subset(a, b));
  CHECK_FALSE(k::bits_subset(b, a));
  CHECK(k::first_bit_outside(b, a) == 2);
  CHECK(k::first_bit_outside(a, b) == -1);
  CHECK(k::first_bit_outside(k::Bits{0, 1}, k::Bits{0, 0}) == 64);
  CHECK(k::bits_subset(c, b));
}

TEST_CASE("root sign by largest entry") {
  const Vec neg = vec({-2, 1e-12});
  const Vec pos = vec({1e-12, 3});
  CHECK(k::root_is_negative(neg.data(), 2));
  CHECK_FALSE(k::root_is_negative(pos.data(), 2));
}

TEST_CASE("expand_frontier: serial and parallel agree with the definition") {
  const auto d = corpus("tri101");
  const auto slice = generate_roots(d, 5);
  const Mat x = slice.coord_matrix();
  const auto s = k::serial::expand_frontier(d.gram(), x, 1e-9);
  const auto p = k::parallel::expand_frontier(d.gram(), x, 1e-9);
  CHECK(s.children == p.children);
  CHECK(s.deeper == p.deeper);
  const int n = d.rank();
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (int i = 0; i < n; ++i) {
      const Vec child = oracle_reflect(d.gram(), i, x.col(j));
      CHECK(close(s.children.col(j * n + i), child, 1e-12 * (1 + child.cwiseAbs().maxCoeff())));
      const double form = (d.gram().row(i) * x.col(j))(0);
      CHECK(static_cast<bool>(s.deeper[j * n + i]) == (form < -1e-9));
    }
}

TEST_CASE("pairwise_form: serial, parallel, Eigen product") {
  std::mt19937 rng(1);
  const auto d = corpus("twin_affine");
  const Mat x = random_mat(rng, 5, 37), y = random_mat(rng, 5, 23);
  const Mat s = k::serial::pairwise_form(d.gram(), x, y);
  const Mat p = k::parallel::pairwise_form(d.gram(), x, y);
  CHECK(s == p);
  CHECK((s - x.transpose() * d.gram() * y).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("negative_sets: serial and parallel agree, bits match signs") {
  const auto d = corpus("univ3");
  const OrbitBall ball(d, 6);
  const Mat x = generate_roots(d, 4).coord_matrix();
  const auto s = k::serial::negative_sets(ball.elements(), x);
  const auto p = k::parallel::negative_sets(ball.elements(), x);
  CHECK(s == p);
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    for (std::size_t e = 0; e < ball.size(); ++e) {
      const Vec img = ball.elements()[e] * x.col(c);
      const bool bit = (s[c][e / 64] >> (e % 64)) & 1u;
      CHECK(bit == (img.maxCoeff() < 1e-9));
    }
}

TEST_CASE("positive_pairing: serial and parallel agree") {
  std::mt19937 rng(2);
  const auto d = corpus("tri101");
  const Mat x = random_mat(rng, 3, 101);
  const Vec eta = random_vec(rng, 3);
  const auto s = k::serial::positive_pairing(d.gram(), eta, x, 1e-9);
  CHECK(s == k::parallel::positive_pairing(d.gram(), eta, x, 1e-9));
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    CHECK(static_cast<bool>(s[c]) == (eta.dot(d.gram() * x.col(c)) > 1e-9));
}

TEST_CASE("isotropic_hits: on the quadric, on the line, agree across backends") {
  const auto d = corpus("tri101");
  const auto slice = generate_roots(d, 6);
  Mat parents(3, static_cast<Eigen::Index>(slice.size())), pts = parents;
  for (std::size_t i = 0; i < slice.size(); ++i) {
    const long par = slice.parent(i);
    const Vec x = slice[i].coords / slice[i].coords.sum();
    const Vec p = par < 0 ? Vec(Vec::Constant(3, 1.0 / 3)) : Vec(slice[par].coords / slice[par].coords.sum());
    parents.col(i) = p;
    pts.col(i) = x;
  }
  const auto s = k::serial::isotropic_hits(d.gram(), parents, pts, 1e-10);
  const auto p = k::parallel::isotropic_hits(d.gram(), parents, pts, 1e-10);
  CHECK(s.points == p.points);
  CHECK(s.ok == p.ok);
  int hits = 0;
  for (Eigen::Index c = 0; c < pts.cols(); ++c) {
    if (!s.ok[c]) continue;
    ++hits;
    const Vec h = s.points.col(c);
    CHECK(std::abs(h.dot(d.gram() * h)) < 1e-9);
    CHECK(h.sum() == doctest::Approx(1.0));
    // collinear with the two input points
    const Vec u = pts.col(c) - parents.col(c), w = h - parents.col(c);
    const double cross = (u * w.transpose() - w * u.transpose()).cwiseAbs().maxCoeff();
    CHECK(cross < 1e-9);
  }
  CHECK(hits > 0);
}

TEST_CASE("thread count is positive") { CHECK(k::max_threads() >= 1); }
