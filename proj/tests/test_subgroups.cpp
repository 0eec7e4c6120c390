#include "closure.hpp"
#include "support.hpp"

#include "coxlim/error.hpp"
#include "coxlim/limits.hpp"
#include "coxlim/subgroups.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace coxlim;
using namespace testing_support;

namespace {

double det_of(const Mat& g, const std::vector<int>& idx) {
  Mat sub(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) sub(a, b) = g(idx[a], idx[b]);
  return sub.determinant();
}

// Positive definite iff every principal minor is positive; affine iff the
// whole determinant vanishes while every proper principal minor is positive.
ParabolicKind oracle_kind(const Mat& g, const std::vector<int>& m) {
  const std::size_t k = m.size();
  bool proper_positive = true;
  for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
    std::vector<int> idx;
    for (std::size_t b = 0; b < k; ++b)
      if (mask >> b & 1u) idx.push_back(m[b]);
    if (det_of(g, idx) <= 1e-9) proper_positive = false;
  }
  const double full = det_of(g, m);
  if (proper_positive && full > 1e-9) return ParabolicKind::finite;
  if (proper_positive && std::abs(full) <= 1e-9) return ParabolicKind::affine;
  return ParabolicKind::indefinite;
}

bool contains_root(const CanonicalSet& c, const Vec& x) {
  for (const Vec& r : c.roots)
    if (close(r, x, 1e-9)) return true;
  return false;
}

}  // namespace

TEST_CASE("canonical values") {
  CHECK(canonical_value(0.0));
  CHECK(canonical_value(-0.5));
  CHECK(canonical_value(-std::cos(std::numbers::pi / 7)));
  CHECK(canonical_value(-1.0));
  CHECK(canonical_value(-3.2));
  CHECK_FALSE(canonical_value(0.3));
  CHECK_FALSE(canonical_value(-0.6));
  CHECK_FALSE(canonical_value(1.0));
}

TEST_CASE("dihedral canonical pair examples") {
  const auto dih = corpus("dih_inf1");
  auto c = dihedral_canonical_pair(dih, vec({1, 0}), vec({0, 1}));
  REQUIRE(c.size() == 2);
  CHECK(contains_root(c, vec({1, 0})));
  CHECK(contains_root(c, vec({0, 1})));
  c = dihedral_canonical_pair(dih, vec({1, 0}), vec({2, 1}));
  REQUIRE(c.size() == 2);
  CHECK(contains_root(c, vec({1, 0})));
  CHECK(contains_root(c, vec({0, 1})));
  c = dihedral_canonical_pair(dih, vec({2, 1}), vec({1, 2}));
  REQUIRE(c.size() == 2);
  CHECK(contains_root(c, vec({2, 1})));
  CHECK(contains_root(c, vec({1, 2})));
  CHECK(dihedral_canonical_pair(dih, vec({2, 1}), vec({2, 1})).size() == 1);
}

TEST_CASE("finite dihedral pair from non-simple roots") {
  const auto a2 = corpus("a2");
  const auto c = dihedral_canonical_pair(a2, vec({1, 0}), vec({1, 1}));
  REQUIRE(c.size() == 2);
  CHECK(satisfies_canonical_criterion(a2, c.roots));
  CHECK(c.values(0, 1) == doctest::Approx(-0.5));
}

TEST_CASE("canonicalize examples") {
  const auto ex = corpus("twin_affine");
  std::vector<Vec> pi;
  for (int i = 0; i < 5; ++i) pi.push_back(ex.simple_root(i));
  const auto c = canonicalize(ex, pi);
  REQUIRE(c.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(close(c.roots[i], ex.simple_root(i), 0));
  const auto dih = corpus("dih_inf1");
  const auto d2 = canonicalize(dih, {vec({1, 0}), vec({2, 1})});
  REQUIRE(d2.size() == 2);
  CHECK(contains_root(d2, vec({0, 1})));
  const auto a2 = corpus("a2");
  CHECK(canonicalize(a2, {vec({1, 0}), vec({0, 1})}).size() == 2);
  const auto neg = canonicalize(dih, {vec({-1, 0}), vec({0, 1})});
  CHECK(contains_root(neg, vec({1, 0})));
}

TEST_CASE("property: canonicalize satisfies the criterion") {
  std::mt19937 rng(21);
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    const auto d = corpus(name);
    const auto slice = generate_roots(d, 5);
    std::uniform_int_distribution<std::size_t> pick(0, slice.size() - 1);
    for (int s = 0; s < 40; ++s) {
      std::vector<Vec> delta;
      for (int k = 0; k < 3; ++k) delta.push_back(slice[pick(rng)].coords);
      const auto c = canonicalize(d, delta);
      CHECK(satisfies_canonical_criterion(d, c.roots));
      for (const Vec& x : c.roots) CHECK(oracle_positive(x));
    }
  }
}

TEST_CASE("oracle: canonicalize preserves the generated subgroup") {
  const auto dih = corpus("dih_inf1");
  const auto slice = generate_roots(dih, 3);
  for (std::size_t i = 0; i < slice.size(); ++i)
    for (std::size_t j = i + 1; j < slice.size(); ++j) {
      const std::vector<Vec> in{slice[i].coords, slice[j].coords};
      const auto out = canonicalize(dih, in);
      CHECK(same_reflection_subgroup(dih.gram(), in, out.roots, 10));
    }
  const auto h3 = corpus("h3");
  const auto hs = generate_roots(h3, 10);
  for (std::size_t i = 0; i < hs.size(); i += 3)
    for (std::size_t j = i + 1; j < hs.size(); j += 4) {
      const std::vector<Vec> in{hs[i].coords, hs[j].coords};
      CHECK(same_reflection_subgroup(h3.gram(), in, canonicalize(h3, in).roots, 10));
    }
}

TEST_CASE("classify parabolic examples") {
  CHECK(classify_parabolic(corpus("twin_affine"), SimpleSubset({2})).kind == ParabolicKind::finite);
  const auto aff = classify_parabolic(corpus("afftilde2"), SimpleSubset::all(3));
  REQUIRE(aff.kind == ParabolicKind::affine);
  CHECK(close(*aff.kernel, vec({1.0 / 3, 1.0 / 3, 1.0 / 3}), 1e-9));
  CHECK(classify_parabolic(corpus("dih15"), SimpleSubset::all(2)).kind == ParabolicKind::indefinite);
  const auto dih = classify_parabolic(corpus("dih_inf1"), SimpleSubset::all(2));
  REQUIRE(dih.kind == ParabolicKind::affine);
  CHECK(close(*dih.kernel, vec({0.5, 0.5}), 1e-9));
  for (const auto& name : {"a2", "b2", "h3"})
    CHECK(classify_parabolic(corpus(name), SimpleSubset::all(corpus(name).rank())).kind == ParabolicKind::finite);
}

TEST_CASE("classify parabolic errors") {
  const auto ex = corpus("twin_affine");
  CHECK_THROWS_AS(classify_parabolic(ex, SimpleSubset({0, 1, 3, 4})), DomainError);
  CHECK_THROWS_AS(classify_parabolic(ex, SimpleSubset()), DomainError);
}

TEST_CASE("oracle: classification equals principal-minor test") {
  for (const auto& name : corpus_names()) {
    const auto d = corpus(name);
    const int n = d.rank();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> m;
      for (int b = 0; b < n; ++b)
        if (mask >> b & 1u) m.push_back(b);
      if (!is_connected(d, SimpleSubset(m))) continue;
      CAPTURE(name);
      CAPTURE(mask);
      CHECK(classify_parabolic(d, SimpleSubset(m)).kind == oracle_kind(d.gram(), m));
    }
  }
}

TEST_CASE("property: affine kernels are positive and in the radical") {
  for (const auto& name : corpus_names()) {
    const auto d = corpus(name);
    for (const auto& m : affine_standard_parabolics(d)) {
      const auto t = classify_parabolic(d, m);
      REQUIRE(t.kernel.has_value());
      CHECK(t.kernel->minCoeff() > 1e-9);
      CHECK(t.kernel->sum() == doctest::Approx(1.0));
      const Vec full = affine_kernel(d, m);
      for (int i : m) CHECK(std::abs((d.gram().row(i) * full)(0)) < 1e-9);
    }
  }
}

TEST_CASE("kernel of a disconnected affine subset is the sum of component kernels") {
  const auto ex = corpus("twin_affine");
  const std::vector<int> idx{0, 1, 3, 4};
  Mat sub(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) sub(a, b) = ex.gram()(idx[a], idx[b]);
  Eigen::FullPivLU<Mat> lu(sub);
  CHECK(lu.dimensionOfKernel() == 2);
  const Vec k1 = affine_kernel(ex, SimpleSubset({0, 1})), k2 = affine_kernel(ex, SimpleSubset({3, 4}));
  const Mat kernel = lu.kernel();
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    Vec v(5);
    v << kernel(0, c), kernel(1, c), 0, kernel(2, c), kernel(3, c);
    // v lies in span{k1, k2}
    Mat basis(5, 2);
    basis << k1, k2;
    const Vec coeff = basis.colPivHouseholderQr().solve(v);
    CHECK((basis * coeff - v).norm() < 1e-9);
  }
}

TEST_CASE("affine standard parabolics") {
  const auto ex = affine_standard_parabolics(corpus("twin_affine"));
  REQUIRE(ex.size() == 2);
  CHECK(ex[0] == SimpleSubset({0, 1}));
  CHECK(ex[1] == SimpleSubset({3, 4}));
  CHECK(affine_standard_parabolics(corpus("a2")).empty());
  const auto a = affine_standard_parabolics(corpus("afftilde2"));
  REQUIRE(a.size() == 1);
  CHECK(a[0] == SimpleSubset::all(3));
  CHECK(affine_standard_parabolics(corpus("univ3")).size() == 3);
}

TEST_CASE("affine dihedral detection") {
  const auto dih = corpus("dih_inf1");
  CHECK(is_affine_dihedral(dih, make_canonical_set(dih, {vec({1, 0}), vec({0, 1})})));
  const auto seven = parse_datum("rank 2\nbond 0 1 7\n");
  CHECK_FALSE(is_affine_dihedral(seven, make_canonical_set(seven, {vec({1, 0}), vec({0, 1})})));
  const auto d15 = corpus("dih15");
  CHECK_FALSE(is_affine_dihedral(d15, make_canonical_set(d15, {vec({1, 0}), vec({0, 1})})));
}

TEST_CASE("non-affine dihedral search") {
  const auto aff = corpus("afftilde2");
  CHECK_FALSE(find_nonaffine_dihedral(aff, generate_roots(aff, 6)).has_value());
  const auto d15 = corpus("dih15");
  const auto s0 = generate_roots(d15, 0);
  const auto hit = find_nonaffine_dihedral(d15, s0);
  REQUIRE(hit.has_value());
  CHECK(bilinear(d15, s0[hit->first].coords, s0[hit->second].coords) == doctest::Approx(-1.5));
  const auto uni = corpus("univ3");
  const auto s2 = generate_roots(uni, 2);
  const auto u = find_nonaffine_dihedral(uni, s2);
  REQUIRE(u.has_value());
  CHECK(bilinear(uni, s2[u->first].coords, s2[u->second].coords) <= -1 - 1e-9);
}

TEST_CASE("host parabolic examples") {
  const auto ex = corpus("twin_affine");
  auto h = host_parabolic(ex, make_canonical_set(ex, {vec({1, 0, 0, 0, 0}), vec({0, 1, 0, 0, 0})}));
  CHECK(h.conjugator.empty());
  CHECK(h.host == SimpleSubset({0, 1}));

  h = host_parabolic(ex, make_canonical_set(ex, {vec({1, 0, 0, 0, 0}), vec({0, 1, 1, 0, 0})}));
  CHECK(h.conjugator == Word{2});
  CHECK(h.host == SimpleSubset({0, 1}));
  CHECK(close(h.reduced_point, vec({0.5, 0.5, 0, 0, 0}), 1e-9));
  for (const Vec& x : h.conjugated_roots) CHECK(support(x).members().back() <= 1);

  const auto aff = corpus("afftilde2");
  h = host_parabolic(aff, make_canonical_set(aff, {vec({1, 0, 0}), vec({0, 1, 1})}));
  CHECK(h.host == SimpleSubset::all(3));
}

TEST_CASE("affine structure: roots of affine A2 are congruent to a finite root mod the radical") {
  const auto d = corpus("afftilde2");
  const auto slice = generate_roots(d, 8);
  const std::vector<Vec> finite{vec({1, 0, 0}), vec({0, 1, 0}), vec({1, 1, 0})};
  for (const auto& r : slice.roots()) {
    bool found = false;
    for (const Vec& f : finite)
      for (double sign : {1.0, -1.0}) {
        const Vec diff = r.coords - sign * f;
        if ((diff.array() - diff[0]).abs().maxCoeff() < 1e-9) found = true;
      }
    CHECK(found);
  }
}
