#include "support.hpp"

#include "coxlim/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace coxlim;
using namespace testing_support;

TEST_CASE("reflect examples") {
  const auto dih = corpus("dih_inf1");
  CHECK(close(reflect(dih, vec({1, 0}), vec({0, 1})), vec({2, 1})));
  CHECK(close(reflect(dih, vec({1, 0}), vec({1, 0})), vec({-1, 0})));
  CHECK_THROWS_AS(reflect(dih, vec({1, 1}), vec({1, 0})), DomainError);
}

TEST_CASE("simple reflection only changes its own coordinate") {
  const auto ex = corpus("twin_affine");
  std::mt19937 rng(3);
  for (int s = 0; s < 30; ++s) {
    const Vec v = random_vec(rng, 5);
    for (int i = 0; i < 5; ++i) {
      Vec w = v;
      reflect_simple_inplace(ex, i, w);
      CHECK(close(w, oracle_reflect(ex.gram(), i, v), 1e-12));
      CHECK(close(w, reflect(ex, ex.simple_root(i), v), 1e-12));
    }
  }
}

TEST_CASE("depth 0 slice is the simple roots") {
  for (const auto& name : corpus_names()) {
    const auto d = corpus(name);
    const auto s = generate_roots(d, 0);
    REQUIRE(s.size() == static_cast<std::size_t>(d.rank()));
    for (int i = 0; i < d.rank(); ++i) {
      CHECK(close(s[i].coords, d.simple_root(i), 0));
      CHECK(s[i].witness.empty());
      CHECK(s.parent(i) == -1);
    }
  }
}

TEST_CASE("infinite dihedral depth 2") {
  const auto s = generate_roots(corpus("dih_inf1"), 2);
  REQUIRE(s.size() == 6);
  for (const Vec& v : {vec({1, 0}), vec({0, 1}), vec({2, 1}), vec({1, 2}), vec({3, 2}), vec({2, 3})})
    CHECK(s.find(v).has_value());
  const auto i = *s.find(vec({3, 2}));
  CHECK(s[i].depth == 2);
  CHECK(close(act(s.datum(), s[i].witness, s.datum().simple_root(s[i].base)), vec({3, 2})));
}

TEST_CASE("dihedral root count 2k + 2 for every infinite bond") {
  for (const char* c : {"-1", "-1.5", "-1.01", "-3"}) {
    const auto d = parse_datum(std::string("rank 2\nbond 0 1 inf ") + c + "\n");
    for (int k = 0; k <= 10; ++k) CHECK(generate_roots(d, k).size() == static_cast<std::size_t>(2 * k + 2));
  }
}

TEST_CASE("finite groups stop early with the right root count") {
  CHECK(generate_roots(corpus("a2"), 10).size() == 3);
  CHECK(generate_roots(corpus("b2"), 10).size() == 4);
  CHECK(generate_roots(corpus("h3"), 40).size() == 15);
  CHECK(generate_roots(corpus("h3"), 40).deepest() < 40);
}

TEST_CASE("oracle: BFS slice equals brute-force word enumeration") {
  const std::vector<std::pair<std::string, int>> cases{
      {"a2", 4}, {"b2", 5}, {"h3", 6}, {"dih_inf1", 6}, {"dih15", 6},
      {"afftilde2", 5}, {"twin_affine", 4}, {"tri101", 4}, {"univ3", 4}};
  for (const auto& [name, k] : cases) {
    CAPTURE(name);
    const auto d = corpus(name);
    const auto slice = generate_roots(d, k);
    const auto oracle = oracle_roots(d, k);
    CHECK(slice.size() == oracle.size());
    for (const auto& o : oracle) {
      const auto idx = slice.find(o.coords);
      REQUIRE(idx.has_value());
      CHECK(slice[*idx].depth == o.depth);
    }
  }
}

TEST_CASE("BFS order: depths non-decreasing, levels partition the slice") {
  const auto s = generate_roots(corpus("tri101"), 6);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1].depth <= s[i].depth);
  std::size_t total = 0;
  for (int k = 0; k <= s.deepest(); ++k) {
    const auto [b, e] = s.level(k);
    total += e - b;
    for (std::size_t i = b; i < e; ++i) CHECK(s[i].depth == k);
  }
  CHECK(total == s.size());
}

TEST_CASE("serial and parallel generation agree exactly") {
  for (const auto& name : corpus_names()) {
    const auto d = corpus(name);
    RootOptions a, b;
    a.exec = kernels::Exec::serial;
    b.exec = kernels::Exec::parallel;
    const auto s = generate_roots(d, 6, a), p = generate_roots(d, 6, b);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i].coords == p[i].coords);
      CHECK(s[i].witness == p[i].witness);
    }
  }
}

TEST_CASE("root count and depth caps") {
  RootOptions small;
  small.max_roots = 5;
  CHECK_THROWS_AS(generate_roots(corpus("univ3"), 4, small), BudgetExhausted);
  RootOptions cap;
  cap.depth_cap = 3;
  CHECK_THROWS_AS(generate_roots(corpus("dih_inf1"), 4, cap), InputError);
}

TEST_CASE("truncated slice is a prefix") {
  const auto s = generate_roots(corpus("twin_affine"), 6);
  const auto t = s.truncated(3);
  CHECK(t.size() == s.level(3).second);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(t[i].coords == s[i].coords);
}

TEST_CASE("act examples") {
  const auto ex = corpus("twin_affine");
  const Word w{0, 1, 4, 3};
  Word cubed;
  for (int k = 0; k < 3; ++k) cubed.insert(cubed.end(), w.begin(), w.end());
  CHECK(close(act(ex, cubed, ex.simple_root(2)), vec({12, 9, 1, 9, 12})));
  CHECK(close(act(ex, {}, vec({1, 2, 3, 4, 5})), vec({1, 2, 3, 4, 5})));
  const auto dih = corpus("dih_inf1");
  CHECK(close(act(dih, {0, 1}, vec({1, 0})), vec({3, 2})));
}

TEST_CASE("act matches the oracle and word_matrix") {
  std::mt19937 rng(11);
  for (const auto& name : corpus_names()) {
    const auto d = corpus(name);
    for (int s = 0; s < 20; ++s) {
      const Word w = random_word(rng, d.rank(), 8);
      const Vec v = random_vec(rng, d.rank());
      const Vec a = act(d, w, v);
      CHECK(close(a, oracle_apply(d.gram(), w, v), 1e-9 * (1 + a.cwiseAbs().maxCoeff())));
      CHECK(close(a, word_matrix(d, w) * v, 1e-9 * (1 + a.cwiseAbs().maxCoeff())));
    }
  }
}

TEST_CASE("inversion set examples") {
  const auto dih = corpus("dih_inf1");
  auto n = inversion_set(dih, {0});
  REQUIRE(n.roots.size() == 1);
  CHECK(close(n.roots[0], vec({1, 0})));
  CHECK(inversion_set(dih, {}).roots.empty());
  n = inversion_set(dih, {0, 1, 0});
  CHECK(n.roots.size() == 3);
  CHECK(n.reduced);
  n = inversion_set(dih, {0, 0});
  CHECK(n.roots.empty());
  CHECK_FALSE(n.reduced);
}

TEST_CASE("oracle: inversion set equals the positive roots sent negative") {
  std::mt19937 rng(5);
  for (const auto& name : {"afftilde2", "twin_affine", "univ3", "h3"}) {
    const auto d = corpus(name);
    const auto slice = generate_roots(d, 7);
    for (int s = 0; s < 20; ++s) {
      const Word w = random_word(rng, d.rank(), 5);
      std::size_t count = 0;
      for (const auto& r : slice.roots())
        if (oracle_apply(d.gram(), w, r.coords).maxCoeff() < 1e-9) ++count;
      // roots of depth > 7 cannot be inverted by a word of length <= 5
      CHECK(inversion_set(d, w).roots.size() == count);
    }
  }
}

TEST_CASE("support examples") {
  CHECK(support(vec({0, 1, 0, 1, 0})) == SimpleSubset({1, 3}));
  CHECK(support(vec({1e-12, 0.5}), 1e-9) == SimpleSubset({1}));
  CHECK(support(vec({0, 0})).empty());
}

TEST_CASE("full support root") {
  const auto ex = corpus("twin_affine");
  const Root r = full_support_root(ex, 2, {1, 0, 3, 4});
  CHECK(support(r.coords) == SimpleSubset::all(5));
  CHECK(close(act(ex, r.witness, ex.simple_root(r.base)), r.coords));
  CHECK(bilinear(ex, r.coords, r.coords) == doctest::Approx(1.0));
  CHECK(close(full_support_root(parse_datum("rank 1\n")).coords, vec({1})));
  const Root t = full_support_root(corpus("afftilde2"));
  CHECK(support(t.coords).size() == 3);
}

TEST_CASE("property: roots are unit, positive, connected, witnessed") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    const auto d = corpus(name);
    const auto slice = generate_roots(d, 6);
    for (const auto& r : slice.roots()) {
      CHECK(bilinear(d, r.coords, r.coords) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(oracle_positive(r.coords));
      CHECK(is_connected(d, support(r.coords)));
      CHECK(close(oracle_apply(d.gram(), r.witness, d.simple_root(r.base)), r.coords,
                  1e-9 * r.coords.maxCoeff()));
      CHECK(static_cast<int>(r.witness.size()) == r.depth);
    }
  }
}

TEST_CASE("coordinate index survives rounding boundaries") {
  CoordIndex idx;
  const Vec a = vec({0.12345649999999, 1.0});
  const Vec b = vec({0.12345650000001, 1.0});
  REQUIRE_FALSE(idx.insert(a, 7).has_value());
  REQUIRE(idx.find(b).has_value());
  CHECK(*idx.find(b) == 7);
  CHECK(idx.insert(b, 8) == std::optional<std::size_t>(7));
  CHECK_FALSE(idx.find(vec({0.2, 1.0})).has_value());
  const Vec big = vec({3.0e10, 1.0});
  idx.insert(big, 9);
  CHECK(idx.find(vec({3.0e10 + 1e-3, 1.0})) == std::optional<std::size_t>(9));
}

TEST_CASE("root line format") {
  Root r;
  r.coords = vec({2, 1});
  r.depth = 1;
  r.witness = {0};
  std::ostringstream os;
  write_root_line(os, r);
  const std::string line = os.str();
  CHECK(std::count(line.begin(), line.end(), '\t') == 3);
  CHECK(line.rfind("1\t2.000000\t1.000000\t", 0) == 0);
}
