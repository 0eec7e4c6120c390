#include "coxlim/checks.hpp"

#include "coxlim/dominance.hpp"
#include "coxlim/error.hpp"
#include "coxlim/limits.hpp"
#include "coxlim/subgroups.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace coxlim {

namespace {

Word random_word(std::mt19937& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, rank - 1);
  Word w(static_cast<std::size_t>(len(rng)));
  for (int& l : w) l = letter(rng);
  return w;
}

Vec random_vec(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

}  // namespace

std::vector<CheckResult> run_checks(const CoxeterDatum& d, const CheckOptions& opt) {
  std::vector<CheckResult> out;
  std::mt19937 rng(opt.seed);
  const double tol = d.tolerance();
  const int n = d.rank();

  auto check = [&](const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{name, true, {}};
    try {
      r.detail = body();
      r.pass = r.detail.empty();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
  };

  check("gram_symmetric_unit_diagonal", [&]() -> std::string {
    const Mat& g = d.gram();
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 0) return "gram not symmetric";
    for (int i = 0; i < n; ++i)
      if (g(i, i) != 1.0) return "diagonal entry " + std::to_string(i) + " is not 1";
    return {};
  });

  check("bilinear_symmetric_and_linear", [&]() -> std::string {
    for (int s = 0; s < opt.samples; ++s) {
      const Vec u = random_vec(rng, n), v = random_vec(rng, n), w = random_vec(rng, n);
      if (std::abs(bilinear(d, u, v) - bilinear(d, v, u)) > 1e-12) return "not symmetric";
      const double lhs = bilinear(d, 2.0 * u + w, v);
      const double rhs = 2.0 * bilinear(d, u, v) + bilinear(d, w, v);
      if (std::abs(lhs - rhs) > 1e-12 * (1 + std::abs(lhs))) return "not linear";
    }
    return {};
  });

  check("components_pairwise_disconnected", [&]() -> std::string {
    const auto comps = graph_components(d, SimpleSubset::all(n));
    for (std::size_t a = 0; a < comps.size(); ++a)
      for (std::size_t b = a + 1; b < comps.size(); ++b)
        for (int i : comps[a])
          for (int j : comps[b])
            if (std::abs(d.gram()(i, j)) > tol) return "edge between components";
    return {};
  });

  const RootSlice slice = generate_roots(d, opt.depth);

  check("roots_unit_norm", [&]() -> std::string {
    for (const Root& r : slice.roots()) {
      const double q = bilinear(d, r.coords, r.coords);
      if (std::abs(q - 1.0) > 1e-9 * std::max(1.0, r.coords.squaredNorm()))
        return "root with (x,x) = " + std::to_string(q);
    }
    return {};
  });

  check("roots_positive", [&]() -> std::string {
    for (const Root& r : slice.roots())
      if (!is_positive_vector(r.coords, tol)) return "non-positive root in slice";
    return {};
  });

  check("witness_reproduces_root", [&]() -> std::string {
    for (const Root& r : slice.roots()) {
      const Vec back = act(d, r.witness, d.simple_root(r.base));
      if ((back - r.coords).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, r.coords.cwiseAbs().maxCoeff()))
        return "witness mismatch";
      if (static_cast<int>(r.witness.size()) != r.depth) return "witness length differs from depth";
    }
    return {};
  });

  check("support_connected", [&]() -> std::string {
    for (const Root& r : slice.roots())
      if (!is_connected(d, support(r.coords, tol))) return "root with disconnected support";
    return {};
  });

  check("inversion_set_length", [&]() -> std::string {
    for (int s = 0; s < opt.samples; ++s) {
      const Word w1 = random_word(rng, n, 6), w2 = random_word(rng, n, 6);
      Word w12 = w1;
      w12.insert(w12.end(), w2.begin(), w2.end());
      const auto n1 = inversion_set(d, w1), n2 = inversion_set(d, w2), n12 = inversion_set(d, w12);
      if (n1.roots.size() > w1.size()) return "#N(w) exceeds word length";
      if (n1.reduced != (n1.roots.size() == w1.size())) return "reduced flag disagrees with #N(w)";
      if (n12.roots.size() > n1.roots.size() + n2.roots.size()) return "#N(ww') > #N(w) + #N(w')";
      const Mat m = word_matrix(d, w1);
      for (const Vec& x : n1.roots) {
        if (!is_positive_vector(x, tol)) return "inversion set holds a non-positive vector";
        if (!kernels::root_is_negative(Vec(m * x).data(), n)) return "w does not send N(w) negative";
      }
    }
    return {};
  });

  check("act_preserves_form", [&]() -> std::string {
    for (int s = 0; s < opt.samples; ++s) {
      const Word w = random_word(rng, n, 8);
      const Vec u = random_vec(rng, n), v = random_vec(rng, n);
      const double a = bilinear(d, u, v), b = bilinear(d, act(d, w, u), act(d, w, v));
      if (std::abs(a - b) > 1e-8 * (1 + std::abs(a))) return "form not preserved";
    }
    return {};
  });

  check("dominance_criterion", [&]() -> std::string {
    const RootSlice small = slice.truncated(std::min(opt.depth, 4));
    const std::size_t m = small.size();
    Mat both(n, static_cast<Eigen::Index>(2 * m));
    both.leftCols(static_cast<Eigen::Index>(m)) = small.coord_matrix();
    both.rightCols(static_cast<Eigen::Index>(m)) = -small.coord_matrix();
    const DominanceTable table(d, both, opt.search_len);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        const DominanceVerdict v = table.verdict(i, j);
        const bool comparable = v.value >= 1.0 - tol;
        if (v.certified && comparable && v.relation == Relation::none)
          return "search refutes both directions of a pair with (x,y) >= 1";
        if (v.certified && v.relation == Relation::first_dominates) {
          const DominanceVerdict neg = table.verdict(m + j, m + i);
          if (neg.relation != Relation::first_dominates) return "-y dom -x fails";
        }
      }
    return {};
  });

  check("canonical_criterion", [&]() -> std::string {
    if (slice.size() < 2) return {};
    std::uniform_int_distribution<std::size_t> pick(0, slice.size() - 1);
    for (int s = 0; s < opt.samples; ++s) {
      const std::size_t i = pick(rng), j = pick(rng);
      if (i == j) continue;
      const CanonicalSet c = canonicalize(d, {slice[i].coords, slice[j].coords});
      if (!satisfies_canonical_criterion(d, c.roots)) return "canonicalize output violates the criterion";
    }
    return {};
  });

  check("normalized_roots_in_simplex", [&]() -> std::string {
    for (const Root& r : slice.roots()) {
      const Vec p = normalize(r.coords, tol);
      if (p.minCoeff() < -tol || p.maxCoeff() > 1 + tol) return "normalized root outside the simplex";
      if (std::abs(p.sum() - 1.0) > tol) return "normalized root off V1";
    }
    return {};
  });

  check("dot_action_composes", [&]() -> std::string {
    for (const Root& r : slice.roots()) {
      const Vec x = normalize(r.coords, tol);
      const Word w1 = random_word(rng, n, 3), w2 = random_word(rng, n, 3);
      Word w12 = w1;
      w12.insert(w12.end(), w2.begin(), w2.end());
      const Vec a = dot_act(d, w12, x), b = dot_act(d, w1, dot_act(d, w2, x));
      if ((a - b).cwiseAbs().maxCoeff() > 1e-9) return "dot action does not compose";
    }
    return {};
  });

  check("reduce_fixes_fundamental_domain", [&]() -> std::string {
    if (n > 20) return {};
    for (const SimpleSubset& m : affine_standard_parabolics(d)) {
      const Vec eta = affine_kernel(d, m);
      if (!in_K(d, eta)) return {};  // kernel points of a proper parabolic need not lie in K
      const Reduction r = reduce_to_K(d, eta);
      if (!r.word.empty()) return "reduction moved a point of K";
      for (int s = 0; s < 10; ++s) {
        const Word w = random_word(rng, n, 6);
        const Reduction back = reduce_to_K(d, dot_act(d, w, eta));
        if ((back.point - eta).cwiseAbs().maxCoeff() > 1e-9) return "orbit point reduces elsewhere";
      }
    }
    return {};
  });

  check("cluster_centers_isotropic", [&]() -> std::string {
    if (opt.depth < 2) return {};
    for (const Cluster& c : approx_limit_roots(slice))
      if (c.isotropy_defect > 0.05) return "cluster center far from the isotropic cone";
    return {};
  });

  return out;
}

}  // namespace coxlim
