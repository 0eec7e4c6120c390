#pragma once

// Shared helpers and brute-force oracles for the test programs. The oracles
// only use the Gram matrix and plain loops, never the library's search code.

#include "coxlim/datum.hpp"
#include "coxlim/roots.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

using coxlim::Mat;
using coxlim::Vec;

inline coxlim::CoxeterDatum corpus(const std::string& name) {
  return coxlim::load_datum(std::string(COXLIM_DATA_DIR) + "/" + name + ".cox");
}

inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names{"a2",  "b2",     "h3",     "dih_inf1", "dih15",
                                              "afftilde2", "twin_affine", "tri101", "univ3"};
  return names;
}

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline bool close(const Vec& a, const Vec& b, double tol = 1e-9) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

// Simple reflection written out from the definition v - 2 (v, a_i) a_i.
inline Vec oracle_reflect(const Mat& g, int i, const Vec& v) {
  Vec out = v;
  double form = 0;
  for (Eigen::Index j = 0; j < v.size(); ++j) form += g(i, j) * v[j];
  out[i] -= 2 * form;
  return out;
}

inline Vec oracle_apply(const Mat& g, const std::vector<int>& word, const Vec& v) {
  Vec out = v;
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = oracle_reflect(g, *it, out);
  return out;
}

inline bool oracle_positive(const Vec& v) { return v.minCoeff() > -1e-9 && v.maxCoeff() > 1e-9; }

struct OracleRoot {
  Vec coords;
  int depth;
};

// Every word of length <= k applied to every simple root; positive images
// kept with the shortest word length that produced them. Quadratic dedup.
inline std::vector<OracleRoot> oracle_roots(const coxlim::CoxeterDatum& d, int k) {
  const int n = d.rank();
  std::vector<OracleRoot> out;
  std::vector<std::vector<int>> words{{}};
  for (int len = 0; len <= k; ++len) {
    for (const auto& w : words) {
      for (int a = 0; a < n; ++a) {
        const Vec x = oracle_apply(d.gram(), w, d.simple_root(a));
        if (!oracle_positive(x)) continue;
        bool seen = false;
        for (auto& r : out)
          if (close(r.coords, x, 1e-7)) {
            seen = true;
            break;
          }
        if (!seen) out.push_back({x, len});
      }
    }
    if (len == k) break;
    std::vector<std::vector<int>> next;
    for (const auto& w : words)
      for (int a = 0; a < n; ++a) {
        if (!w.empty() && w.front() == a) continue;
        auto v = w;
        v.insert(v.begin(), a);
        next.push_back(std::move(v));
      }
    words = std::move(next);
  }
  return out;
}

inline std::vector<int> random_word(std::mt19937& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), letter(0, rank - 1);
  std::vector<int> w(static_cast<std::size_t>(len(rng)));
  for (int& x : w) x = letter(rng);
  return w;
}

inline Vec random_vec(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(-1, 1);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

}  // namespace testing_support
