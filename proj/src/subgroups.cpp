#include "coxlim/subgroups.hpp"

#include "coxlim/error.hpp"
#include "coxlim/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace coxlim {

namespace {

bool same_vector(const Vec& a, const Vec& b, double tol) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    if (std::abs(a[i] - b[i]) > tol * scale) return false;
  }
  return true;
}

bool lex_greater(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return true;
    if (a[i] < b[i]) return false;
  }
  return false;
}

Vec make_positive(const Vec& v) {
  return kernels::root_is_negative(v.data(), static_cast<int>(v.size())) ? Vec(-v) : v;
}

}  // namespace

CanonicalSet make_canonical_set(const CoxeterDatum& d, std::vector<Vec> roots) {
  std::sort(roots.begin(), roots.end(), lex_greater);
  CanonicalSet out;
  out.roots = std::move(roots);
  const Eigen::Index k = static_cast<Eigen::Index>(out.roots.size());
  out.values.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) out.values(i, j) = bilinear(d, out.roots[i], out.roots[j]);
  return out;
}

bool canonical_value(double value, double tol) {
  if (value <= -1.0 + tol) return true;
  if (value > tol) return false;
  // value in (-1, 0]: must be -cos(pi/n)
  const double c = std::clamp(-value, 0.0, 1.0);
  const double n = std::numbers::pi / std::acos(c);
  for (double cand : {std::floor(n), std::ceil(n)}) {
    if (cand < 2) continue;
    if (std::abs(-std::cos(std::numbers::pi / cand) - value) <= tol) return true;
  }
  return false;
}

bool satisfies_canonical_criterion(const CoxeterDatum& d, const std::vector<Vec>& roots) {
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (!canonical_value(bilinear(d, roots[i], roots[j]), d.tolerance())) return false;
  return true;
}

CanonicalSet dihedral_canonical_pair(const CoxeterDatum& d, const Vec& x_in, const Vec& y_in,
                                     int budget) {
  const double tol = d.tolerance();
  const Vec x = make_positive(x_in);
  const Vec y = make_positive(y_in);
  if (same_vector(x, y, tol)) return make_canonical_set(d, {x});

  // Coordinates (s, t) with v = s x + t y.
  Eigen::Matrix<double, Eigen::Dynamic, 2> basis(d.rank(), 2);
  basis.col(0) = x;
  basis.col(1) = y;
  const auto qr = basis.colPivHouseholderQr();
  auto angle = [&](const Vec& v) {
    const Eigen::Vector2d st = qr.solve(v);
    return std::atan2(st[1], st[0]);
  };

  std::vector<Vec> found{x, y};
  std::vector<double> angles{0.0, angle(y)};
  CoordIndex seen(tol);
  seen.insert(x, 0);
  seen.insert(y, 1);
  std::size_t lo_idx = 0, hi_idx = 1;
  std::vector<std::size_t> frontier{0, 1};
  int quiet_rounds = 0;
  for (int round = 0;; ++round) {
    if (frontier.empty() || quiet_rounds >= 2) break;
    if (round >= budget)
      throw BudgetExhausted("dihedral closure did not stabilize within " +
                            std::to_string(budget) + " rounds");
    std::vector<std::size_t> next;
    for (std::size_t k : frontier) {
      for (const Vec* r : {&x, &y}) {
        Vec u = make_positive(reflect(d, *r, found[k]));
        if (seen.find(u)) continue;
        seen.insert(u, found.size());
        next.push_back(found.size());
        angles.push_back(angle(u));
        found.push_back(std::move(u));
      }
    }
    const std::size_t old_lo = lo_idx, old_hi = hi_idx;
    for (std::size_t k : next) {
      if (angles[k] < angles[lo_idx]) lo_idx = k;
      if (angles[k] > angles[hi_idx]) hi_idx = k;
    }
    quiet_rounds = (lo_idx == old_lo && hi_idx == old_hi) ? quiet_rounds + 1 : 0;
    frontier = std::move(next);
  }
  return make_canonical_set(d, {found[lo_idx], found[hi_idx]});
}

CanonicalSet canonicalize(const CoxeterDatum& d, const std::vector<Vec>& delta, int budget) {
  if (delta.empty()) throw InputError("canonicalize needs at least one root");
  const double tol = d.tolerance();
  std::vector<Vec> work;
  auto add = [&](const Vec& v) {
    const Vec p = make_positive(v);
    for (const Vec& w : work)
      if (same_vector(w, p, tol)) return;
    work.push_back(p);
  };
  for (const Vec& v : delta) {
    if (v.size() != d.rank()) throw InputError("root length does not match rank");
    add(v);
  }

  const long limit = static_cast<long>(budget) * static_cast<long>(work.size() + 1);
  for (long step = 0;; ++step) {
    std::size_t bi = 0, bj = 0;
    bool bad = false;
    for (std::size_t i = 0; i < work.size() && !bad; ++i)
      for (std::size_t j = i + 1; j < work.size() && !bad; ++j)
        if (!canonical_value(bilinear(d, work[i], work[j]), tol)) {
          bi = i;
          bj = j;
          bad = true;
        }
    if (!bad) break;
    if (step >= limit)
      throw BudgetExhausted("canonicalize did not converge within " + std::to_string(limit) +
                            " replacements");
    const CanonicalSet pair = dihedral_canonical_pair(d, work[bi], work[bj], budget);
    work.erase(work.begin() + static_cast<long>(bj));
    work.erase(work.begin() + static_cast<long>(bi));
    for (const Vec& r : pair.roots) add(r);
  }
  return make_canonical_set(d, std::move(work));
}

std::string to_string(ParabolicKind k) {
  switch (k) {
    case ParabolicKind::finite: return "finite";
    case ParabolicKind::affine: return "affine";
    case ParabolicKind::indefinite: return "indefinite";
  }
  return "?";
}

ParabolicType classify_parabolic(const CoxeterDatum& d, const SimpleSubset& m) {
  if (m.empty()) throw DomainError("empty subset");
  for (int i : m)
    if (i < 0 || i >= d.rank()) throw InputError("subset index out of range");
  if (!is_connected(d, m)) throw DomainError("subset is not connected; classify each component");
  const auto& mem = m.members();
  const Eigen::Index k = static_cast<Eigen::Index>(mem.size());
  Mat g(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) g(i, j) = d.gram()(mem[i], mem[j]);
  const Eigen::SelfAdjointEigenSolver<Mat> es(g);
  if (es.info() != Eigen::Success) throw DegenerateSpectrum("eigen-decomposition failed");
  const double tol = d.tolerance();
  ParabolicType out;
  out.min_eigenvalue = es.eigenvalues()[0];
  if (out.min_eigenvalue > tol) {
    out.kind = ParabolicKind::finite;
  } else if (out.min_eigenvalue < -tol) {
    out.kind = ParabolicKind::indefinite;
  } else {
    if (k > 1 && std::abs(es.eigenvalues()[1]) <= tol)
      throw DegenerateSpectrum("kernel of a connected subset is more than one-dimensional");
    Vec v = es.eigenvectors().col(0);
    if (v.sum() < 0) v = -v;
    if (v.minCoeff() <= tol)
      throw DegenerateSpectrum("smallest eigenvalue " + std::to_string(out.min_eigenvalue) +
                               " is within tolerance of zero but its eigenvector changes sign");
    out.kind = ParabolicKind::affine;
    out.kernel = v / v.sum();
  }
  return out;
}

Vec affine_kernel(const CoxeterDatum& d, const SimpleSubset& m) {
  const ParabolicType t = classify_parabolic(d, m);
  if (t.kind != ParabolicKind::affine) throw DomainError("subset is not of affine type");
  Vec full = Vec::Zero(d.rank());
  Eigen::Index k = 0;
  for (int i : m) full[i] = (*t.kernel)[k++];
  return full;
}

std::vector<SimpleSubset> affine_standard_parabolics(const CoxeterDatum& d, int rank_cap) {
  const int n = d.rank();
  if (n > rank_cap)
    throw BudgetExhausted("rank " + std::to_string(n) + " exceeds the subset enumeration cap " +
                          std::to_string(rank_cap));
  std::vector<SimpleSubset> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<int> mem;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) mem.push_back(i);
    SimpleSubset s(std::move(mem));
    if (!is_connected(d, s)) continue;
    if (classify_parabolic(d, s).kind == ParabolicKind::affine) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_affine_dihedral(const CoxeterDatum& d, const CanonicalSet& pair) {
  if (pair.size() != 2) throw InputError("a dihedral pair needs exactly two roots");
  return std::abs(bilinear(d, pair.roots[0], pair.roots[1]) + 1.0) <= d.tolerance();
}

std::optional<std::pair<std::size_t, std::size_t>> find_nonaffine_dihedral(
    const CoxeterDatum& d, const RootSlice& slice) {
  const Mat x = slice.coord_matrix();
  const Mat v = kernels::pairwise_form(kernels::Exec::parallel, d.gram(), x, x);
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    for (Eigen::Index j = i + 1; j < v.cols(); ++j)
      if (v(i, j) <= -1.0 - d.tolerance())
        return std::pair{static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
  return std::nullopt;
}

HostParabolic host_parabolic(const CoxeterDatum& d, const CanonicalSet& pair, int max_iter) {
  if (!is_affine_dihedral(d, pair)) throw DomainError("pair does not generate an affine dihedral subgroup");
  const Vec eta = normalize(pair.roots[0] + pair.roots[1], d.tolerance());
  Reduction red = reduce_to_K(d, eta, max_iter);
  HostParabolic out;
  out.conjugator = red.word;
  out.host = support(red.point, kIsoTolerance);
  out.reduced_point = red.point;
  for (const Vec& r : pair.roots) out.conjugated_roots.push_back(act(d, red.word, r));

  if (!is_connected(d, out.host) || classify_parabolic(d, out.host).kind != ParabolicKind::affine)
    throw DomainError("reduced point has a support that is not a connected affine subset");
  for (const Vec& r : out.conjugated_roots)
    for (Eigen::Index i = 0; i < r.size(); ++i)
      if (std::abs(r[i]) > kIsoTolerance * std::max(1.0, r.cwiseAbs().maxCoeff()) &&
          !out.host.contains(static_cast<int>(i)))
        throw DomainError("conjugated generator leaves the host parabolic");
  return out;
}

}  // namespace coxlim
