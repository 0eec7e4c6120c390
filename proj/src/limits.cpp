#include "coxlim/limits.hpp"

#include "coxlim/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace coxlim {

Vec normalize(const Vec& v, double tol) {
  const double s = v.sum();
  if (std::abs(s) <= tol) throw DomainError("vector has coordinate sum ~0 and cannot be normalized");
  return v / s;
}

Vec dot_act(const CoxeterDatum& d, const Word& w, const Vec& x) {
  return normalize(act(d, w, x), d.tolerance());
}

std::string to_string(LimitKind k) {
  switch (k) {
    case LimitKind::affine: return "AffineLimit";
    case LimitKind::afftype_sum: return "AffTypeSum";
    case LimitKind::nonaffine: return "NonAffineType";
    case LimitKind::unresolved: return "Unresolved";
  }
  return "?";
}

// ---------------------------------------------------------------------------

std::vector<Cluster> approx_limit_roots(const RootSlice& slice, int min_depth, double cluster_eps,
                                        kernels::Exec exec) {
  const CoxeterDatum& d = slice.datum();
  const int max_depth = slice.max_depth();
  if (min_depth < 0) min_depth = max_depth / 2;
  min_depth = std::max(min_depth, 1);
  if (max_depth < 1 || min_depth > max_depth)
    throw InputError("need 1 <= min_depth <= max_depth");
  if (!(cluster_eps > 0)) throw InputError("cluster radius must be positive");

  // A finite group runs out of roots before the requested depth.
  if (slice.deepest() < max_depth) return {};

  // deepest level first, slice order within a level
  std::vector<std::size_t> order;
  for (int depth = max_depth; depth >= min_depth; --depth) {
    const auto [lo, hi] = slice.level(depth);
    for (std::size_t i = lo; i < hi; ++i) order.push_back(i);
  }
  if (order.empty()) return {};

  const int n = d.rank();
  Mat parents(n, static_cast<Eigen::Index>(order.size()));
  Mat points(n, static_cast<Eigen::Index>(order.size()));
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Eigen::Index c = static_cast<Eigen::Index>(k);
    points.col(c) = normalize(slice[order[k]].coords);
    parents.col(c) = normalize(slice[static_cast<std::size_t>(slice.parent(order[k]))].coords);
  }
  const kernels::Hits hits = kernels::isotropic_hits(exec, d.gram(), parents, points, 1e-10);

  std::vector<Cluster> clusters;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Eigen::Index c = static_cast<Eigen::Index>(k);
    if (!hits.ok[k]) continue;
    const Vec p = hits.points.col(c);
    const int depth = slice[order[k]].depth;
    Cluster* home = nullptr;
    for (Cluster& cl : clusters) {
      if ((cl.center - p).norm() <= cluster_eps) {
        home = &cl;
        break;
      }
    }
    if (!home) {
      clusters.push_back(Cluster{p, {}, 0.0, 0.0, depth});
      home = &clusters.back();
    }
    home->members.push_back(order[k]);
    home->radius = std::max(home->radius, (home->center - p).norm());
    home->max_member_depth = std::max(home->max_member_depth, depth);
  }

  std::vector<Cluster> out;
  for (Cluster& cl : clusters) {
    if (cl.max_member_depth < max_depth - 1) continue;
    cl.isotropy_defect = std::abs(bilinear(d, cl.center, cl.center));
    std::sort(cl.members.begin(), cl.members.end());
    out.push_back(std::move(cl));
  }
  return out;
}

std::vector<Cluster> approx_limit_roots(const CoxeterDatum& d, int max_depth, int min_depth,
                                        double cluster_eps, kernels::Exec exec) {
  RootOptions opt;
  opt.exec = exec;
  return approx_limit_roots(generate_roots(d, max_depth, opt), min_depth, cluster_eps, exec);
}

LimitPoint affine_limit_root(const CoxeterDatum& d, const SimpleSubset& m) {
  LimitPoint out;
  out.coords = affine_kernel(d, m);
  out.kind = LimitKind::affine;
  out.host = m;
  return out;
}

std::vector<Vec> dihedral_limit_roots(const CoxeterDatum& d, const CanonicalSet& pair) {
  if (pair.size() != 2) throw InputError("a dihedral pair needs exactly two roots");
  const double tol = d.tolerance();
  const Vec& a = pair.roots[0];
  const Vec& b = pair.roots[1];
  const double v = bilinear(d, a, b);
  if (v > -1.0 + tol) return {};
  if (v >= -1.0 - tol) return {normalize(a + b, tol)};
  const double ch = -v;
  const double sh = std::sqrt(ch * ch - 1.0);
  return {normalize((ch + sh) * a + b, tol), normalize((ch - sh) * a + b, tol)};
}

double chebyshev_coeff(int i, double cosh_theta) {
  if (i < 0) throw InputError("chebyshev index must be >= 0");
  if (!(cosh_theta >= 1.0)) throw InputError("cosh(theta) must be >= 1");
  double prev = 0.0, cur = 1.0;
  if (i == 0) return 0.0;
  for (int k = 1; k < i; ++k) {
    const double next = 2.0 * cosh_theta * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

PosEstimate pos_count(const CoxeterDatum& d, const Vec& eta, const RootSlice& slice,
                      kernels::Exec exec, double tol) {
  if (eta.size() != d.rank()) throw InputError("point length does not match rank");
  if (tol <= 0) tol = d.tolerance();
  const std::vector<char> flags =
      kernels::positive_pairing(exec, d.gram(), eta, slice.coord_matrix(), tol);
  PosEstimate out;
  out.count = static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1));
  if (slice.deepest() < slice.max_depth()) {
    out.stabilized = true;  // slice holds every positive root
    return out;
  }
  const std::size_t deep_begin = slice.level(std::max(0, slice.max_depth() - 1)).first;
  out.stabilized = std::none_of(flags.begin() + static_cast<long>(deep_begin), flags.end(),
                                [](char f) { return f != 0; });
  return out;
}

bool in_K(const CoxeterDatum& d, const Vec& v) {
  if (v.size() != d.rank()) throw InputError("vector length does not match rank");
  const double tol = d.tolerance();
  return v.minCoeff() >= -tol && (d.gram() * v).maxCoeff() <= tol;
}

Reduction reduce_to_K(const CoxeterDatum& d, const Vec& eta, int max_iter, double tol) {
  if (eta.size() != d.rank()) throw InputError("point length does not match rank");
  if (tol <= 0) tol = d.tolerance();
  Reduction out;
  out.point = normalize(eta, tol);
  const bool isotropic = std::abs(bilinear(d, out.point, out.point)) <= kIsoTolerance;
  CoordIndex visited(tol);
  visited.insert(out.point, 0);
  for (int iter = 0; iter < max_iter; ++iter) {
    const Vec g = d.gram() * out.point;
    int pick = -1;
    for (int i = 0; i < d.rank(); ++i)
      if (g[i] > tol && (pick < 0 || g[i] > g[pick])) pick = i;
    if (pick < 0) return out;
    Vec next = out.point;
    next[pick] -= 2.0 * g[pick];
    out.point = normalize(next, tol);
    out.word.insert(out.word.begin(), pick);
    if (isotropic && std::abs(bilinear(d, out.point, out.point)) > kIsoTolerance)
      throw BudgetExhausted("reduction drifted off the isotropic cone after " +
                            std::to_string(iter + 1) + " steps");
    // The descent is deterministic, so a revisit means it never ends.
    if (visited.find(out.point))
      throw BudgetExhausted("reduction revisits a point after " + std::to_string(iter + 1) +
                            " steps; the orbit never meets the fundamental domain");
    visited.insert(out.point, static_cast<std::size_t>(iter + 1));
  }
  throw BudgetExhausted("reduction did not reach the fundamental domain within " +
                        std::to_string(max_iter) + " steps");
}

LimitPoint classify_limit_root(const CoxeterDatum& d, const Vec& eta_in, const RootSlice& slice,
                               int max_iter, double tol) {
  if (tol <= 0) tol = d.tolerance();
  LimitPoint out;
  out.coords = normalize(eta_in, d.tolerance());
  const double q = bilinear(d, out.coords, out.coords);
  if (std::abs(q) > kIsoTolerance)
    throw DomainError("point is not isotropic: (eta, eta) = " + std::to_string(q));
  out.pos = pos_count(d, out.coords, slice, kernels::Exec::parallel, tol);

  Reduction red;
  try {
    red = reduce_to_K(d, out.coords, max_iter, tol);
  } catch (const BudgetExhausted& e) {
    out.kind = out.pos->stabilized ? LimitKind::unresolved : LimitKind::nonaffine;
    out.note = e.what();
    return out;
  } catch (const DomainError& e) {
    out.kind = out.pos->stabilized ? LimitKind::unresolved : LimitKind::nonaffine;
    out.note = e.what();
    return out;
  }
  out.reducer = red.word;
  const SimpleSubset supp = support(red.point, kIsoTolerance);
  const std::vector<SimpleSubset> comps = graph_components(d, supp);

  std::vector<Vec> kernels_full;
  for (const SimpleSubset& c : comps) {
    const ParabolicType t = classify_parabolic(d, c);
    if (t.kind != ParabolicKind::affine) {
      out.kind = LimitKind::unresolved;
      out.note = "component of the reduced support is " + to_string(t.kind);
      return out;
    }
    kernels_full.push_back(affine_kernel(d, c));
  }

  if (comps.size() == 1) {
    out.kind = LimitKind::affine;
    out.host = comps.front();
    return out;
  }

  Mat basis(d.rank(), static_cast<Eigen::Index>(kernels_full.size()));
  for (std::size_t k = 0; k < kernels_full.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = kernels_full[k];
  const Vec c = basis.colPivHouseholderQr().solve(red.point);
  const double residual = (basis * c - red.point).norm();
  if (residual > kIsoTolerance || c.minCoeff() < -kIsoTolerance) {
    out.kind = LimitKind::unresolved;
    out.note = "reduced point is not a combination of component kernels (residual " +
               std::to_string(residual) + ")";
    return out;
  }
  out.kind = LimitKind::afftype_sum;
  out.components = comps;
  const double total = c.sum();
  for (Eigen::Index k = 0; k < c.size(); ++k) out.weights.push_back(c[k] / total);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Smallest t > 0 with a + t * kernel a root of the affine component, found
// among the component's roots. Gives the imaginary root for that simple root.
Vec imaginary_step(const CoxeterDatum& d, const SimpleSubset& comp, int alpha) {
  const CoxeterDatum sub = d.restricted(comp);
  const Vec k = affine_kernel(d, comp);
  Vec k_sub(sub.rank());
  int local_alpha = -1;
  for (int i = 0; i < sub.rank(); ++i) {
    k_sub[i] = k[comp.members()[i]];
    if (comp.members()[i] == alpha) local_alpha = i;
  }
  const Vec a = sub.simple_root(local_alpha);
  for (int depth = 4; depth <= 40; depth *= 2) {
    const RootSlice slice = generate_roots(sub, depth);
    double best = -1.0;
    for (const Root& r : slice.roots()) {
      const Vec diff = r.coords - a;
      const double t = diff.sum();  // |kernel|_1 = 1
      if (t <= d.tolerance()) continue;
      if ((diff - t * k_sub).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, t)) continue;
      if (best < 0 || t < best) best = t;
    }
    if (best > 0) return best * k;
  }
  throw BudgetExhausted("no translate of the simple root found in the affine component");
}

}  // namespace

ConvexSequence afftype_convex_sequence(const CoxeterDatum& d,
                                       const std::vector<SimpleSubset>& components,
                                       const std::vector<double>& weights, int steps) {
  const double tol = d.tolerance();
  if (components.empty() || components.size() != weights.size())
    throw InputError("need one weight per component");
  if (steps < 1) throw InputError("steps must be >= 1");
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InputError("weights must be nonnegative");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-9) throw InputError("weights must sum to 1");
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!is_connected(d, components[i])) throw DomainError("component is not connected");
    for (std::size_t j = i + 1; j < components.size(); ++j)
      for (int a : components[i])
        for (int b : components[j])
          if (a == b || std::abs(d.gram()(a, b)) > tol)
            throw DomainError("components must be disjoint and mutually orthogonal");
  }

  const Root seed = full_support_root(d);
  const Vec& x = seed.coords;

  struct Part {
    Vec alpha, delta;
    double p, q, delta_mass, weight;
  };
  std::vector<Part> parts;
  ConvexSequence out;
  out.target = Vec::Zero(d.rank());
  for (std::size_t i = 0; i < components.size(); ++i) {
    Part part;
    const int a = components[i].members().front();
    part.alpha = d.simple_root(a);
    part.delta = imaginary_step(d, components[i], a);
    part.p = -2.0 * bilinear(d, x, part.alpha);
    part.q = -2.0 * bilinear(d, x, part.delta);
    part.delta_mass = part.delta.sum();
    part.weight = weights[i];
    if (part.q <= tol) throw DomainError("seed root is orthogonal to a component's imaginary root");
    out.target += weights[i] * normalize(part.delta, tol);
    parts.push_back(part);
  }

  // Reflected mass grows like q * |delta| * l^2; the component growing
  // slowest per unit weight runs at l = n and the others are matched to it.
  std::size_t anchor = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].weight <= 0) continue;
    const double kappa = std::sqrt(parts[i].weight / (parts[i].q * parts[i].delta_mass));
    if (best < 0 || kappa < best) {
      best = kappa;
      anchor = i;
    }
  }
  auto mass = [](const Part& pt, double l) { return (pt.p + l * pt.q) * (1.0 + l * pt.delta_mass); };

  for (int n = 1; n <= steps; ++n) {
    std::vector<long> ell(parts.size(), 0);
    const double target_mass = mass(parts[anchor], n) / parts[anchor].weight;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const Part& pt = parts[i];
      if (pt.weight <= 0) continue;
      if (i == anchor) {
        ell[i] = n;
        continue;
      }
      // (p + l q)(1 + l |delta|) = weight * target_mass
      const double A = pt.q * pt.delta_mass;
      const double B = pt.p * pt.delta_mass + pt.q;
      const double C = pt.p - pt.weight * target_mass;
      const double l = (-B + std::sqrt(std::max(0.0, B * B - 4 * A * C))) / (2 * A);
      ell[i] = std::max(1L, std::lround(l));
    }
    Vec v = x;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (ell[i] == 0) continue;
      const double l = static_cast<double>(ell[i]);
      const Part& pt = parts[i];
      v += (pt.p + l * pt.q) * (pt.alpha + l * pt.delta);
    }
    Root r;
    r.coords = v;
    r.positive = is_positive_vector(v, tol);
    r.depth = -1;
    out.roots.push_back(std::move(r));
    out.ell.push_back(std::move(ell));
  }
  return out;
}

}  // namespace coxlim
