#pragma once

#include "coxlim/kernels.hpp"
#include "coxlim/roots.hpp"
#include "coxlim/subgroups.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coxlim {

/// Tolerance for "isotropic" on approximate points.
inline constexpr double kIsoTolerance = 1e-6;
inline constexpr int kDefaultReduceIter = 10000;

/// v / (sum of coordinates). Throws DomainError when the sum is ~0.
Vec normalize(const Vec& v, double tol = kDefaultTolerance);

/// normalize(w x).
Vec dot_act(const CoxeterDatum& d, const Word& w, const Vec& x);

struct PosEstimate {
  std::size_t count = 0;
  bool stabilized = false;
};

enum class LimitKind { affine, afftype_sum, nonaffine, unresolved };

std::string to_string(LimitKind k);

struct LimitPoint {
  Vec coords;
  LimitKind kind = LimitKind::unresolved;
  SimpleSubset host;                      // affine
  std::vector<SimpleSubset> components;   // afftype_sum
  std::vector<double> weights;            // afftype_sum
  Word reducer;                           // affine, afftype_sum
  std::optional<PosEstimate> pos;
  std::string note;
};

struct Cluster {
  Vec center;
  /// Slice indices of the roots whose limit estimates landed here.
  std::vector<std::size_t> members;
  double radius = 0.0;
  double isotropy_defect = 0.0;  // |(center, center)|
  int max_member_depth = 0;
};

/// Clusters of limit estimates for roots with depth in [min_depth,
/// max_depth]; min_depth < 0 means max_depth / 2. A root's estimate is where
/// the line through its normalized BFS parent and itself meets the
/// normalized isotropic cone, nearest the root. Empty for finite groups.
std::vector<Cluster> approx_limit_roots(const RootSlice& slice, int min_depth = -1,
                                        double cluster_eps = 1e-2,
                                        kernels::Exec exec = kernels::Exec::parallel);

std::vector<Cluster> approx_limit_roots(const CoxeterDatum& d, int max_depth, int min_depth = -1,
                                        double cluster_eps = 1e-2,
                                        kernels::Exec exec = kernels::Exec::parallel);

/// Normalized kernel point of a connected affine subset.
LimitPoint affine_limit_root(const CoxeterDatum& d, const SimpleSubset& m);

/// 0, 1 or 2 points; for two, the one weighted toward the first root comes first.
std::vector<Vec> dihedral_limit_roots(const CoxeterDatum& d, const CanonicalSet& pair);

/// c_0 = 0, c_1 = 1, c_{i+1} = 2 cosh c_i - c_{i-1}.
double chebyshev_coeff(int i, double cosh_theta);

/// Roots x in the slice with (eta, x) > tol. Stabilized when none of them is
/// on the deepest two levels, or the slice already holds every positive root.
PosEstimate pos_count(const CoxeterDatum& d, const Vec& eta, const RootSlice& slice,
                      kernels::Exec exec = kernels::Exec::parallel, double tol = -1.0);

bool in_K(const CoxeterDatum& d, const Vec& v);

struct Reduction {
  Word word;   // w with point = w . eta
  Vec point;
};

/// Greedy descent into the fundamental domain. Throws BudgetExhausted after
/// max_iter steps, on revisiting a point, or when an isotropic input drifts
/// off the isotropic cone; DomainError if the image leaves the domain of
/// normalization. `tol` (default: the datum's) is the violation threshold;
/// approximate points such as cluster centers need a looser one.
Reduction reduce_to_K(const CoxeterDatum& d, const Vec& eta, int max_iter = kDefaultReduceIter,
                      double tol = -1.0);

LimitPoint classify_limit_root(const CoxeterDatum& d, const Vec& eta, const RootSlice& slice,
                               int max_iter = kDefaultReduceIter, double tol = -1.0);

struct ConvexSequence {
  std::vector<Root> roots;            // step n = 1..steps; depth is -1 (unknown)
  std::vector<std::vector<long>> ell; // per step, per component
  Vec target;                         // sum of weight_i * eta_i
};

/// Roots whose normalizations approach the convex combination of the
/// components' affine limit roots.
ConvexSequence afftype_convex_sequence(const CoxeterDatum& d,
                                       const std::vector<SimpleSubset>& components,
                                       const std::vector<double>& weights, int steps);

}  // namespace coxlim
