#pragma once

#include "coxlim/roots.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace coxlim {

/// Positive roots meant as canonical generators of a reflection subgroup.
/// Roots are kept in descending lexicographic order of coordinates, so
/// simple roots come out in index order.
struct CanonicalSet {
  std::vector<Vec> roots;
  Mat values;  // pairwise form values, same order as `roots`

  std::size_t size() const noexcept { return roots.size(); }
};

CanonicalSet make_canonical_set(const CoxeterDatum& d, std::vector<Vec> roots);

/// Value allowed between two canonical generators: -cos(pi/n) for some
/// n >= 2, or anything <= -1.
bool canonical_value(double value, double tol = kDefaultTolerance);

bool satisfies_canonical_criterion(const CoxeterDatum& d, const std::vector<Vec>& roots);

inline constexpr int kDefaultClosureBudget = 64;

/// Canonical roots of the subgroup generated by r_x and r_y. Size 1 when the
/// two reflections coincide.
CanonicalSet dihedral_canonical_pair(const CoxeterDatum& d, const Vec& x, const Vec& y,
                                     int budget = kDefaultClosureBudget);

/// Canonical roots of the subgroup generated by the reflections in `delta`.
/// Negative inputs are replaced by their negatives.
CanonicalSet canonicalize(const CoxeterDatum& d, const std::vector<Vec>& delta,
                          int budget = kDefaultClosureBudget);

enum class ParabolicKind { finite, affine, indefinite };

std::string to_string(ParabolicKind k);

struct ParabolicType {
  ParabolicKind kind = ParabolicKind::finite;
  /// Positive kernel vector of the restricted Gram matrix, |.|_1 = 1,
  /// indexed like the members of the subset. Present iff affine.
  std::optional<Vec> kernel;
  double min_eigenvalue = 0.0;
};

/// Throws DomainError for an empty or disconnected subset and
/// DegenerateSpectrum when the smallest eigenvalue is numerically zero
/// but its eigenvector changes sign.
ParabolicType classify_parabolic(const CoxeterDatum& d, const SimpleSubset& m);

/// Kernel vector of an affine connected subset, extended by zeros to rank n.
Vec affine_kernel(const CoxeterDatum& d, const SimpleSubset& m);

/// Every connected affine subset of Pi, in lexicographic order.
std::vector<SimpleSubset> affine_standard_parabolics(const CoxeterDatum& d, int rank_cap = 20);

bool is_affine_dihedral(const CoxeterDatum& d, const CanonicalSet& pair);

/// First pair (in slice order) with form value <= -1 - tol.
std::optional<std::pair<std::size_t, std::size_t>> find_nonaffine_dihedral(
    const CoxeterDatum& d, const RootSlice& slice);

struct HostParabolic {
  Word conjugator;          // w with w . eta in the fundamental domain
  SimpleSubset host;        // supp(w . eta)
  Vec reduced_point;        // w . eta
  std::vector<Vec> conjugated_roots;  // w a', w b'
};

/// Locates the affine standard parabolic that the affine dihedral subgroup
/// of `pair` is conjugated into.
HostParabolic host_parabolic(const CoxeterDatum& d, const CanonicalSet& pair,
                             int max_iter = 10000);

}  // namespace coxlim
