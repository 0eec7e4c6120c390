#pragma once

#include "coxlim/datum.hpp"
#include "coxlim/kernels.hpp"

#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

namespace coxlim {

/// Sequence of simple-reflection indices. As a group element the word
/// s_1 s_2 ... s_k acts right to left: the last letter is applied first.
using Word = std::vector<int>;

struct Root {
  Vec coords;
  bool positive = true;
  /// Length of `witness`. For roots coming out of generate_roots this is the
  /// minimal one; other producers document what they put here.
  int depth = 0;
  /// Word w with coords = w(a) for the simple root a = `base`.
  Word witness;
  int base = 0;
};

/// Positive with tolerance: no coordinate below -tol and one above tol.
bool is_positive_vector(const Vec& v, double tol);
bool is_negative_vector(const Vec& v, double tol);

/// Hash map keyed by coordinates rounded to 1e-6, with a tolerance compare
/// to settle collisions and rounding-boundary splits.
class CoordIndex {
 public:
  explicit CoordIndex(double tol = kDefaultTolerance) : tol_(tol) {}

  std::optional<std::size_t> find(const Vec& v) const;
  /// Inserts `v` under `id`; returns the existing id if an equal vector is present.
  std::optional<std::size_t> insert(const Vec& v, std::size_t id);
  std::size_t size() const { return stored_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<long long>& k) const noexcept;
  };
  std::vector<std::vector<long long>> keys_for(const Vec& v) const;
  bool same(const Vec& a, const Vec& b) const;

  double tol_;
  std::unordered_multimap<std::vector<long long>, std::size_t, KeyHash> map_;
  std::vector<Vec> stored_;
  std::vector<std::size_t> ids_;
};

struct RootOptions {
  std::size_t max_roots = std::size_t{1} << 21;
  int depth_cap = 40;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// All positive roots of depth <= max_depth, in BFS order: by depth, then
/// by (parent index, reflection index) within a level.
class RootSlice {
 public:
  RootSlice(const CoxeterDatum& d, int max_depth) : datum_(d), max_depth_(max_depth) {}

  const CoxeterDatum& datum() const noexcept { return datum_; }
  int max_depth() const noexcept { return max_depth_; }
  std::size_t size() const noexcept { return roots_.size(); }
  bool empty() const noexcept { return roots_.empty(); }
  const Root& operator[](std::size_t i) const { return roots_[i]; }
  const std::vector<Root>& roots() const noexcept { return roots_; }

  /// Index of the BFS parent (x = s_i parent), or -1 for simple roots.
  long parent(std::size_t i) const { return parent_[i]; }

  /// Range [begin, end) of indices with the given depth.
  std::pair<std::size_t, std::size_t> level(int depth) const;
  /// Deepest depth actually present (can be < max_depth for finite groups).
  int deepest() const noexcept { return static_cast<int>(level_begin_.size()) - 2; }

  std::optional<std::size_t> find(const Vec& coords) const { return index_.find(coords); }

  /// Coordinates as columns of a rank x size matrix.
  Mat coord_matrix() const;

  /// The roots of depth <= depth, as a new slice (prefix of this one).
  RootSlice truncated(int depth) const;

 private:
  friend RootSlice generate_roots(const CoxeterDatum&, int, const RootOptions&);
  void push(Root r, long parent);

  CoxeterDatum datum_;
  int max_depth_;
  std::vector<Root> roots_;
  std::vector<long> parent_;
  std::vector<std::size_t> level_begin_{0};
  CoordIndex index_;
};

/// v - 2 (v,x)/(x,x) x. Throws DomainError when x is isotropic.
Vec reflect(const CoxeterDatum& d, const Vec& x, const Vec& v);

/// s_i v, which only changes coordinate i.
void reflect_simple_inplace(const CoxeterDatum& d, int i, Vec& v);

RootSlice generate_roots(const CoxeterDatum& d, int max_depth, const RootOptions& opt = {});

/// w v with the rightmost letter applied first.
Vec act(const CoxeterDatum& d, const Word& w, const Vec& v);

/// Matrix of w in the basis of simple roots.
Mat word_matrix(const CoxeterDatum& d, const Word& w);

struct InversionSet {
  std::vector<Vec> roots;
  bool reduced = true;
};

/// N(w) = {x positive : w x negative}, built one letter at a time.
InversionSet inversion_set(const CoxeterDatum& d, const Word& w);

SimpleSubset support(const Vec& x, double tol = kDefaultTolerance);

/// A positive root whose support is all of Pi, grown from simple root
/// `start`. At each step the first index in `preference` (then in index
/// order) outside the support and joined to it is reflected in. `depth`
/// of the result is the length of the word used, not necessarily minimal.
Root full_support_root(const CoxeterDatum& d, int start = 0, const std::vector<int>& preference = {});

/// Tab separated: depth, one field per coordinate (6 decimals), witness word.
void write_root_line(std::ostream& os, const Root& r);

std::string format_word(const Word& w);

}  // namespace coxlim
