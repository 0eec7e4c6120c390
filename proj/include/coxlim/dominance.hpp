#pragma once

#include "coxlim/kernels.hpp"
#include "coxlim/roots.hpp"

#include <map>
#include <string>
#include <vector>

namespace coxlim {

enum class Relation { none, first_dominates, second_dominates, equal };

std::string to_string(Relation r);

struct DominanceVerdict {
  Relation relation = Relation::none;
  /// false when neither direction was refuted inside the search ball and the
  /// direction was guessed (larger coordinate sum wins).
  bool certified = true;
  double value = 0.0;  // (x, y)
};

inline constexpr int kDefaultSearchLen = 12;

/// Distinct group elements of length <= search_len, as matrices.
class OrbitBall {
 public:
  OrbitBall(const CoxeterDatum& d, int search_len, std::size_t max_elements = std::size_t{1} << 18);

  int search_len() const noexcept { return search_len_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Mat>& elements() const noexcept { return elements_; }
  const Word& word(std::size_t k) const { return words_[k]; }

 private:
  int search_len_;
  std::vector<Mat> elements_;
  std::vector<Word> words_;
};

/// Precomputed sign tables for a fixed list of roots.
class DominanceTable {
 public:
  DominanceTable(const CoxeterDatum& d, const Mat& roots, int search_len,
                 kernels::Exec exec = kernels::Exec::parallel);

  std::size_t size() const noexcept { return static_cast<std::size_t>(roots_.cols()); }
  const Mat& values() const noexcept { return values_; }
  const OrbitBall& ball() const noexcept { return ball_; }

  DominanceVerdict verdict(std::size_t i, std::size_t j) const;

  /// Ball index of an element sending root i negative and root j positive,
  /// or -1. A hit refutes "i dominates j".
  long refuting_element(std::size_t i, std::size_t j) const;

 private:
  const CoxeterDatum* datum_;
  Mat roots_;
  Mat values_;
  OrbitBall ball_;
  std::vector<kernels::Bits> negative_;
};

DominanceVerdict dominance_between(const CoxeterDatum& d, const Vec& x, const Vec& y,
                                   int search_len = kDefaultSearchLen);

namespace reference {
/// Breadth-first walk over the pair (w x, w y) for every w of length <=
/// search_len, independent of OrbitBall and the sign-table kernel.
DominanceVerdict dominance_between(const CoxeterDatum& d, const Vec& x, const Vec& y,
                                   int search_len = kDefaultSearchLen);
}  // namespace reference

struct DominatedSet {
  std::vector<std::size_t> members;  // certified, slice indices
  std::vector<std::size_t> uncertified;
};

DominatedSet dominated_set(const CoxeterDatum& d, const Vec& x, const RootSlice& slice,
                           int search_len = kDefaultSearchLen);

struct DnPartition {
  /// n -> slice indices of roots dominating exactly n others in the slice.
  std::map<int, std::vector<std::size_t>> classes;
  std::vector<int> counts;
  /// Counts are lower bounds for the true n (the slice is finite).
  bool lower_bounds = true;
  /// Per root: same count when the slice is cut one level shallower. Roots
  /// on the deepest level are never marked stable.
  std::vector<char> root_stable;
  bool stabilized = false;
  std::vector<std::pair<std::size_t, std::size_t>> uncertified;
};

DnPartition partition_Dn(const CoxeterDatum& d, const RootSlice& slice,
                         int search_len = kDefaultSearchLen,
                         kernels::Exec exec = kernels::Exec::parallel);

}  // namespace coxlim
