#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coxlim {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kDefaultTolerance = 1e-9;

/// Label of the edge between two simple roots. `order == 0` encodes an
/// infinite bond whose form value is `value` (<= -1); otherwise `value` is
/// -cos(pi / order).
struct Bond {
  int order = 2;
  double value = 0.0;

  bool infinite() const noexcept { return order == 0; }
  static Bond finite(int m);
  static Bond infinite_with(double c);
};

/// Set of simple-root indices, kept sorted and duplicate free.
class SimpleSubset {
 public:
  SimpleSubset() = default;
  explicit SimpleSubset(std::vector<int> members);

  static SimpleSubset all(int rank);

  const std::vector<int>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(int i) const;

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  friend bool operator==(const SimpleSubset&, const SimpleSubset&) = default;
  friend auto operator<=>(const SimpleSubset&, const SimpleSubset&) = default;

 private:
  std::vector<int> members_;
};

/// The realized Coxeter datum (V, Pi, (,)) with Pi the standard basis of R^n.
///
/// Immutable after construction. The Gram matrix has ones on the diagonal and
/// the bond values off the diagonal.
class CoxeterDatum {
 public:
  /// `bonds` is an n x n table; only the strict upper triangle is read.
  CoxeterDatum(int rank, const std::vector<std::vector<Bond>>& bonds,
               double tolerance = kDefaultTolerance);

  int rank() const noexcept { return rank_; }
  const Mat& gram() const noexcept { return gram_; }
  const Bond& bond(int i, int j) const { return bonds_[i][j]; }
  double tolerance() const noexcept { return tolerance_; }

  const std::string& name(int i) const { return names_[i]; }
  void set_name(int i, std::string label);

  /// Index of the simple root labelled `label`, if any.
  std::optional<int> index_of(std::string_view label) const;

  /// Restriction of the datum to the simple roots in `subset`, reindexed
  /// 0..|subset|-1 in ascending member order. Names are carried over.
  CoxeterDatum restricted(const SimpleSubset& subset) const;

  Vec simple_root(int i) const;

 private:
  int rank_;
  double tolerance_;
  std::vector<std::vector<Bond>> bonds_;
  std::vector<std::string> names_;
  Mat gram_;
};

/// Parse the line-oriented datum format:
///
///   rank <n>
///   bond <i> <j> <m>            (integer m >= 2)
///   bond <i> <j> inf [c]        (real c <= -1, default -1)
///   name <i> <label>
///
/// `#` starts a comment. Unlisted pairs commute (m = 2).
CoxeterDatum parse_datum(std::string_view text,
                         double tolerance = kDefaultTolerance);

CoxeterDatum load_datum(const std::string& path,
                        double tolerance = kDefaultTolerance);

/// u^T G v. Throws InputError on length mismatch.
double bilinear(const CoxeterDatum& d, const Vec& u, const Vec& v);

/// Connected components of the Coxeter graph restricted to `subset`, each
/// sorted, ordered by smallest member.
std::vector<SimpleSubset> graph_components(const CoxeterDatum& d,
                                           const SimpleSubset& subset);

bool is_connected(const CoxeterDatum& d, const SimpleSubset& subset);

}  // namespace coxlim
