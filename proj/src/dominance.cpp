#include "coxlim/dominance.hpp"

#include "coxlim/error.hpp"

#include <cmath>

namespace coxlim {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::none: return "none";
    case Relation::first_dominates: return "first_dominates";
    case Relation::second_dominates: return "second_dominates";
    case Relation::equal: return "equal";
  }
  return "?";
}

namespace {

bool same_vector(const Vec& a, const Vec& b, double tol) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    if (std::abs(a[i] - b[i]) > tol * scale) return false;
  }
  return true;
}

// `x_refuted`: some tested w has wx < 0 < wy, so x does not dominate y.
DominanceVerdict decide(const Vec& x, const Vec& y, double value, double tol, bool x_refuted,
                        bool y_refuted) {
  DominanceVerdict v;
  v.value = value;
  if (same_vector(x, y, tol)) {
    v.relation = Relation::equal;
    return v;
  }
  if (value < 1.0 - tol) {
    v.relation = Relation::none;
    return v;
  }
  if (x_refuted && y_refuted) {
    // Criterion says comparable but the search refutes both ways.
    v.relation = Relation::none;
  } else if (y_refuted) {
    v.relation = Relation::first_dominates;
  } else if (x_refuted) {
    v.relation = Relation::second_dominates;
  } else {
    v.certified = false;
    v.relation = x.sum() >= y.sum() ? Relation::first_dominates : Relation::second_dominates;
  }
  return v;
}

Vec flatten(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

}  // namespace

// ---------------------------------------------------------------------------

OrbitBall::OrbitBall(const CoxeterDatum& d, int search_len, std::size_t max_elements)
    : search_len_(search_len) {
  if (search_len < 0) throw InputError("search length must be >= 0");
  const int n = d.rank();
  CoordIndex seen(d.tolerance());
  elements_.push_back(Mat::Identity(n, n));
  words_.push_back({});
  seen.insert(flatten(elements_.back()), 0);
  std::size_t lo = 0;
  for (int len = 1; len <= search_len; ++len) {
    const std::size_t hi = elements_.size();
    for (std::size_t k = lo; k < hi; ++k) {
      for (int i = 0; i < n; ++i) {
        if (!words_[k].empty() && words_[k].front() == i) continue;
        Mat m = elements_[k];
        m.row(i) -= 2.0 * (d.gram().row(i) * elements_[k]);
        if (seen.find(flatten(m))) continue;
        if (elements_.size() >= max_elements)
          throw BudgetExhausted("orbit search ball exceeds " + std::to_string(max_elements) +
                                " elements at length " + std::to_string(len));
        seen.insert(flatten(m), elements_.size());
        Word w;
        w.reserve(words_[k].size() + 1);
        w.push_back(i);
        w.insert(w.end(), words_[k].begin(), words_[k].end());
        elements_.push_back(std::move(m));
        words_.push_back(std::move(w));
      }
    }
    if (elements_.size() == hi) break;
    lo = hi;
  }
}

DominanceTable::DominanceTable(const CoxeterDatum& d, const Mat& roots, int search_len,
                               kernels::Exec exec)
    : datum_(&d), roots_(roots), ball_(d, search_len) {
  if (roots.rows() != d.rank()) throw InputError("root matrix has wrong row count");
  values_ = kernels::pairwise_form(exec, d.gram(), roots_, roots_);
  negative_ = kernels::negative_sets(exec, ball_.elements(), roots_);
}

long DominanceTable::refuting_element(std::size_t i, std::size_t j) const {
  return kernels::first_bit_outside(negative_[i], negative_[j]);
}

DominanceVerdict DominanceTable::verdict(std::size_t i, std::size_t j) const {
  const Eigen::Index a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
  const double tol = datum_->tolerance();
  const double value = values_(a, b);
  const bool x_ref = !kernels::bits_subset(negative_[i], negative_[j]);
  const bool y_ref = !kernels::bits_subset(negative_[j], negative_[i]);
  return decide(roots_.col(a), roots_.col(b), value, tol, x_ref, y_ref);
}

DominanceVerdict dominance_between(const CoxeterDatum& d, const Vec& x, const Vec& y,
                                   int search_len) {
  const double value = bilinear(d, x, y);
  if (same_vector(x, y, d.tolerance()) || value < 1.0 - d.tolerance())
    return decide(x, y, value, d.tolerance(), false, false);
  Mat pair(d.rank(), 2);
  pair.col(0) = x;
  pair.col(1) = y;
  DominanceTable table(d, pair, search_len, kernels::Exec::serial);
  return table.verdict(0, 1);
}

namespace reference {

DominanceVerdict dominance_between(const CoxeterDatum& d, const Vec& x, const Vec& y,
                                   int search_len) {
  const int n = d.rank();
  const double value = bilinear(d, x, y);
  if (same_vector(x, y, d.tolerance()) || value < 1.0 - d.tolerance())
    return decide(x, y, value, d.tolerance(), false, false);

  std::vector<Vec> states;
  CoordIndex seen(d.tolerance());
  Vec s0(2 * n);
  s0 << x, y;
  states.push_back(s0);
  seen.insert(s0, 0);
  bool x_ref = false, y_ref = false;
  std::size_t lo = 0;
  for (int len = 0; len <= search_len; ++len) {
    const std::size_t hi = states.size();
    for (std::size_t k = lo; k < hi; ++k) {
      const Vec wx = states[k].head(n);
      const Vec wy = states[k].tail(n);
      const bool xn = kernels::root_is_negative(wx.data(), n);
      const bool yn = kernels::root_is_negative(wy.data(), n);
      if (xn && !yn) x_ref = true;
      if (yn && !xn) y_ref = true;
    }
    if (len == search_len) break;
    for (std::size_t k = lo; k < hi; ++k) {
      for (int i = 0; i < n; ++i) {
        Vec next = states[k];
        Vec a = next.head(n), b = next.tail(n);
        reflect_simple_inplace(d, i, a);
        reflect_simple_inplace(d, i, b);
        next << a, b;
        if (seen.find(next)) continue;
        seen.insert(next, states.size());
        states.push_back(std::move(next));
      }
    }
    if (states.size() == hi) break;
    lo = hi;
  }
  return decide(x, y, value, d.tolerance(), x_ref, y_ref);
}

}  // namespace reference

DominatedSet dominated_set(const CoxeterDatum& d, const Vec& x, const RootSlice& slice,
                           int search_len) {
  DominatedSet out;
  const double tol = d.tolerance();
  std::vector<std::size_t> candidates;
  for (std::size_t j = 0; j < slice.size(); ++j) {
    const Vec& y = slice[j].coords;
    if (same_vector(x, y, tol)) continue;
    if (bilinear(d, x, y) >= 1.0 - tol) candidates.push_back(j);
  }
  if (candidates.empty()) return out;
  Mat m(d.rank(), static_cast<Eigen::Index>(candidates.size() + 1));
  m.col(0) = x;
  for (std::size_t k = 0; k < candidates.size(); ++k)
    m.col(static_cast<Eigen::Index>(k + 1)) = slice[candidates[k]].coords;
  DominanceTable table(d, m, search_len);
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const DominanceVerdict v = table.verdict(0, k + 1);
    if (v.relation != Relation::first_dominates) continue;
    (v.certified ? out.members : out.uncertified).push_back(candidates[k]);
  }
  return out;
}

DnPartition partition_Dn(const CoxeterDatum& d, const RootSlice& slice, int search_len,
                         kernels::Exec exec) {
  if (slice.empty()) throw InputError("partition of an empty slice");
  DnPartition out;
  const std::size_t m = slice.size();
  DominanceTable table(d, slice.coord_matrix(), search_len, exec);
  const std::size_t sub_end = slice.max_depth() > 0 && slice.deepest() >= slice.max_depth()
                                  ? slice.level(slice.max_depth() - 1).second
                                  : m;
  out.counts.assign(m, 0);
  std::vector<int> sub_counts(m, 0);
  const double tol = d.tolerance();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j || table.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) < 1.0 - tol)
        continue;
      const DominanceVerdict v = table.verdict(i, j);
      if (v.relation != Relation::first_dominates) continue;
      if (!v.certified) {
        out.uncertified.emplace_back(i, j);
        continue;
      }
      ++out.counts[i];
      if (j < sub_end) ++sub_counts[i];
    }
  }
  out.root_stable.assign(m, 0);
  out.stabilized = true;
  for (std::size_t i = 0; i < m; ++i) {
    out.classes[out.counts[i]].push_back(i);
    if (i < sub_end) {
      out.root_stable[i] = sub_counts[i] == out.counts[i];
      if (!out.root_stable[i]) out.stabilized = false;
    }
  }
  // A finite group whose slice is complete cannot change with depth.
  if (sub_end == m) {
    std::fill(out.root_stable.begin(), out.root_stable.end(), 1);
    out.stabilized = slice.deepest() < slice.max_depth();
  }
  return out;
}

}  // namespace coxlim
