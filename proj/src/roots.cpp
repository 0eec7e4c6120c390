#include "coxlim/roots.hpp"

#include "coxlim/error.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace coxlim {

bool is_positive_vector(const Vec& v, double tol) {
  return v.minCoeff() >= -tol && v.maxCoeff() > tol;
}

bool is_negative_vector(const Vec& v, double tol) { return is_positive_vector(-v, tol); }

// ---------------------------------------------------------------------------
// CoordIndex

namespace {

constexpr double kKeyScale = 1e6;
constexpr double kAbsRange = 1e9;
// Scaled fractional parts this close to .5 also get probed in the
// neighbouring bucket.
constexpr double kBoundary = 1e-3;

struct Quantized {
  long long key;
  long long alt;  // == key when not near a rounding boundary
};

Quantized quantize(double c) {
  double scaled;
  long long tag = 0;
  if (std::abs(c) < kAbsRange) {
    scaled = c * kKeyScale;
  } else {
    int e = 0;
    std::frexp(c, &e);
    scaled = std::ldexp(c, 30 - e);
    tag = static_cast<long long>(e) << 40;
  }
  const double fl = std::floor(scaled);
  const double frac = scaled - fl;
  const long long k = static_cast<long long>(std::llround(scaled));
  long long alt = k;
  if (std::abs(frac - 0.5) < kBoundary) alt = frac < 0.5 ? k + 1 : k - 1;
  return {k + tag, alt + tag};
}

}  // namespace

std::size_t CoordIndex::KeyHash::operator()(const std::vector<long long>& k) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (long long x : k) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<std::vector<long long>> CoordIndex::keys_for(const Vec& v) const {
  std::vector<long long> primary(v.size());
  std::vector<std::pair<Eigen::Index, long long>> alts;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Quantized q = quantize(v[i]);
    primary[i] = q.key;
    if (q.alt != q.key) alts.emplace_back(i, q.alt);
  }
  std::vector<std::vector<long long>> out{primary};
  if (alts.size() > 4) alts.resize(4);
  for (const auto& [i, a] : alts) {
    const std::size_t existing = out.size();
    for (std::size_t k = 0; k < existing; ++k) {
      auto copy = out[k];
      copy[i] = a;
      out.push_back(std::move(copy));
    }
  }
  return out;
}

bool CoordIndex::same(const Vec& a, const Vec& b) const {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    if (std::abs(a[i] - b[i]) > tol_ * scale) return false;
  }
  return true;
}

std::optional<std::size_t> CoordIndex::find(const Vec& v) const {
  for (const auto& key : keys_for(v)) {
    auto [lo, hi] = map_.equal_range(key);
    for (auto it = lo; it != hi; ++it)
      if (same(stored_[it->second], v)) return ids_[it->second];
  }
  return std::nullopt;
}

std::optional<std::size_t> CoordIndex::insert(const Vec& v, std::size_t id) {
  if (auto hit = find(v)) return hit;
  const std::size_t slot = stored_.size();
  stored_.push_back(v);
  ids_.push_back(id);
  map_.emplace(keys_for(v).front(), slot);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// RootSlice

void RootSlice::push(Root r, long parent) {
  index_.insert(r.coords, roots_.size());
  roots_.push_back(std::move(r));
  parent_.push_back(parent);
}

std::pair<std::size_t, std::size_t> RootSlice::level(int depth) const {
  if (depth < 0 || depth > deepest()) return {roots_.size(), roots_.size()};
  return {level_begin_[depth], level_begin_[depth + 1]};
}

Mat RootSlice::coord_matrix() const {
  Mat m(datum_.rank(), static_cast<Eigen::Index>(roots_.size()));
  for (std::size_t i = 0; i < roots_.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = roots_[i].coords;
  return m;
}

RootSlice RootSlice::truncated(int depth) const {
  RootSlice out(datum_, depth);
  const std::size_t end = level(std::min(depth, deepest())).second;
  const int top = std::min(depth, deepest());
  for (std::size_t i = 0; i < end; ++i) out.push(roots_[i], parent_[i]);
  out.level_begin_.assign(level_begin_.begin(), level_begin_.begin() + top + 2);
  return out;
}

// ---------------------------------------------------------------------------

Vec reflect(const CoxeterDatum& d, const Vec& x, const Vec& v) {
  const double xx = bilinear(d, x, x);
  if (std::abs(xx) <= d.tolerance()) throw DomainError("cannot reflect in an isotropic vector");
  return v - (2.0 * bilinear(d, v, x) / xx) * x;
}

void reflect_simple_inplace(const CoxeterDatum& d, int i, Vec& v) {
  v[i] -= 2.0 * d.gram().row(i).dot(v);
}

RootSlice generate_roots(const CoxeterDatum& d, int max_depth, const RootOptions& opt) {
  if (max_depth < 0) throw InputError("max_depth must be >= 0");
  if (max_depth > opt.depth_cap)
    throw InputError("depth " + std::to_string(max_depth) + " exceeds the depth cap " +
                     std::to_string(opt.depth_cap));
  const int n = d.rank();
  RootSlice slice(d, max_depth);
  slice.index_ = CoordIndex(d.tolerance());
  for (int i = 0; i < n; ++i) {
    Root r{d.simple_root(i), true, 0, {}, i};
    slice.push(std::move(r), -1);
  }
  slice.level_begin_.push_back(slice.size());

  for (int depth = 1; depth <= max_depth; ++depth) {
    const auto [lo, hi] = slice.level(depth - 1);
    if (lo == hi) break;
    Mat frontier(n, static_cast<Eigen::Index>(hi - lo));
    for (std::size_t j = lo; j < hi; ++j) frontier.col(static_cast<Eigen::Index>(j - lo)) = slice.roots_[j].coords;
    const kernels::Expansion ex = kernels::expand_frontier(opt.exec, d.gram(), frontier, d.tolerance());

    for (std::size_t j = lo; j < hi; ++j) {
      for (int i = 0; i < n; ++i) {
        const Eigen::Index c = static_cast<Eigen::Index>((j - lo) * n + i);
        if (!ex.deeper[c]) continue;
        const Vec child = ex.children.col(c);
        if (slice.find(child)) continue;
        if (slice.size() >= opt.max_roots)
          throw BudgetExhausted("root count cap of " + std::to_string(opt.max_roots) +
                                " reached at depth " + std::to_string(depth));
        const Root& p = slice.roots_[j];
        Root r;
        r.coords = child;
        r.positive = true;
        r.depth = depth;
        r.base = p.base;
        r.witness.reserve(p.witness.size() + 1);
        r.witness.push_back(i);
        r.witness.insert(r.witness.end(), p.witness.begin(), p.witness.end());
        slice.push(std::move(r), static_cast<long>(j));
      }
    }
    if (slice.size() == hi) break;
    slice.level_begin_.push_back(slice.size());
  }
  return slice;
}

Vec act(const CoxeterDatum& d, const Word& w, const Vec& v) {
  if (v.size() != d.rank()) throw InputError("vector length does not match rank");
  Vec out = v;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (*it < 0 || *it >= d.rank()) throw InputError("letter out of range in word");
    reflect_simple_inplace(d, *it, out);
  }
  return out;
}

Mat word_matrix(const CoxeterDatum& d, const Word& w) {
  Mat m = Mat::Identity(d.rank(), d.rank());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const int i = *it;
    if (i < 0 || i >= d.rank()) throw InputError("letter out of range in word");
    // s_i M only alters row i
    m.row(i) -= 2.0 * (d.gram().row(i) * m);
  }
  return m;
}

InversionSet inversion_set(const CoxeterDatum& d, const Word& w) {
  InversionSet out;
  auto same = [&](const Vec& a, const Vec& b) {
    return ((a - b).cwiseAbs().array() <= d.tolerance() * (1.0 + a.cwiseAbs().array())).all();
  };
  // N(w s) = s(N(w) minus a_s), plus a_s when a_s was not in N(w)
  for (int s : w) {
    if (s < 0 || s >= d.rank()) throw InputError("letter out of range in word");
    const Vec as = d.simple_root(s);
    bool had = false;
    std::vector<Vec> next;
    next.reserve(out.roots.size() + 1);
    for (const Vec& x : out.roots) {
      if (!had && same(x, as)) {
        had = true;
        continue;
      }
      Vec y = x;
      reflect_simple_inplace(d, s, y);
      next.push_back(std::move(y));
    }
    if (had) {
      out.reduced = false;
    } else {
      next.push_back(as);
    }
    out.roots = std::move(next);
  }
  return out;
}

SimpleSubset support(const Vec& x, double tol) {
  std::vector<int> m;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > tol) m.push_back(static_cast<int>(i));
  return SimpleSubset(std::move(m));
}

Root full_support_root(const CoxeterDatum& d, int start, const std::vector<int>& preference) {
  const int n = d.rank();
  if (start < 0 || start >= n) throw InputError("start index out of range");
  if (!is_connected(d, SimpleSubset::all(n)))
    throw DomainError("full-support root needs a connected Coxeter graph");
  std::vector<int> order;
  for (int p : preference) {
    if (p < 0 || p >= n) throw InputError("preference index out of range");
    order.push_back(p);
  }
  for (int i = 0; i < n; ++i) order.push_back(i);

  Root r{d.simple_root(start), true, 0, {}, start};
  SimpleSubset supp({start});
  while (static_cast<int>(supp.size()) < n) {
    int pick = -1;
    for (int b : order) {
      if (supp.contains(b)) continue;
      for (int g : supp) {
        if (d.gram()(b, g) < -d.tolerance()) {
          pick = b;
          break;
        }
      }
      if (pick >= 0) break;
    }
    // connectivity guarantees a pick
    reflect_simple_inplace(d, pick, r.coords);
    r.witness.insert(r.witness.begin(), pick);
    supp = support(r.coords, d.tolerance());
  }
  r.depth = static_cast<int>(r.witness.size());
  return r;
}

std::string format_word(const Word& w) {
  std::ostringstream os;
  for (std::size_t k = 0; k < w.size(); ++k) os << (k ? " " : "") << w[k];
  return os.str();
}

void write_root_line(std::ostream& os, const Root& r) {
  std::ostringstream line;
  line << r.depth;
  line << std::fixed << std::setprecision(6);
  for (Eigen::Index i = 0; i < r.coords.size(); ++i) {
    const double c = r.coords[i] == 0.0 ? 0.0 : r.coords[i];  // no "-0.000000"
    line << '\t' << (std::abs(c) < 5e-7 ? 0.0 : c);
  }
  line << '\t' << format_word(r.witness) << '\n';
  os << line.str();
}

}  // namespace coxlim
