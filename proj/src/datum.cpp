#include "coxlim/datum.hpp"

#include "coxlim/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace coxlim {

Bond Bond::finite(int m) {
  if (m < 2) throw InputError("bond order must be >= 2, got " + std::to_string(m));
  return Bond{m, m == 2 ? 0.0 : -std::cos(std::numbers::pi / m)};
}

Bond Bond::infinite_with(double c) {
  if (!(c <= -1.0)) {
    throw InputError("infinite bond needs a form value <= -1, got " +
                     std::to_string(c));
  }
  return Bond{0, c};
}

SimpleSubset::SimpleSubset(std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

SimpleSubset SimpleSubset::all(int rank) {
  std::vector<int> m(rank);
  for (int i = 0; i < rank; ++i) m[i] = i;
  return SimpleSubset(std::move(m));
}

bool SimpleSubset::contains(int i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

CoxeterDatum::CoxeterDatum(int rank, const std::vector<std::vector<Bond>>& bonds,
                           double tolerance)
    : rank_(rank), tolerance_(tolerance) {
  if (rank < 1) throw InputError("rank must be positive");
  if (!(tolerance > 0)) throw InputError("tolerance must be positive");
  if (static_cast<int>(bonds.size()) != rank) throw InputError("bond table has wrong size");
  bonds_.assign(rank, std::vector<Bond>(rank, Bond{}));
  gram_ = Mat::Identity(rank, rank);
  for (int i = 0; i < rank; ++i) {
    if (static_cast<int>(bonds[i].size()) != rank) throw InputError("bond table has wrong size");
    bonds_[i][i] = Bond{1, 1.0};
    for (int j = i + 1; j < rank; ++j) {
      const Bond& b = bonds[i][j];
      Bond checked = b.infinite() ? Bond::infinite_with(b.value) : Bond::finite(b.order);
      bonds_[i][j] = bonds_[j][i] = checked;
      gram_(i, j) = gram_(j, i) = checked.value;
    }
  }
  names_.resize(rank);
  for (int i = 0; i < rank; ++i) names_[i] = std::to_string(i);
}

void CoxeterDatum::set_name(int i, std::string label) {
  if (i < 0 || i >= rank_) throw InputError("name index out of range");
  names_[i] = std::move(label);
}

std::optional<int> CoxeterDatum::index_of(std::string_view label) const {
  for (int i = 0; i < rank_; ++i)
    if (names_[i] == label) return i;
  return std::nullopt;
}

CoxeterDatum CoxeterDatum::restricted(const SimpleSubset& subset) const {
  const auto& m = subset.members();
  const int k = static_cast<int>(m.size());
  std::vector<std::vector<Bond>> table(k, std::vector<Bond>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) table[i][j] = bonds_[m[i]][m[j]];
  CoxeterDatum sub(k, table, tolerance_);
  for (int i = 0; i < k; ++i) sub.names_[i] = names_[m[i]];
  return sub;
}

Vec CoxeterDatum::simple_root(int i) const {
  Vec e = Vec::Zero(rank_);
  e[i] = 1.0;
  return e;
}

namespace {

int parse_index(const std::string& tok, int rank, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected an index, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line, "expected an index, got '" + tok + "'");
  if (v < 0 || v >= rank) throw ParseError(line, "index " + tok + " out of range");
  return v;
}

double parse_real(const std::string& tok, int line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line, "expected a number, got '" + tok + "'");
  return v;
}

}  // namespace

CoxeterDatum parse_datum(std::string_view text, double tolerance) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  int rank = -1;
  std::vector<std::vector<Bond>> table;
  std::vector<std::vector<bool>> seen;
  std::vector<std::pair<int, std::string>> names;

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (rank < 0) {
      if (tok[0] != "rank" || tok.size() != 2)
        throw ParseError(line_no, "first statement must be 'rank <n>'");
      std::size_t used = 0;
      try {
        rank = std::stoi(tok[1], &used);
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad rank '" + tok[1] + "'");
      }
      if (used != tok[1].size() || rank < 1) throw ParseError(line_no, "bad rank '" + tok[1] + "'");
      table.assign(rank, std::vector<Bond>(rank));
      seen.assign(rank, std::vector<bool>(rank, false));
      continue;
    }

    if (tok[0] == "bond") {
      if (tok.size() < 4 || tok.size() > 5) throw ParseError(line_no, "expected 'bond <i> <j> <m>'");
      const int i = parse_index(tok[1], rank, line_no);
      const int j = parse_index(tok[2], rank, line_no);
      if (i == j) throw ParseError(line_no, "bond joins a vertex to itself");
      Bond b;
      if (tok[3] == "inf" || tok[3] == "infinity") {
        const double c = tok.size() == 5 ? parse_real(tok[4], line_no) : -1.0;
        if (!(c <= -1.0))
          throw ParseError(line_no, "infinite bond value must be <= -1, got " + tok[4]);
        b = Bond{0, c};
      } else {
        if (tok.size() != 4) throw ParseError(line_no, "unexpected token after bond order");
        std::size_t used = 0;
        int m = 0;
        try {
          m = std::stoi(tok[3], &used);
        } catch (const std::exception&) {
          throw ParseError(line_no, "bad bond order '" + tok[3] + "'");
        }
        if (used != tok[3].size()) throw ParseError(line_no, "bad bond order '" + tok[3] + "'");
        if (m < 2) throw ParseError(line_no, "bond order must be >= 2, got " + tok[3]);
        b = Bond::finite(m);
      }
      if (seen[i][j]) {
        const Bond& prev = table[i][j];
        if (prev.order != b.order || prev.value != b.value)
          throw ParseError(line_no, "asymmetric or conflicting labels for pair " + tok[1] +
                                        "," + tok[2]);
      }
      table[i][j] = table[j][i] = b;
      seen[i][j] = seen[j][i] = true;
    } else if (tok[0] == "name") {
      if (tok.size() != 3) throw ParseError(line_no, "expected 'name <i> <label>'");
      names.emplace_back(parse_index(tok[1], rank, line_no), tok[2]);
    } else if (tok[0] == "rank") {
      throw ParseError(line_no, "rank given twice");
    } else {
      throw ParseError(line_no, "unknown statement '" + tok[0] + "'");
    }
  }
  if (rank < 0) throw ParseError(line_no, "missing 'rank' statement");

  CoxeterDatum d(rank, table, tolerance);
  for (auto& [i, label] : names) d.set_name(i, label);
  return d;
}

CoxeterDatum load_datum(const std::string& path, double tolerance) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open datum file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_datum(buf.str(), tolerance);
}

double bilinear(const CoxeterDatum& d, const Vec& u, const Vec& v) {
  if (u.size() != d.rank() || v.size() != d.rank())
    throw InputError("vector length does not match rank " + std::to_string(d.rank()));
  return u.dot(d.gram() * v);
}

std::vector<SimpleSubset> graph_components(const CoxeterDatum& d, const SimpleSubset& subset) {
  const auto& m = subset.members();
  std::vector<int> comp(m.size(), -1);
  std::vector<SimpleSubset> out;
  for (std::size_t s = 0; s < m.size(); ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<int> members;
    std::vector<std::size_t> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      members.push_back(m[u]);
      for (std::size_t v = 0; v < m.size(); ++v) {
        if (comp[v] >= 0) continue;
        if (std::abs(d.gram()(m[u], m[v])) > d.tolerance()) {
          comp[v] = id;
          stack.push_back(v);
        }
      }
    }
    out.emplace_back(std::move(members));
  }
  return out;
}

bool is_connected(const CoxeterDatum& d, const SimpleSubset& subset) {
  return !subset.empty() && graph_components(d, subset).size() == 1;
}

}  // namespace coxlim
