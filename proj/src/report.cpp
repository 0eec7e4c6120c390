#include "coxlim/report.hpp"

#include "coxlim/error.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace coxlim {

namespace {

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const Json& j) {
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

LimitKind kind_from_string(const std::string& s) {
  for (LimitKind k : {LimitKind::affine, LimitKind::afftype_sum, LimitKind::nonaffine,
                      LimitKind::unresolved})
    if (to_string(k) == s) return k;
  throw InputError("unknown classification '" + s + "'");
}

}  // namespace

Json subset_to_json(const SimpleSubset& s) { return Json(s.members()); }

SimpleSubset subset_from_json(const Json& j) { return SimpleSubset(j.get<std::vector<int>>()); }

Json limit_point_to_json(const LimitPoint& p) {
  Json j;
  j["coords"] = vec_to_json(p.coords);
  j["classification"] = to_string(p.kind);
  j["host"] = p.kind == LimitKind::affine ? subset_to_json(p.host) : Json(nullptr);
  Json comps = Json::array();
  for (const auto& c : p.components) comps.push_back(subset_to_json(c));
  j["components"] = comps;
  j["weights"] = p.weights;
  j["reducer"] = p.reducer;
  j["pos_count"] = p.pos ? Json(p.pos->count) : Json(nullptr);
  j["stabilized"] = p.pos ? Json(p.pos->stabilized) : Json(nullptr);
  j["note"] = p.note;
  return j;
}

LimitPoint limit_point_from_json(const Json& j) {
  LimitPoint p;
  p.coords = vec_from_json(j.at("coords"));
  p.kind = kind_from_string(j.at("classification").get<std::string>());
  if (j.contains("host") && !j["host"].is_null()) p.host = subset_from_json(j["host"]);
  if (j.contains("components"))
    for (const auto& c : j["components"]) p.components.push_back(subset_from_json(c));
  if (j.contains("weights")) p.weights = j["weights"].get<std::vector<double>>();
  if (j.contains("reducer")) p.reducer = j["reducer"].get<Word>();
  if (j.contains("pos_count") && !j["pos_count"].is_null()) {
    PosEstimate e;
    e.count = j["pos_count"].get<std::size_t>();
    e.stabilized = j.value("stabilized", false);
    p.pos = e;
  }
  p.note = j.value("note", std::string{});
  return p;
}

Json cluster_to_json(const Cluster& c) {
  Json j;
  j["center"] = vec_to_json(c.center);
  j["members"] = c.members;
  j["radius"] = c.radius;
  j["isotropy_defect"] = c.isotropy_defect;
  j["max_member_depth"] = c.max_member_depth;
  return j;
}

Cluster cluster_from_json(const Json& j) {
  Cluster c;
  c.center = vec_from_json(j.at("center"));
  c.members = j.at("members").get<std::vector<std::size_t>>();
  c.radius = j.at("radius").get<double>();
  c.isotropy_defect = j.at("isotropy_defect").get<double>();
  c.max_member_depth = j.at("max_member_depth").get<int>();
  return c;
}

Json root_to_json(const Root& r) {
  Json j;
  j["depth"] = r.depth;
  j["coords"] = vec_to_json(r.coords);
  j["witness"] = r.witness;
  j["base"] = r.base;
  return j;
}

Root root_from_json(const Json& j) {
  Root r;
  r.depth = j.at("depth").get<int>();
  r.coords = vec_from_json(j.at("coords"));
  r.witness = j.at("witness").get<Word>();
  r.base = j.value("base", 0);
  r.positive = is_positive_vector(r.coords, kDefaultTolerance);
  return r;
}

std::string subset_label(const CoxeterDatum& d, const SimpleSubset& s) {
  std::string out = "{";
  bool first = true;
  for (int i : s) {
    if (!first) out += ",";
    out += d.name(i);
    first = false;
  }
  return out + "}";
}

std::string format_vector(const Vec& v, int precision) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision);
  const double zero_below = 0.5 * std::pow(10.0, -precision);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << (std::abs(v[i]) < zero_below ? 0.0 : v[i]);
  }
  return os.str();
}

}  // namespace coxlim
