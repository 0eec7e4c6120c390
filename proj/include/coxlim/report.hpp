#pragma once

// JSON records for the CLI. The layout is described in docs/json-schema.md.

#include "coxlim/limits.hpp"

#include <json.hpp>

namespace coxlim {

using Json = nlohmann::ordered_json;

Json subset_to_json(const SimpleSubset& s);
SimpleSubset subset_from_json(const Json& j);

Json limit_point_to_json(const LimitPoint& p);
LimitPoint limit_point_from_json(const Json& j);

Json cluster_to_json(const Cluster& c);
Cluster cluster_from_json(const Json& j);

Json root_to_json(const Root& r);
Root root_from_json(const Json& j);

/// "{a,b}" using the datum's display names.
std::string subset_label(const CoxeterDatum& d, const SimpleSubset& s);

/// Comma separated, 6 decimals.
std::string format_vector(const Vec& v, int precision = 6);

}  // namespace coxlim
