#pragma once

#include "coxlim/datum.hpp"

#include <string>
#include <vector>

namespace coxlim {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct CheckOptions {
  int depth = 5;
  int search_len = 8;
  int samples = 40;
  unsigned seed = 1;
};

/// Invariant suite behind the `check` subcommand. Each entry is one property
/// checked on this datum at desk scale.
std::vector<CheckResult> run_checks(const CoxeterDatum& d, const CheckOptions& opt = {});

}  // namespace coxlim
