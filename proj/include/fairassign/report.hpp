#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fairassign/assignment.hpp"
#include "fairassign/profile.hpp"

namespace fairassign::report {

// How many agents strictly sd-prefer their row under `first` to their row
// under `second`, and conversely; `same` counts identical rows and
// `incomparable` the rest.
struct PairwisePreference {
  int prefer_first = 0;
  int prefer_second = 0;
  int same = 0;
  int incomparable = 0;
};

PairwisePreference pairwise_preference(const PreferenceProfile& profile,
                                       const Assignment& first,
                                       const Assignment& second);

nlohmann::json assignment_json(const PreferenceProfile& profile,
                               const Assignment& x);

// Analysis tables for one assignment: maximum supported rank, expected
// number of agents per rank position, and the envy counts.
nlohmann::json assignment_tables_json(const PreferenceProfile& profile,
                                      const Assignment& x);

// Full bundle over the standard rule trio (worst-rank minimizing rule,
// serial eating rule, two-stage matching rule): assignments, rank and envy
// tables, pairwise preference counts and the cumulative rank series. The
// seed drives the matching tie-break.
nlohmann::json report_bundle(const PreferenceProfile& profile,
                             std::uint64_t seed);

// Cumulative expected counts per rank as CSV rows, one column per rule.
std::string cdf_csv(const PreferenceProfile& profile,
                    const std::vector<std::pair<std::string, Assignment>>& runs);

}  // namespace fairassign::report
