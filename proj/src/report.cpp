#include "fairassign/report.hpp"

#include <future>
#include <sstream>

#include "fairassign/analysis.hpp"
#include "fairassign/cumulative.hpp"
#include "fairassign/errors.hpp"
#include "fairassign/rules.hpp"

namespace fairassign::report {

using nlohmann::json;

PairwisePreference pairwise_preference(const PreferenceProfile& profile,
                                       const Assignment& first,
                                       const Assignment& second) {
  PairwisePreference out;
  for (int i = 0; i < profile.size(); ++i) {
    if (first.row(i) == second.row(i)) {
      ++out.same;
      continue;
    }
    const bool a_over_b =
        sd_dominates_allocation(profile, i, first.row(i), second.row(i));
    const bool b_over_a =
        sd_dominates_allocation(profile, i, second.row(i), first.row(i));
    if (a_over_b && !b_over_a) {
      ++out.prefer_first;
    } else if (b_over_a && !a_over_b) {
      ++out.prefer_second;
    } else {
      // rows differ but neither dominates
      ++out.incomparable;
    }
  }
  return out;
}

json assignment_json(const PreferenceProfile& profile, const Assignment& x) {
  const int n = profile.size();
  json matrix = json::array(), decimal = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array(), drow = json::array();
    for (int o = 0; o < n; ++o) {
      row.push_back(rat_to_string(x.at(i, o)));
      drow.push_back(rat_to_decimal(x.at(i, o)));
    }
    matrix.push_back(std::move(row));
    decimal.push_back(std::move(drow));
  }
  return json{{"agents", profile.agent_names()},
              {"objects", profile.object_names()},
              {"matrix", std::move(matrix)},
              {"matrix_decimal", std::move(decimal)}};
}

json assignment_tables_json(const PreferenceProfile& profile,
                            const Assignment& x) {
  const int n = profile.size();
  json out;
  const int worst = analysis::support_max_rank(profile, x);
  out["max_rank"] = worst;
  out["max_rank_pct"] = rat_to_decimal(Rat(100 * worst, n), 1);

  const analysis::RankDistribution dist =
      analysis::rank_distribution(profile, x);
  json expected = json::array(), expected_dec = json::array();
  for (int k = 1; k <= n; ++k) {
    expected.push_back(rat_to_string(dist.expected_at(k)));
    expected_dec.push_back(rat_to_decimal(dist.expected_at(k), 2));
  }
  out["expected_rank_counts"] = std::move(expected);
  out["expected_rank_counts_decimal"] = std::move(expected_dec);

  const analysis::EnvyReport envy = analysis::envy_report(profile, x);
  out["envy"] = {
      {"agents_with_envy", envy.agents_with_violation},
      {"agents_with_envy_pct",
       rat_to_decimal(Rat(100 * envy.agents_with_violation, n), 1)},
      {"agents_with_weak_envy", envy.agents_with_weak_envy},
      {"avg_envied", rat_to_decimal(envy.average_envied, 2)},
      {"sd_envy_free", envy.sd_envy_free},
  };
  return out;
}

json report_bundle(const PreferenceProfile& profile, std::uint64_t seed) {
  // Rule runs are independent; only the table assembly below is ordered.
  auto rawls_f = std::async(std::launch::async,
                            [&] { return rules::rawlsian(profile); });
  auto ps_f = std::async(std::launch::async,
                         [&] { return rules::probabilistic_serial(profile); });
  auto mtav_f = std::async(std::launch::async,
                           [&] { return rules::mtav(profile, seed); });

  const Assignment rawls = rawls_f.get();
  const Assignment ps = ps_f.get();
  const rules::MtavResult mtav = mtav_f.get();
  const Assignment mtav_x = mtav.assignment.to_assignment();

  const std::vector<std::pair<std::string, const Assignment*>> runs = {
      {"rawlsian", &rawls}, {"ps", &ps}, {"mtav", &mtav_x}};

  json out;
  out["schema"] = 1;
  out["n"] = profile.size();
  out["seed"] = seed;
  for (const auto& [name, x] : runs) {
    out["assignments"][name] = assignment_json(profile, *x);
    out["tables"][name] = assignment_tables_json(profile, *x);
  }
  out["tables"]["mtav"]["bottleneck_rank"] = mtav.bottleneck_rank;
  out["tables"]["mtav"]["rank_sum"] = mtav.rank_sum;

  for (std::size_t a = 0; a < runs.size(); ++a) {
    for (std::size_t b = a + 1; b < runs.size(); ++b) {
      const PairwisePreference pp =
          pairwise_preference(profile, *runs[a].second, *runs[b].second);
      out["pairwise"][runs[a].first + "_vs_" + runs[b].first] = {
          {"prefer_" + runs[a].first, pp.prefer_first},
          {"prefer_" + runs[b].first, pp.prefer_second},
          {"same", pp.same},
          {"incomparable", pp.incomparable}};
    }
  }

  json cdf = json::array();
  std::vector<analysis::RankDistribution> dists;
  for (const auto& [name, x] : runs) {
    dists.push_back(analysis::rank_distribution(profile, *x));
  }
  for (int k = 1; k <= profile.size(); ++k) {
    json row;
    row["rank"] = k;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      // cumulative expected count of agents at rank <= k
      row[runs[r].first] =
          rat_to_decimal(Rat(profile.size()) - dists[r].m(k + 1), 4);
    }
    cdf.push_back(std::move(row));
  }
  out["cdf"] = std::move(cdf);
  return out;
}

std::string cdf_csv(const PreferenceProfile& profile,
                    const std::vector<std::pair<std::string, Assignment>>& runs) {
  std::ostringstream out;
  out << "rank";
  for (const auto& [name, x] : runs) out << "," << name;
  out << "\n";
  std::vector<analysis::RankDistribution> dists;
  for (const auto& [name, x] : runs) {
    dists.push_back(analysis::rank_distribution(profile, x));
  }
  for (int k = 1; k <= profile.size(); ++k) {
    out << k;
    for (const auto& dist : dists) {
      out << "," << rat_to_decimal(Rat(profile.size()) - dist.m(k + 1), 4);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace fairassign::report
