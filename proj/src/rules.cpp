#include "fairassign/rules.hpp"

#include <algorithm>
#include <future>
#include <string>
#include <thread>

#include "fairassign/errors.hpp"
#include "fairassign/lp.hpp"
#include "fairassign/matching.hpp"
#include "fairassign/rng.hpp"

namespace fairassign::rules {

FixedLedger::FixedLedger(int n) : n_(n) {
  fixed_.assign(n, std::vector<std::optional<Rat>>(n + 2));
}

bool FixedLedger::is_fixed(int agent, int rank) const {
  return rank >= 1 && rank <= n_ && fixed_[agent][rank].has_value();
}

bool FixedLedger::is_determined(int agent, int rank) const {
  if (rank == 1 || rank == n_ + 1) return true;
  return is_fixed(agent, rank);
}

Rat FixedLedger::value(int agent, int rank) const {
  if (rank == 1) return Rat(1);
  if (rank == n_ + 1) return Rat(0);
  if (!is_fixed(agent, rank)) {
    throw InternalCheckError("ledger value requested before it was fixed");
  }
  return *fixed_[agent][rank];
}

void FixedLedger::fix(int agent, int rank, Rat v) {
  if (fixed_[agent][rank].has_value()) {
    throw InternalCheckError("ledger value fixed twice");
  }
  // Cumulative values must stay monotone across ranks.
  for (int t = rank + 1; t <= n_ + 1; ++t) {
    if (is_determined(agent, t) && value(agent, t) > v) {
      throw InternalCheckError("ledger monotonicity violated");
    }
  }
  for (int t = rank - 1; t >= 1; --t) {
    if (is_determined(agent, t) && value(agent, t) < v) {
      throw InternalCheckError("ledger monotonicity violated");
    }
  }
  fixed_[agent][rank] = std::move(v);
}

namespace {

using lp::LinearProgram;
using lp::LpSolution;
using lp::Rel;
using lp::Sense;
using lp::SolveStatus;

// One linear program of the rank-minimization loop, together with the
// mapping from assignment entries to program variables. Entries whose value
// is already pinned by the ledger may be folded into constants (Reduced),
// in which case var_of is -1 and forced_value holds the entry.
struct IterationLp {
  LinearProgram prog;
  std::vector<std::vector<int>> var_of;
  std::vector<std::vector<Rat>> forced_value;
  int aux_var = -1;  // the bound b or the slack eps, depending on the mode

  Rat entry(int agent, int object, const std::vector<Rat>& values) const {
    const int v = var_of[agent][object];
    return v >= 0 ? values[v] : forced_value[agent][object];
  }

  Rat cumulative(const PreferenceProfile& profile, int agent, int k,
                 const std::vector<Rat>& values) const {
    Rat total(0);
    for (int r = k; r <= profile.size(); ++r) {
      total += entry(agent, profile.object_at_rank(agent, r), values);
    }
    return total;
  }
};

// What one while-iteration program optimizes. MinimizeBound introduces the
// bound variable b with rows cum_i(k) <= b over unfixed agents; ProbeAgent
// maximizes the slack eps in cum(k) <= bound - eps for one agent while the
// rest stay capped at the bound; MinimizeTightSum minimizes the summed
// cumulative value of a set of agents under the same caps (a group
// certificate: optimum |set|*bound proves every member is pinned).
struct IterationMode {
  enum Kind { MinimizeBound, ProbeAgent, MinimizeTightSum };
  Kind kind = MinimizeBound;
  int probe_agent = -1;
  const std::vector<int>* tight = nullptr;
  Rat bound;
};

IterationLp build_iteration_lp(const PreferenceProfile& profile,
                               const FixedLedger& ledger, int k,
                               const std::vector<char>& unfixed,
                               LpFormulation formulation,
                               const IterationMode& mode) {
  const int n = profile.size();
  IterationLp out;
  out.var_of.assign(n, std::vector<int>(n, -1));
  out.forced_value.assign(n, std::vector<Rat>(n, Rat(0)));

  if (formulation == LpFormulation::Verbatim) {
    out.prog = lp::build_bistochastic(n);
    for (int i = 0; i < n; ++i) {
      for (int o = 0; o < n; ++o) {
        out.var_of[i][o] = lp::assignment_var(n, i, o);
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int t = 2; t <= n; ++t) {
        if (ledger.is_fixed(i, t)) {
          lp::add_cumulative_constraint(out.prog, profile, i, t, Rel::Eq,
                                        ledger.value(i, t));
        }
      }
    }
    if (mode.kind == IterationMode::MinimizeBound) {
      out.aux_var = out.prog.add_variable("b");
      for (int i = 0; i < n; ++i) {
        if (!unfixed[i]) continue;
        lp::add_cumulative_constraint(out.prog, profile, i, k, Rel::Le,
                                      out.aux_var);
      }
      out.prog.set_objective(Sense::Minimize, {{out.aux_var, Rat(1)}});
      return out;
    }
    for (int i = 0; i < n; ++i) {
      if (!unfixed[i]) continue;
      lp::add_cumulative_constraint(out.prog, profile, i, k, Rel::Le,
                                    Rat(mode.bound));
    }
    if (mode.kind == IterationMode::ProbeAgent) {
      out.aux_var = out.prog.add_variable("eps");
      // cum(probe) + eps <= bound
      std::vector<std::pair<int, Rat>> terms;
      for (int r = k; r <= n; ++r) {
        terms.emplace_back(
            lp::assignment_var(n, mode.probe_agent,
                               profile.object_at_rank(mode.probe_agent, r)),
            Rat(1));
      }
      terms.emplace_back(out.aux_var, Rat(1));
      out.prog.add_constraint(std::move(terms), Rel::Le, Rat(mode.bound));
      out.prog.set_objective(Sense::Maximize, {{out.aux_var, Rat(1)}});
    } else {
      std::vector<std::pair<int, Rat>> objective;
      for (int agent : *mode.tight) {
        for (int r = k; r <= n; ++r) {
          objective.emplace_back(
              lp::assignment_var(n, agent, profile.object_at_rank(agent, r)),
              Rat(1));
        }
      }
      out.prog.set_objective(Sense::Minimize, std::move(objective));
    }
    return out;
  }

  // Reduced form: an entry x[i][o] at rank t is a constant b_i(t)-b_i(t+1)
  // once both levels are determined; everything else stays a variable.
  for (int i = 0; i < n; ++i) {
    for (int t = 1; t <= n; ++t) {
      const int o = profile.object_at_rank(i, t);
      if (ledger.is_determined(i, t) && ledger.is_determined(i, t + 1)) {
        out.forced_value[i][o] = ledger.value(i, t) - ledger.value(i, t + 1);
      } else {
        out.var_of[i][o] = out.prog.add_variable(
            "x_" + std::to_string(i) + "_" + std::to_string(o));
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, Rat>> terms;
    Rat forced(0);
    for (int o = 0; o < n; ++o) {
      if (out.var_of[i][o] >= 0) {
        terms.emplace_back(out.var_of[i][o], Rat(1));
      } else {
        forced += out.forced_value[i][o];
      }
    }
    if (terms.empty()) {
      if (forced != 1) {
        throw InternalCheckError("pinned agent row does not sum to one");
      }
      continue;
    }
    out.prog.add_constraint(std::move(terms), Rel::Eq, Rat(1) - forced);
  }
  for (int o = 0; o < n; ++o) {
    std::vector<std::pair<int, Rat>> terms;
    Rat forced(0);
    for (int i = 0; i < n; ++i) {
      if (out.var_of[i][o] >= 0) {
        terms.emplace_back(out.var_of[i][o], Rat(1));
      } else {
        forced += out.forced_value[i][o];
      }
    }
    if (terms.empty()) {
      if (forced != 1) {
        throw InternalCheckError("pinned object column does not sum to one");
      }
      continue;
    }
    out.prog.add_constraint(std::move(terms), Rel::Eq, Rat(1) - forced);
  }

  // Ledger equalities that still involve variables.
  for (int i = 0; i < n; ++i) {
    for (int t = 2; t <= n; ++t) {
      if (!ledger.is_fixed(i, t)) continue;
      std::vector<std::pair<int, Rat>> terms;
      Rat forced(0);
      for (int r = t; r <= n; ++r) {
        const int o = profile.object_at_rank(i, r);
        if (out.var_of[i][o] >= 0) {
          terms.emplace_back(out.var_of[i][o], Rat(1));
        } else {
          forced += out.forced_value[i][o];
        }
      }
      const Rat rhs = ledger.value(i, t) - forced;
      if (terms.empty()) {
        if (sgn(rhs) != 0) {
          throw InternalCheckError("pinned cumulative row is inconsistent");
        }
        continue;
      }
      out.prog.add_constraint(std::move(terms), Rel::Eq, rhs);
    }
  }

  auto rank_terms = [&](int agent) {
    std::vector<std::pair<int, Rat>> terms;
    Rat forced(0);
    for (int r = k; r <= n; ++r) {
      const int o = profile.object_at_rank(agent, r);
      if (out.var_of[agent][o] >= 0) {
        terms.emplace_back(out.var_of[agent][o], Rat(1));
      } else {
        forced += out.forced_value[agent][o];
      }
    }
    return std::make_pair(std::move(terms), std::move(forced));
  };

  if (mode.kind == IterationMode::MinimizeBound) {
    out.aux_var = out.prog.add_variable("b");
    for (int i = 0; i < n; ++i) {
      if (!unfixed[i]) continue;
      auto [terms, forced] = rank_terms(i);
      terms.emplace_back(out.aux_var, Rat(-1));
      out.prog.add_constraint(std::move(terms), Rel::Le, -forced);
    }
    out.prog.set_objective(Sense::Minimize, {{out.aux_var, Rat(1)}});
    return out;
  }
  if (mode.kind == IterationMode::ProbeAgent) {
    out.aux_var = out.prog.add_variable("eps");
  }
  for (int i = 0; i < n; ++i) {
    if (!unfixed[i]) continue;
    auto [terms, forced] = rank_terms(i);
    if (mode.kind == IterationMode::ProbeAgent && i == mode.probe_agent) {
      terms.emplace_back(out.aux_var, Rat(1));
    }
    out.prog.add_constraint(std::move(terms), Rel::Le, mode.bound - forced);
  }
  if (mode.kind == IterationMode::ProbeAgent) {
    out.prog.set_objective(Sense::Maximize, {{out.aux_var, Rat(1)}});
  } else {
    std::vector<std::pair<int, Rat>> objective;
    Rat constant(0);
    for (int agent : *mode.tight) {
      auto [terms, forced] = rank_terms(agent);
      objective.insert(objective.end(), terms.begin(), terms.end());
      constant += forced;
    }
    out.prog.set_objective(Sense::Minimize, std::move(objective),
                           std::move(constant));
  }
  return out;
}

Assignment extract_from_ledger(const PreferenceProfile& profile,
                               const FixedLedger& ledger) {
  const int n = profile.size();
  std::vector<std::vector<Rat>> matrix(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int t = 1; t <= n; ++t) {
      matrix[i][profile.object_at_rank(i, t)] =
          ledger.value(i, t) - ledger.value(i, t + 1);
    }
  }
  return Assignment(std::move(matrix));
}

// Independent extraction route: feasibility program with every cumulative
// level pinned as an explicit equality over the full variable set.
Assignment extract_via_feasibility_lp(const PreferenceProfile& profile,
                                      const FixedLedger& ledger,
                                      long* solves) {
  const int n = profile.size();
  LinearProgram prog = lp::build_bistochastic(n);
  for (int i = 0; i < n; ++i) {
    for (int t = 2; t <= n; ++t) {
      lp::add_cumulative_constraint(prog, profile, i, t, Rel::Eq,
                                    ledger.value(i, t));
    }
  }
  const LpSolution sol = lp::solve(prog);
  ++*solves;
  if (sol.status != SolveStatus::Optimal) {
    throw InternalCheckError("fully pinned extraction program is infeasible");
  }
  std::vector<std::vector<Rat>> matrix(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i) {
    for (int o = 0; o < n; ++o) {
      matrix[i][o] = sol.values[lp::assignment_var(n, i, o)];
    }
  }
  return Assignment(std::move(matrix));
}

}  // namespace

SigmaMinimalResult sigma_minimal_detailed(const PreferenceProfile& profile,
                                          const SigmaOrder& sigma,
                                          const SigmaMinimalOptions& options) {
  const int n = profile.size();
  if (sigma.n() != n) {
    throw InputError("sigma order does not match the profile size");
  }
  std::vector<int> scan = options.scan_order;
  if (scan.empty()) {
    scan.resize(n);
    for (int i = 0; i < n; ++i) scan[i] = i;
  } else if (!is_permutation(scan, n)) {
    throw InputError("scan order must be a permutation of the agents");
  }

  FixedLedger ledger(n);
  long solves = 0;

  for (int k : sigma.ranks()) {
    std::vector<char> unfixed(n, 1);
    int unfixed_count = n;
    while (unfixed_count > 0) {
      IterationLp min_prog = build_iteration_lp(
          profile, ledger, k, unfixed, options.formulation, IterationMode{});
      const LpSolution min_sol = lp::solve(min_prog.prog);
      ++solves;
      if (min_sol.status != SolveStatus::Optimal) {
        throw InternalCheckError("bound program must be feasible and bounded");
      }
      const Rat bstar = min_sol.objective;

      if (sgn(bstar) == 0) {
        for (int i = 0; i < n; ++i) {
          if (unfixed[i]) {
            ledger.fix(i, k, Rat(0));
            unfixed[i] = 0;
          }
        }
        unfixed_count = 0;
        break;
      }

      // Only agents whose cumulative value meets bstar at the returned
      // optimum can have a zero probe slack; the solution itself witnesses
      // a positive slack for everyone else.
      std::vector<int> tight;
      for (int idx = 0; idx < n; ++idx) {
        const int agent = scan[idx];
        if (unfixed[agent] &&
            min_prog.cumulative(profile, agent, k, min_sol.values) == bstar) {
          tight.push_back(agent);
        }
      }

      std::vector<int> fixed_this_pass;
      std::vector<int> to_probe = tight;
      if (tight.size() >= 3) {
        // Group certificate: if the summed cumulative value of the tight
        // set cannot drop below |tight| * bstar, every member is pinned at
        // bstar and the individual probes are unnecessary. Otherwise the
        // minimizer witnesses a positive slack for every member it leaves
        // below the bound.
        IterationMode sum_mode;
        sum_mode.kind = IterationMode::MinimizeTightSum;
        sum_mode.tight = &tight;
        sum_mode.bound = bstar;
        IterationLp sum_prog = build_iteration_lp(
            profile, ledger, k, unfixed, options.formulation, sum_mode);
        const LpSolution sum_sol = lp::solve(sum_prog.prog);
        ++solves;
        if (sum_sol.status != SolveStatus::Optimal) {
          throw InternalCheckError("group probe program must solve");
        }
        if (sum_sol.objective == bstar * static_cast<long>(tight.size())) {
          fixed_this_pass = tight;
          to_probe.clear();
        } else {
          to_probe.clear();
          for (int agent : tight) {
            if (sum_prog.cumulative(profile, agent, k, sum_sol.values) ==
                bstar) {
              to_probe.push_back(agent);
            }
          }
        }
      }

      // Remaining candidates are decided by independent per-agent probes
      // against the same ledger snapshot; large batches run concurrently.
      auto run_probe = [&](int agent) {
        IterationMode probe_mode;
        probe_mode.kind = IterationMode::ProbeAgent;
        probe_mode.probe_agent = agent;
        probe_mode.bound = bstar;
        IterationLp probe = build_iteration_lp(
            profile, ledger, k, unfixed, options.formulation, probe_mode);
        const LpSolution probe_sol = lp::solve(probe.prog);
        if (probe_sol.status != SolveStatus::Optimal) {
          throw InternalCheckError("probe program must be feasible");
        }
        return sgn(probe_sol.objective) == 0;
      };
      if (to_probe.size() >= 4 && n >= 12) {
        std::vector<std::future<bool>> futures;
        futures.reserve(to_probe.size());
        for (int agent : to_probe) {
          futures.push_back(
              std::async(std::launch::async, run_probe, agent));
        }
        for (std::size_t idx = 0; idx < to_probe.size(); ++idx) {
          if (futures[idx].get()) fixed_this_pass.push_back(to_probe[idx]);
          ++solves;
        }
      } else {
        for (int agent : to_probe) {
          if (run_probe(agent)) fixed_this_pass.push_back(agent);
          ++solves;
        }
      }

      if (fixed_this_pass.empty()) {
        throw InternalCheckError("no agent attains the minimized bound");
      }
      for (int agent : fixed_this_pass) {
        ledger.fix(agent, k, bstar);
        unfixed[agent] = 0;
        --unfixed_count;
      }
    }
    ledger.mark_processed(k);
  }

  Assignment result = extract_from_ledger(profile, ledger);
  if (options.cross_check_extraction && n <= 8) {
    const Assignment check = extract_via_feasibility_lp(profile, ledger,
                                                        &solves);
    if (!(check == result)) {
      throw InternalCheckError("extraction routes disagree");
    }
  }
  return {std::move(result), std::move(ledger), solves};
}

Assignment sigma_minimal(const PreferenceProfile& profile,
                         const SigmaOrder& sigma) {
  return sigma_minimal_detailed(profile, sigma).assignment;
}

SigmaMinimalResult rawlsian_detailed(const PreferenceProfile& profile,
                                     const SigmaMinimalOptions& options) {
  return sigma_minimal_detailed(profile, SigmaOrder::rawlsian(profile.size()),
                                options);
}

Assignment rawlsian(const PreferenceProfile& profile) {
  return rawlsian_detailed(profile).assignment;
}

Assignment probabilistic_serial(const PreferenceProfile& profile) {
  const int n = profile.size();
  std::vector<Rat> remaining(n, Rat(1));
  std::vector<int> pos(n, 0);  // position in each agent's list
  std::vector<std::vector<Rat>> x(n, std::vector<Rat>(n, Rat(0)));

  Rat time(0);
  while (time < 1) {
    for (int i = 0; i < n; ++i) {
      while (sgn(remaining[profile.preference_list(i)[pos[i]]]) == 0) {
        ++pos[i];
        if (pos[i] >= n) {
          throw InternalCheckError("eater ran out of objects before time 1");
        }
      }
    }
    std::vector<int> eaters(n, 0);
    for (int i = 0; i < n; ++i) ++eaters[profile.preference_list(i)[pos[i]]];

    // Next exhaustion; never later than the global end at time 1.
    Rat dt(-1);
    for (int o = 0; o < n; ++o) {
      if (eaters[o] == 0) continue;
      Rat candidate = remaining[o] / eaters[o];
      if (sgn(dt) < 0 || candidate < dt) dt = std::move(candidate);
    }
    for (int i = 0; i < n; ++i) {
      const int o = profile.preference_list(i)[pos[i]];
      x[i][o] += dt;
      remaining[o] -= dt;
    }
    time += dt;
  }
  return Assignment(std::move(x));
}

Assignment fractional_boston(const PreferenceProfile& profile) {
  const int n = profile.size();
  std::vector<Rat> remaining(n, Rat(1));
  std::vector<Rat> total(n, Rat(0));
  std::vector<char> active(n, 1);
  std::vector<std::vector<Rat>> x(n, std::vector<Rat>(n, Rat(0)));

  for (int round = 1; round <= n; ++round) {
    // In round k, an agent eats her k-th choice; if it is already gone she
    // idles until the round ends.
    std::vector<char> eating(n, 0);
    for (int i = 0; i < n; ++i) {
      const int o = profile.object_at_rank(i, round);
      eating[i] = active[i] && sgn(remaining[o]) > 0;
    }
    while (true) {
      std::vector<int> count(n, 0);
      bool any = false;
      for (int i = 0; i < n; ++i) {
        if (eating[i]) {
          ++count[profile.object_at_rank(i, round)];
          any = true;
        }
      }
      if (!any) break;
      Rat dt(-1);
      for (int o = 0; o < n; ++o) {
        if (count[o] == 0) continue;
        Rat candidate = remaining[o] / count[o];
        if (sgn(dt) < 0 || candidate < dt) dt = std::move(candidate);
      }
      for (int i = 0; i < n; ++i) {
        if (!eating[i]) continue;
        Rat fill = Rat(1) - total[i];
        if (fill < dt) dt = std::move(fill);
      }
      for (int i = 0; i < n; ++i) {
        if (!eating[i]) continue;
        const int o = profile.object_at_rank(i, round);
        x[i][o] += dt;
        total[i] += dt;
        remaining[o] -= dt;
      }
      for (int i = 0; i < n; ++i) {
        if (!eating[i]) continue;
        const int o = profile.object_at_rank(i, round);
        if (total[i] == 1 || sgn(remaining[o]) == 0) eating[i] = 0;
      }
    }
    for (int i = 0; i < n; ++i) {
      if (total[i] == 1) active[i] = 0;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (total[i] != 1) {
      throw InternalCheckError("round-based eating left an agent short");
    }
  }
  return Assignment(std::move(x));
}

MtavResult mtav(const PreferenceProfile& profile, std::uint64_t seed) {
  const int n = profile.size();

  // Seeded relabeling first; the deterministic matching solver then picks a
  // random element of the optimal set (not uniformly).
  Rng rng(seed);
  const std::vector<int> agent_perm = rng.split(1).permutation(n);
  const std::vector<int> object_perm = rng.split(2).permutation(n);
  const PreferenceProfile shuffled =
      profile.relabel_agents(agent_perm).relabel_objects(object_perm);

  // Bottleneck: smallest r such that edges of rank <= r contain a perfect
  // matching. Monotone in r, so binary search.
  auto has_perfect_matching = [&](int r) {
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) {
      for (int t = 1; t <= r; ++t) {
        adj[i].push_back(shuffled.object_at_rank(i, t));
      }
    }
    return max_bipartite_matching(n, n, adj).size == n;
  };
  int lo = 1, hi = n;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (has_perfect_matching(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const int r_star = lo;

  // Min-sum matching among rank <= r_star edges; forbidden edges get a cost
  // no feasible matching can reach.
  const std::int64_t big = static_cast<std::int64_t>(n) * n + 1;
  std::vector<std::vector<std::int64_t>> cost(
      n, std::vector<std::int64_t>(n, big));
  for (int i = 0; i < n; ++i) {
    for (int o = 0; o < n; ++o) {
      const int r = shuffled.rank(i, o);
      if (r <= r_star) cost[i][o] = r;
    }
  }
  const std::vector<int> match = min_cost_perfect_matching(cost);

  std::vector<int> object_of_agent(n, -1);
  std::int64_t rank_sum = 0;
  int max_rank = 0;
  for (int i = 0; i < n; ++i) {
    object_of_agent[agent_perm[i]] = object_perm[match[i]];
    const int r = shuffled.rank(i, match[i]);
    rank_sum += r;
    max_rank = std::max(max_rank, r);
  }
  if (max_rank != r_star) {
    throw InternalCheckError("min-sum matching does not attain the bottleneck");
  }
  return {DeterministicAssignment(std::move(object_of_agent)), r_star,
          rank_sum};
}

CardinalUtilityProfile::CardinalUtilityProfile(
    const PreferenceProfile& profile, std::vector<std::vector<Rat>> utilities)
    : u_(std::move(utilities)) {
  const int n = profile.size();
  if (static_cast<int>(u_.size()) != n) {
    throw InputError("utility matrix does not match the profile size");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(u_[i].size()) != n) {
      throw InputError("utility matrix is not square");
    }
    for (int r = 1; r < n; ++r) {
      const int better = profile.object_at_rank(i, r);
      const int worse = profile.object_at_rank(i, r + 1);
      if (u_[i][better] <= u_[i][worse]) {
        throw InputError("utilities of agent '" +
                         profile.agent_names()[i] +
                         "' are not strictly consistent with her ranking");
      }
    }
  }
}

MaxminResult maxmin_cardinal(const PreferenceProfile& profile,
                             const CardinalUtilityProfile& utilities) {
  const int n = profile.size();
  if (utilities.size() != n) {
    throw InputError("utility profile does not match the problem size");
  }
  lp::LinearProgram prog = lp::build_bistochastic(n);
  const int t = prog.add_free_variable("t");
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, Rat>> terms;
    for (int o = 0; o < n; ++o) {
      terms.emplace_back(lp::assignment_var(n, i, o), utilities.utility(i, o));
    }
    terms.emplace_back(t, Rat(-1));
    prog.add_constraint(std::move(terms), Rel::Ge, Rat(0));
  }
  prog.set_objective(Sense::Maximize, {{t, Rat(1)}});
  const LpSolution sol = lp::solve(prog);
  if (sol.status != SolveStatus::Optimal) {
    throw InternalCheckError("max-min utility program must be solvable");
  }
  std::vector<std::vector<Rat>> matrix(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i) {
    for (int o = 0; o < n; ++o) {
      matrix[i][o] = sol.values[lp::assignment_var(n, i, o)];
    }
  }
  return {Assignment(std::move(matrix)), sol.objective};
}

}  // namespace fairassign::rules
