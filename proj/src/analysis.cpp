#include "fairassign/analysis.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "fairassign/errors.hpp"
#include "fairassign/lp.hpp"
#include "fairassign/matching.hpp"
#include "fairassign/rules.hpp"

namespace fairassign::analysis {

namespace {

using lp::LinearProgram;
using lp::LpSolution;
using lp::Rel;
using lp::Sense;
using lp::SolveStatus;

void require_match(const PreferenceProfile& profile, const Assignment& x) {
  if (profile.size() != x.size()) {
    throw InputError("assignment size does not match the profile");
  }
}

// Finds a directed cycle, returned as the node sequence, or empty.
std::vector<int> find_cycle(const std::vector<std::vector<bool>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> color(n, 0), parent(n, -1);
  std::vector<int> cycle;

  auto dfs = [&](auto&& self, int u) -> int {
    color[u] = 1;
    for (int v = 0; v < n; ++v) {
      if (!adj[u][v]) continue;
      if (color[v] == 1) {
        // unwind u..v through parents
        cycle.push_back(v);
        for (int w = u; w != v; w = parent[w]) cycle.push_back(w);
        std::reverse(cycle.begin(), cycle.end());
        return 1;
      }
      if (color[v] == 0) {
        parent[v] = u;
        if (self(self, v)) return 1;
      }
    }
    color[u] = 2;
    return 0;
  };

  for (int u = 0; u < n && cycle.empty(); ++u) {
    if (color[u] == 0) dfs(dfs, u);
  }
  return cycle;
}

}  // namespace

SdEfficiencyResult sd_efficient(const PreferenceProfile& profile,
                                const Assignment& x) {
  require_match(profile, x);
  const int n = profile.size();

  // Route 1: the object improvement graph. Edge o -> o' when some agent
  // holds o' with positive probability but prefers o.
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    for (int held = 0; held < n; ++held) {
      if (sgn(x.at(i, held)) <= 0) continue;
      for (int wanted = 0; wanted < n; ++wanted) {
        if (profile.rank(i, wanted) < profile.rank(i, held)) {
          adj[wanted][held] = true;
        }
      }
    }
  }
  std::vector<int> cycle = find_cycle(adj);
  const bool graph_efficient = cycle.empty();

  // Route 2: search for a dominating assignment. Any positive total slack
  // across the top-k levels certifies a dominator.
  LinearProgram prog = lp::build_bistochastic(n);
  std::vector<std::pair<int, Rat>> objective;
  for (int i = 0; i < n; ++i) {
    for (int k = 1; k <= n; ++k) {
      const int s = prog.add_variable("s_" + std::to_string(i) + "_" +
                                      std::to_string(k));
      objective.emplace_back(s, Rat(1));
      std::vector<std::pair<int, Rat>> terms;
      for (int r = 1; r <= k; ++r) {
        terms.emplace_back(
            lp::assignment_var(n, i, profile.object_at_rank(i, r)), Rat(1));
      }
      terms.emplace_back(s, Rat(-1));
      prog.add_constraint(std::move(terms), Rel::Ge,
                          top_k_mass(profile, i, x.row(i), k));
    }
  }
  prog.set_objective(Sense::Maximize, std::move(objective));
  const LpSolution sol = lp::solve(prog);
  if (sol.status != SolveStatus::Optimal) {
    throw InternalCheckError("dominating-assignment program must solve");
  }
  const bool lp_efficient = sgn(sol.objective) == 0;

  if (graph_efficient != lp_efficient) {
    throw InternalCheckError(
        "sd-efficiency certificates disagree (graph vs LP)");
  }
  return {graph_efficient, std::move(cycle), sol.objective};
}

RankDistribution::RankDistribution(std::vector<Rat> m) : m_(std::move(m)) {
  if (m_.empty()) throw InputError("rank distribution is empty");
}

const Rat& RankDistribution::m(int k) const {
  static const Rat kZero(0);
  if (k == size() + 1) return kZero;
  return m_[k - 1];
}

Rat RankDistribution::expected_at(int k) const { return m(k) - m(k + 1); }

RankDistribution rank_distribution(const PreferenceProfile& profile,
                                   const Assignment& x) {
  require_match(profile, x);
  const int n = profile.size();
  std::vector<Rat> m(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    const CumulativeVector b = cumulative_vector(profile, x, i);
    for (int k = 1; k <= n; ++k) m[k - 1] += b.b(k);
  }
  return RankDistribution(std::move(m));
}

bool rank_dominates(const PreferenceProfile& profile, const Assignment& x,
                    const Assignment& y) {
  const RankDistribution mx = rank_distribution(profile, x);
  const RankDistribution my = rank_distribution(profile, y);
  bool strict = false;
  for (int k = 1; k <= profile.size(); ++k) {
    const int c = cmp(my.m(k), mx.m(k));
    if (c < 0) return false;
    if (c > 0) strict = true;
  }
  return strict;
}

bool rank_efficient(const PreferenceProfile& profile, const Assignment& x) {
  require_match(profile, x);
  const int n = profile.size();
  const RankDistribution mx = rank_distribution(profile, x);

  LinearProgram prog = lp::build_bistochastic(n);
  std::vector<std::pair<int, Rat>> objective;
  for (int k = 1; k <= n; ++k) {
    const int d = prog.add_variable("d_" + std::to_string(k));
    objective.emplace_back(d, Rat(1));
    std::vector<std::pair<int, Rat>> terms;
    for (int i = 0; i < n; ++i) {
      for (int r = k; r <= n; ++r) {
        terms.emplace_back(
            lp::assignment_var(n, i, profile.object_at_rank(i, r)), Rat(1));
      }
    }
    terms.emplace_back(d, Rat(1));
    prog.add_constraint(std::move(terms), Rel::Le, mx.m(k));
  }
  prog.set_objective(Sense::Maximize, std::move(objective));
  const LpSolution sol = lp::solve(prog);
  if (sol.status != SolveStatus::Optimal) {
    throw InternalCheckError("rank-dominating program must solve");
  }
  return sgn(sol.objective) == 0;
}

EnvyReport envy_report(const PreferenceProfile& profile, const Assignment& x) {
  require_match(profile, x);
  const int n = profile.size();
  EnvyReport report;
  int total_envied = 0;
  for (int i = 0; i < n; ++i) {
    int envied = 0;
    bool weak = false;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      EnvyPair pair;
      pair.agent = i;
      pair.other = j;
      pair.violation = !sd_dominates_allocation(profile, i, x.row(i), x.row(j));
      pair.weak_envy = x.row(i) != x.row(j) &&
                       sd_dominates_allocation(profile, i, x.row(j), x.row(i));
      if (pair.violation) ++envied;
      weak |= pair.weak_envy;
      report.pairs.push_back(std::move(pair));
    }
    if (envied > 0) {
      ++report.agents_with_violation;
      total_envied += envied;
    }
    if (weak) ++report.agents_with_weak_envy;
  }
  report.average_envied =
      report.agents_with_violation == 0
          ? Rat(0)
          : Rat(total_envied, report.agents_with_violation);
  report.sd_envy_free = report.agents_with_violation == 0;
  return report;
}

EgalitarianResult egalitarian_check(const PreferenceProfile& profile,
                                    const Assignment& y) {
  require_match(profile, y);
  const int n = profile.size();
  for (int j = 0; j < n; ++j) {
    // Does some assignment give every agent an allocation that weakly
    // improves on agent j's top-k levels, strictly somewhere per agent?
    LinearProgram prog = lp::build_bistochastic(n);
    const int eps = prog.add_variable("eps");
    std::vector<std::vector<int>> slack(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
      for (int k = 1; k <= n; ++k) {
        slack[i][k - 1] = prog.add_variable("s_" + std::to_string(i) + "_" +
                                            std::to_string(k));
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int k = 1; k <= n; ++k) {
        std::vector<std::pair<int, Rat>> terms;
        for (int r = 1; r <= k; ++r) {
          terms.emplace_back(
              lp::assignment_var(n, i, profile.object_at_rank(i, r)), Rat(1));
        }
        terms.emplace_back(slack[i][k - 1], Rat(-1));
        prog.add_constraint(std::move(terms), Rel::Ge,
                            top_k_mass(profile, j, y.row(j), k));
      }
      std::vector<std::pair<int, Rat>> total;
      for (int k = 1; k <= n; ++k) total.emplace_back(slack[i][k - 1], Rat(1));
      total.emplace_back(eps, Rat(-1));
      prog.add_constraint(std::move(total), Rel::Ge, Rat(0));
    }
    prog.set_objective(Sense::Maximize, {{eps, Rat(1)}});
    const LpSolution sol = lp::solve(prog);
    if (sol.status == SolveStatus::Infeasible) {
      // even a weak improvement on agent j's levels is impossible
      continue;
    }
    if (sol.status != SolveStatus::Optimal) {
      throw InternalCheckError("egalitarian probe program is unbounded");
    }
    if (sgn(sol.objective) > 0) {
      std::vector<std::vector<Rat>> matrix(n, std::vector<Rat>(n));
      for (int a = 0; a < n; ++a) {
        for (int o = 0; o < n; ++o) {
          matrix[a][o] = sol.values[lp::assignment_var(n, a, o)];
        }
      }
      return {false, j, Assignment(std::move(matrix))};
    }
  }
  return {true, -1, std::nullopt};
}

BvnDecomposition bvn_decompose(const Assignment& x) {
  const int n = x.size();
  std::vector<std::vector<Rat>> work = x.matrix();
  Rat left(1);
  BvnDecomposition out;
  const int max_terms = n * n - 2 * n + 2;

  while (sgn(left) > 0) {
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) {
      for (int o = 0; o < n; ++o) {
        if (sgn(work[i][o]) > 0) adj[i].push_back(o);
      }
    }
    const BipartiteMatching match = max_bipartite_matching(n, n, adj);
    if (match.size != n) {
      throw InternalCheckError(
          "positive support of a bistochastic matrix lost its matching");
    }
    Rat weight = work[0][match.right_of_left[0]];
    for (int i = 1; i < n; ++i) {
      weight = std::min(weight, work[i][match.right_of_left[i]]);
    }
    for (int i = 0; i < n; ++i) work[i][match.right_of_left[i]] -= weight;
    left -= weight;
    out.terms.push_back(
        {std::move(weight), DeterministicAssignment(match.right_of_left)});
    if (static_cast<int>(out.terms.size()) > max_terms) {
      throw InternalCheckError("decomposition exceeded its term bound");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int o = 0; o < n; ++o) {
      if (sgn(work[i][o]) != 0) {
        throw InternalCheckError("decomposition left residual mass");
      }
    }
  }
  return out;
}

int support_max_rank(const PreferenceProfile& profile, const Assignment& x) {
  require_match(profile, x);
  int worst = 0;
  for (int i = 0; i < profile.size(); ++i) {
    for (int o = 0; o < profile.size(); ++o) {
      if (sgn(x.at(i, o)) > 0) worst = std::max(worst, profile.rank(i, o));
    }
  }
  return worst;
}

int bottleneck_rank(const PreferenceProfile& profile) {
  const int n = profile.size();
  auto feasible = [&](int r) {
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) {
      for (int t = 1; t <= r; ++t) {
        adj[i].push_back(profile.object_at_rank(i, t));
      }
    }
    return max_bipartite_matching(n, n, adj).size == n;
  };
  int lo = 1, hi = n;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

bool pareto_efficient_deterministic(const PreferenceProfile& profile,
                                    const DeterministicAssignment& det) {
  const int n = profile.size();
  // Edge i -> j when i strictly prefers j's object; a cycle is a strictly
  // improving trade.
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && profile.rank(i, det.object_of(j)) <
                        profile.rank(i, det.object_of(i))) {
        adj[i][j] = true;
      }
    }
  }
  return find_cycle(adj).empty();
}

bool corollary_check(const PreferenceProfile& profile) {
  const Assignment x = rules::rawlsian(profile);
  const int r_star = bottleneck_rank(profile);
  for (const BvnTerm& term : bvn_decompose(x).terms) {
    if (!pareto_efficient_deterministic(profile, term.perm)) return false;
    int worst = 0;
    for (int i = 0; i < profile.size(); ++i) {
      worst = std::max(worst, profile.rank(i, term.perm.object_of(i)));
    }
    if (worst != r_star) return false;
  }
  return true;
}

namespace {

std::vector<std::vector<int>> all_rankings(int n) {
  std::vector<int> base(n);
  for (int i = 0; i < n; ++i) base[i] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

std::vector<std::string> numbered_names(const std::string& prefix, int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

// Support of an agent's possible objects as a bitmask, for each position of
// a canonically sorted profile, cached per ranking multiset.
class SupportCache {
 public:
  SupportCache(int n, RuleKind rule,
               const std::vector<std::vector<int>>& rankings)
      : n_(n), rule_(rule), rankings_(rankings) {}

  // key: sorted ranking ids. Returns the support mask of an agent that
  // reports rankings[id]; all rules here treat equals equally, so the mask
  // only depends on the id.
  std::uint32_t mask(const std::vector<int>& sorted_key, int id) {
    auto it = cache_.find(sorted_key);
    if (it == cache_.end()) it = cache_.emplace(sorted_key, evaluate(sorted_key)).first;
    return it->second.at(id);
  }

  long evaluations() const { return static_cast<long>(cache_.size()); }

 private:
  std::map<int, std::uint32_t> evaluate(const std::vector<int>& key) {
    std::vector<std::vector<int>> prefs;
    for (int id : key) prefs.push_back(rankings_[id]);
    const PreferenceProfile profile(numbered_names("i", n_),
                                    numbered_names("o", n_), std::move(prefs));
    std::map<int, std::uint32_t> masks;
    if (rule_ == RuleKind::Mtav) {
      // Enumerate the optimal set of the two-stage matching objective.
      std::vector<int> perm(n_);
      for (int i = 0; i < n_; ++i) perm[i] = i;
      int best_max = n_ + 1;
      long best_sum = 0;
      std::vector<std::vector<int>> optimal;
      do {
        int worst = 0;
        long sum = 0;
        for (int i = 0; i < n_; ++i) {
          const int r = profile.rank(i, perm[i]);
          worst = std::max(worst, r);
          sum += r;
        }
        if (worst < best_max || (worst == best_max && sum < best_sum)) {
          best_max = worst;
          best_sum = sum;
          optimal.clear();
        }
        if (worst == best_max && sum == best_sum) optimal.push_back(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
      for (int pos = 0; pos < n_; ++pos) {
        std::uint32_t m = 0;
        for (const auto& p : optimal) m |= 1u << p[pos];
        masks[key[pos]] = m;
      }
      return masks;
    }
    const Assignment x = rule_ == RuleKind::Rawlsian
                             ? rules::rawlsian(profile)
                             : rules::probabilistic_serial(profile);
    for (int pos = 0; pos < n_; ++pos) {
      std::uint32_t m = 0;
      for (int o = 0; o < n_; ++o) {
        if (sgn(x.at(pos, o)) > 0) m |= 1u << o;
      }
      masks[key[pos]] = m;
    }
    return masks;
  }

  int n_;
  RuleKind rule_;
  const std::vector<std::vector<int>>& rankings_;
  std::map<std::vector<int>, std::map<int, std::uint32_t>> cache_;
};

int max_rank_of_mask(const std::vector<int>& rank_of_object,
                     std::uint32_t mask) {
  int worst = 0;
  for (int o = 0; o < static_cast<int>(rank_of_object.size()); ++o) {
    if (mask & (1u << o)) worst = std::max(worst, rank_of_object[o]);
  }
  return worst;
}

int min_rank_of_mask(const std::vector<int>& rank_of_object,
                     std::uint32_t mask) {
  int best = static_cast<int>(rank_of_object.size()) + 1;
  for (int o = 0; o < static_cast<int>(rank_of_object.size()); ++o) {
    if (mask & (1u << o)) best = std::min(best, rank_of_object[o]);
  }
  return best;
}

}  // namespace

ManipulationReport obvious_manipulability_probe(int n, RuleKind rule,
                                                int max_n) {
  if (n < 1) throw InputError("probe needs n >= 1");
  if (n > max_n) {
    throw InputError("probe bound exceeded: n = " + std::to_string(n) +
                     " > max_n = " + std::to_string(max_n));
  }
  ManipulationReport report;
  report.n = n;
  report.rule = rule;
  report.rankings = all_rankings(n);
  const int R = static_cast<int>(report.rankings.size());

  // rank_of[id][o] = rank of object o under ranking id
  std::vector<std::vector<int>> rank_of(R, std::vector<int>(n));
  for (int id = 0; id < R; ++id) {
    for (int pos = 0; pos < n; ++pos) rank_of[id][report.rankings[id][pos]] = pos + 1;
  }

  SupportCache cache(n, rule, report.rankings);

  // Enumerate opponent tuples once; record per report id the union of
  // supports (worst and best cases over opponents reduce to max/min rank
  // over the union) and the per-tuple masks for pointwise witnesses.
  const long tuples = [&] {
    long t = 1;
    for (int i = 1; i < n; ++i) t *= R;
    return t;
  }();
  std::vector<std::uint32_t> union_mask(R, 0);
  std::vector<std::vector<std::uint32_t>> tuple_mask(
      R, std::vector<std::uint32_t>(tuples, 0));
  std::vector<std::vector<int>> tuple_ids(tuples);
  for (long t = 0; t < tuples; ++t) {
    std::vector<int> opp(n - 1);
    long rest = t;
    for (int pos = 0; pos < n - 1; ++pos) {
      opp[pos] = static_cast<int>(rest % R);
      rest /= R;
    }
    tuple_ids[t] = opp;
    for (int id = 0; id < R; ++id) {
      std::vector<int> key = opp;
      key.push_back(id);
      std::sort(key.begin(), key.end());
      const std::uint32_t m = cache.mask(key, id);
      tuple_mask[id][t] = m;
      union_mask[id] |= m;
    }
  }

  for (int agent = 0; agent < n; ++agent) {
    for (int truth = 0; truth < R; ++truth) {
      for (int lie = 0; lie < R; ++lie) {
        if (lie == truth) continue;
        ManipulationRecord rec;
        rec.agent = agent;
        rec.truthful = truth;
        rec.misreport = lie;
        rec.worst_truth = max_rank_of_mask(rank_of[truth], union_mask[truth]);
        rec.worst_lie = max_rank_of_mask(rank_of[truth], union_mask[lie]);
        rec.best_truth = min_rank_of_mask(rank_of[truth], union_mask[truth]);
        rec.best_lie = min_rank_of_mask(rank_of[truth], union_mask[lie]);
        rec.violates_worst_case = rec.worst_truth > rec.worst_lie;
        rec.violates_best_case = rec.best_truth > rec.best_lie;
        report.obviously_manipulable |=
            rec.violates_worst_case || rec.violates_best_case;
        report.records.push_back(rec);
      }
    }
  }

  // Profile-by-profile improvements (the witness shape the manipulability
  // discussion uses); capped, they are illustrative data.
  constexpr std::size_t kMaxWitnesses = 64;
  for (int truth = 0; truth < R && report.pointwise_witnesses.size() < kMaxWitnesses; ++truth) {
    for (int lie = 0; lie < R; ++lie) {
      if (lie == truth) continue;
      for (long t = 0; t < tuples; ++t) {
        const int wt = max_rank_of_mask(rank_of[truth], tuple_mask[truth][t]);
        const int wl = max_rank_of_mask(rank_of[truth], tuple_mask[lie][t]);
        const int bt = min_rank_of_mask(rank_of[truth], tuple_mask[truth][t]);
        const int bl = min_rank_of_mask(rank_of[truth], tuple_mask[lie][t]);
        if (wl < wt || bl < bt) {
          PointwiseWitness w;
          w.agent = 0;
          w.opponent_rankings = tuple_ids[t];
          w.truthful = truth;
          w.misreport = lie;
          w.omega_bar_truth = wt;
          w.omega_bar_lie = wl;
          w.omega_under_truth = bt;
          w.omega_under_lie = bl;
          report.pointwise_witnesses.push_back(std::move(w));
          if (report.pointwise_witnesses.size() >= kMaxWitnesses) break;
        }
      }
      if (report.pointwise_witnesses.size() >= kMaxWitnesses) break;
    }
  }

  report.rule_evaluations = cache.evaluations();
  return report;
}

SwapAxiomResult swap_axiom_check(const PreferenceProfile& profile, int agent,
                                 int object_a, int object_b) {
  const int n = profile.size();
  if (agent < 0 || agent >= n) throw InputError("unknown agent index");
  const int rank_a = profile.rank(agent, object_a);
  const int rank_b = profile.rank(agent, object_b);
  if (rank_a + 1 != rank_b) {
    throw InputError("swap requires adjacently ranked objects, best first");
  }
  std::vector<int> swapped = profile.preference_list(agent);
  std::swap(swapped[rank_a - 1], swapped[rank_b - 1]);

  Assignment truthful = rules::rawlsian(profile);
  Assignment misreported =
      rules::rawlsian(profile.with_preference(agent, std::move(swapped)));

  SwapAxiomResult out{false, false, false, truthful, misreported};
  out.swap_monotonic = truthful.row(agent) == misreported.row(agent) ||
                       misreported.at(agent, object_b) > truthful.at(agent, object_b);
  out.upper_invariant = true;
  out.lower_invariant = true;
  for (int o = 0; o < n; ++o) {
    const int r = profile.rank(agent, o);
    if (r < rank_a && truthful.at(agent, o) != misreported.at(agent, o)) {
      out.upper_invariant = false;
    }
    if (r > rank_b && truthful.at(agent, o) != misreported.at(agent, o)) {
      out.lower_invariant = false;
    }
  }
  return out;
}

}  // namespace fairassign::analysis
