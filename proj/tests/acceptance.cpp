// Acceptance suite: one pass/fail line per criterion, exit code equal to
// the number of failures. Shares one pool of seeded random instances
// across criteria so cross-checks line up.

#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "fairassign/analysis.hpp"
#include "fairassign/cumulative.hpp"
#include "fairassign/io.hpp"
#include "fairassign/rng.hpp"
#include "fairassign/rules.hpp"

using namespace fairassign;
using analysis::bottleneck_rank;
using analysis::bvn_decompose;
using analysis::pareto_efficient_deterministic;
using analysis::rank_distribution;
using analysis::sd_efficient;
using analysis::support_max_rank;
using rules::probabilistic_serial;
using rules::rawlsian;
using rules::rawlsian_detailed;
using rules::sigma_minimal;

namespace {

struct Check {
  std::ostringstream log;
  bool ok = true;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      log << (log.str().empty() ? "" : "; ") << what;
    }
  }
};

Rat q(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

PreferenceProfile letters_profile(const std::vector<std::string>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<std::string> agents, objects;
  for (int i = 0; i < n; ++i) {
    agents.push_back(std::to_string(i + 1));
    objects.push_back(std::string(1, static_cast<char>('a' + i)));
  }
  std::vector<std::vector<int>> prefs;
  for (const std::string& row : rows) {
    std::vector<int> p;
    for (char c : row) p.push_back(c - 'a');
    prefs.push_back(std::move(p));
  }
  return PreferenceProfile(agents, objects, prefs);
}

Assignment matrix_of(const std::vector<std::vector<Rat>>& m) {
  return Assignment(m);
}

// Shared pool: 500 uniform random profiles with n cycling over 2..8, plus
// the worst-rank minimizing outcome of each (computed once).
struct InstancePool {
  std::vector<PreferenceProfile> profiles;
  std::vector<Assignment> rawls;

  InstancePool() {
    Rng rng(20240915);
    for (int idx = 0; idx < 500; ++idx) {
      const int n = 2 + idx % 7;
      profiles.push_back(io::generate(n, io::GenerateModel::Uniform,
                                      rng.next_u64()));
      rawls.push_back(rawlsian(profiles.back()));
    }
  }
};

// One random zero-row-sum, zero-column-sum direction that keeps x + d
// feasible: shift mass epsilon around a random agent/object cycle inside
// the support.
std::optional<Assignment> random_feasible_perturbation(
    const PreferenceProfile& profile, const Assignment& x, Rng& rng) {
  const int n = profile.size();
  if (n < 2) return std::nullopt;
  const int length = 2 + rng.below(n - 1);
  std::vector<int> agents = rng.permutation(n);
  agents.resize(length);

  std::vector<int> objects;
  std::vector<bool> used(n, false);
  for (int idx = 0; idx < length; ++idx) {
    // an unused object this agent holds with positive probability
    std::vector<int> options;
    for (int o = 0; o < n; ++o) {
      if (!used[o] && sgn(x.at(agents[idx], o)) > 0) options.push_back(o);
    }
    if (options.empty()) return std::nullopt;
    const int o = options[rng.below(static_cast<int>(options.size()))];
    objects.push_back(o);
    used[o] = true;
  }

  Rat eps = x.at(agents[0], objects[0]);
  for (int idx = 1; idx < length; ++idx) {
    eps = std::min(eps, x.at(agents[idx], objects[idx]));
  }
  eps /= 2;
  if (sgn(eps) <= 0) return std::nullopt;

  std::vector<std::vector<Rat>> m = x.matrix();
  for (int idx = 0; idx < length; ++idx) {
    const int giver = agents[idx];
    const int receiver = agents[(idx + 1) % length];
    m[giver][objects[idx]] -= eps;
    m[receiver][objects[idx]] += eps;
  }
  return Assignment(std::move(m));
}

// --- criteria ---------------------------------------------------------

void criterion_worked_examples(Check& c) {
  const auto start = std::chrono::steady_clock::now();

  c.expect(rawlsian(letters_profile({"abc", "abc", "bca"})) ==
               matrix_of({{q(1, 2), q(1, 2), q(0)},
                          {q(1, 2), q(1, 2), q(0)},
                          {q(0), q(0), q(1)}}),
           "three-agent worked instance");
  c.expect(rawlsian(letters_profile({"abc", "bca", "bca"})) ==
               matrix_of({{q(1), q(0), q(0)},
                          {q(0), q(1, 2), q(1, 2)},
                          {q(0), q(1, 2), q(1, 2)}}),
           "manipulation example, truthful");
  c.expect(rawlsian(letters_profile({"abc", "bac", "bca"})) ==
               matrix_of({{q(1), q(0), q(0)},
                          {q(0), q(1), q(0)},
                          {q(0), q(0), q(1)}}),
           "manipulation example, misreport");
  c.expect(rawlsian(letters_profile({"cab", "bca", "bca"})) ==
               matrix_of({{q(1), q(0), q(0)},
                          {q(0), q(1, 2), q(1, 2)},
                          {q(0), q(1, 2), q(1, 2)}}),
           "swap appendix, truthful");
  c.expect(rawlsian(letters_profile({"cba", "bca", "bca"})) ==
               matrix_of({{q(1, 3), q(0), q(2, 3)},
                          {q(1, 3), q(1, 2), q(1, 6)},
                          {q(1, 3), q(1, 2), q(1, 6)}}),
           "swap appendix, swapped report");
  c.expect(probabilistic_serial(letters_profile({"abc", "abc", "bca"})) ==
               matrix_of({{q(1, 2), q(1, 6), q(1, 3)},
                          {q(1, 2), q(1, 6), q(1, 3)},
                          {q(0), q(2, 3), q(1, 3)}}),
           "eating rule on the worked instance");

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  c.expect(seconds < 1.0, "runtime above one second");
  c.log << (c.log.str().empty() ? "" : "; ") << "worked examples in "
        << seconds << " s";
}

void criterion_uniqueness_anonymity(Check& c, const InstancePool& pool) {
  Rng rng(111);
  for (std::size_t idx = 0; idx < pool.profiles.size(); ++idx) {
    const PreferenceProfile& p = pool.profiles[idx];
    const Assignment& base = pool.rawls[idx];

    rules::SigmaMinimalOptions options;
    options.scan_order = rng.permutation(p.size());
    options.cross_check_extraction = false;
    if (rawlsian_detailed(p, options).assignment != base) {
      c.expect(false, "scan-order variance at instance " + std::to_string(idx));
      return;
    }
    const std::vector<int> perm = rng.permutation(p.size());
    if (rawlsian(p.relabel_agents(perm)) != base.relabel_agents(perm)) {
      c.expect(false, "relabeling variance at instance " + std::to_string(idx));
      return;
    }
  }
}

void criterion_efficiency(Check& c, const InstancePool& pool) {
  Rng rng(222);
  for (std::size_t idx = 0; idx < pool.profiles.size(); ++idx) {
    const PreferenceProfile& p = pool.profiles[idx];
    // sd_efficient throws if its two certificates split; expect() guards
    // the verdicts themselves.
    if (!sd_efficient(p, pool.rawls[idx]).efficient) {
      c.expect(false, "inefficient minimizing-rule output at " +
                          std::to_string(idx));
      return;
    }
    if (!sd_efficient(p, probabilistic_serial(p)).efficient) {
      c.expect(false, "inefficient eating output at " + std::to_string(idx));
      return;
    }
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<int> order;
      for (int k = 2; k <= p.size(); ++k) order.push_back(k);
      rng.shuffle(order);
      const SigmaOrder sigma(p.size(), order);
      if (!sd_efficient(p, sigma_minimal(p, sigma)).efficient) {
        c.expect(false, "inefficient sigma output at " + std::to_string(idx));
        return;
      }
    }
  }
}

void criterion_bottleneck(Check& c, const InstancePool& pool) {
  Rng rng(333);
  for (std::size_t idx = 0; idx < pool.profiles.size(); ++idx) {
    const int lhs = support_max_rank(pool.profiles[idx], pool.rawls[idx]);
    const int rhs =
        rules::mtav(pool.profiles[idx], rng.next_u64()).bottleneck_rank;
    if (lhs != rhs) {
      c.expect(false, "bottleneck mismatch at instance " + std::to_string(idx));
      return;
    }
  }
}

void criterion_non_dominance(Check& c, const InstancePool& pool) {
  Rng rng(444);
  long tested = 0;
  for (std::size_t idx = 0; idx < pool.profiles.size(); ++idx) {
    const PreferenceProfile& p = pool.profiles[idx];
    if (p.size() > 5) continue;
    const Assignment& x = pool.rawls[idx];
    const SigmaOrder sigma = SigmaOrder::rawlsian(p.size());
    const BlockVector bx = block_vector(p, x, sigma);
    for (int rep = 0; rep < 1000; ++rep) {
      const auto y = random_feasible_perturbation(p, x, rng);
      if (!y) continue;
      ++tested;
      if (r_dominates(block_vector(p, *y, sigma), bx) ==
          RDominance::Dominates) {
        c.expect(false, "dominating perturbation at instance " +
                            std::to_string(idx));
        return;
      }
    }
  }
  c.log << "perturbations tested: " << tested;
}

void criterion_closed_forms(Check& c) {
  Rng rng(555);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + rng.below(8);
    // identical preferences -> uniform
    std::vector<int> common = rng.permutation(n);
    std::vector<std::vector<int>> prefs(n, common);
    std::vector<std::string> agents, objects;
    for (int i = 0; i < n; ++i) {
      agents.push_back("i" + std::to_string(i));
      objects.push_back("o" + std::to_string(i));
    }
    const PreferenceProfile identical(agents, objects, prefs);
    if (rawlsian(identical) != Assignment::uniform(n)) {
      c.expect(false, "identical-preferences family");
      return;
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + rng.below(7);
    // distinct tops -> deterministic tops
    const std::vector<int> tops = rng.permutation(n);
    std::vector<std::vector<int>> prefs;
    for (int i = 0; i < n; ++i) {
      std::vector<int> rest;
      for (int o = 0; o < n; ++o) {
        if (o != tops[i]) rest.push_back(o);
      }
      rng.shuffle(rest);
      std::vector<int> row = {tops[i]};
      row.insert(row.end(), rest.begin(), rest.end());
      prefs.push_back(std::move(row));
    }
    std::vector<std::string> agents, objects;
    for (int i = 0; i < n; ++i) {
      agents.push_back("i" + std::to_string(i));
      objects.push_back("o" + std::to_string(i));
    }
    const PreferenceProfile p(agents, objects, prefs);
    const Assignment x = rawlsian(p);
    for (int i = 0; i < n; ++i) {
      if (x.at(i, tops[i]) != 1) {
        c.expect(false, "distinct-tops family");
        return;
      }
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + rng.below(6);
    const bool force_common = trial % 2 == 0;
    std::vector<std::vector<int>> prefs;
    const int worst = rng.below(n);
    for (int i = 0; i < n; ++i) {
      std::vector<int> row = rng.permutation(n);
      if (force_common) {
        // move the designated object to the end
        row.erase(std::find(row.begin(), row.end(), worst));
        row.push_back(worst);
      }
      prefs.push_back(std::move(row));
    }
    std::vector<std::string> agents, objects;
    for (int i = 0; i < n; ++i) {
      agents.push_back("i" + std::to_string(i));
      objects.push_back("o" + std::to_string(i));
    }
    const PreferenceProfile p(agents, objects, prefs);
    bool common = true;
    for (int i = 1; i < n; ++i) {
      common &= p.object_at_rank(i, n) == p.object_at_rank(0, n);
    }
    const Assignment x = rawlsian(p);
    bool worst_served = false;
    for (int i = 0; i < n; ++i) {
      worst_served |= sgn(x.at(i, p.object_at_rank(i, n))) > 0;
    }
    if (worst_served != common) {
      c.expect(false, "least-preferred support family");
      return;
    }
  }
}

void criterion_mtav_oracle(Check& c) {
  Rng rng(666);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + rng.below(5);
    const PreferenceProfile p =
        io::generate(n, io::GenerateModel::Uniform, rng.next_u64());
    const rules::MtavResult r = rules::mtav(p, rng.next_u64());

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    int best_max = n + 1;
    long best_sum = 0;
    do {
      int worst = 0;
      long sum = 0;
      for (int i = 0; i < n; ++i) {
        worst = std::max(worst, p.rank(i, perm[i]));
        sum += p.rank(i, perm[i]);
      }
      if (worst < best_max || (worst == best_max && sum < best_sum)) {
        best_max = worst;
        best_sum = sum;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (r.bottleneck_rank != best_max || r.rank_sum != best_sum) {
      c.expect(false, "matching-rule oracle mismatch at trial " +
                          std::to_string(trial));
      return;
    }
  }
}

void criterion_bvn(Check& c, const InstancePool& pool) {
  for (std::size_t idx = 0; idx < pool.profiles.size(); ++idx) {
    const PreferenceProfile& p = pool.profiles[idx];
    const Assignment& x = pool.rawls[idx];
    const int n = p.size();
    const analysis::BvnDecomposition d = bvn_decompose(x);
    if (static_cast<int>(d.terms.size()) > n * n - 2 * n + 2) {
      c.expect(false, "term bound exceeded at " + std::to_string(idx));
      return;
    }
    std::vector<std::vector<Rat>> sum(n, std::vector<Rat>(n, q(0)));
    for (const auto& term : d.terms) {
      for (int i = 0; i < n; ++i) {
        sum[i][term.perm.object_of(i)] += term.weight;
      }
    }
    if (Assignment(sum) != x) {
      c.expect(false, "recomposition drift at " + std::to_string(idx));
      return;
    }
    const int r_star = bottleneck_rank(p);
    for (const auto& term : d.terms) {
      if (!pareto_efficient_deterministic(p, term.perm)) {
        c.expect(false, "inefficient lottery term at " + std::to_string(idx));
        return;
      }
      int worst = 0;
      for (int i = 0; i < n; ++i) {
        worst = std::max(worst, p.rank(i, term.perm.object_of(i)));
      }
      if (worst != r_star) {
        c.expect(false, "term misses the bottleneck at " + std::to_string(idx));
        return;
      }
    }
  }
  // exercise the packaged check on a sample as well
  for (std::size_t idx = 0; idx < pool.profiles.size(); idx += 25) {
    if (!analysis::corollary_check(pool.profiles[idx])) {
      c.expect(false, "packaged corollary check failed at " +
                          std::to_string(idx));
      return;
    }
  }
}

void criterion_appendix(Check& c) {
  // rank tables
  const PreferenceProfile rank_p = letters_profile({"abc", "abc", "bac"});
  const Assignment rank_x = matrix_of({{q(1, 2), q(1, 6), q(1, 3)},
                                       {q(1, 2), q(1, 6), q(1, 3)},
                                       {q(0), q(2, 3), q(1, 3)}});
  const Assignment rank_y =
      matrix_of({{q(1), q(0), q(0)}, {q(0), q(0), q(1)}, {q(0), q(1), q(0)}});
  c.expect(rawlsian(rank_p) == rank_x, "rank appendix minimizing output");
  const analysis::RankDistribution mx = rank_distribution(rank_p, rank_x);
  const analysis::RankDistribution my = rank_distribution(rank_p, rank_y);
  c.expect(mx.m(3) == q(1) && mx.m(2) == q(4, 3) && mx.m(1) == q(3),
           "rank table of x");
  c.expect(my.m(3) == q(1) && my.m(2) == q(1) && my.m(1) == q(3),
           "rank table of y");
  c.expect(analysis::rank_dominates(rank_p, rank_y, rank_x),
           "y rank-dominates x");
  c.expect(!analysis::rank_efficient(rank_p, rank_x),
           "x is not rank efficient");

  // egalitarian verdicts
  const PreferenceProfile egal_p =
      letters_profile({"abcd", "bcad", "abcd", "badc"});
  const Assignment diag = matrix_of({{q(1), q(0), q(0), q(0)},
                                     {q(0), q(1), q(0), q(0)},
                                     {q(0), q(0), q(1), q(0)},
                                     {q(0), q(0), q(0), q(1)}});
  c.expect(analysis::egalitarian_check(egal_p, diag).egalitarian,
           "diagonal assignment is egalitarian");
  c.expect(rawlsian(egal_p) == matrix_of({{q(1, 2), q(1, 2), q(0), q(0)},
                                          {q(0), q(0), q(1), q(0)},
                                          {q(1, 2), q(1, 2), q(0), q(0)},
                                          {q(0), q(0), q(0), q(1)}}),
           "egalitarian appendix minimizing output");

  // manipulation witness: worst supported rank drops from 2 to 1
  const PreferenceProfile manip_truth =
      letters_profile({"abc", "bca", "bca"});
  const PreferenceProfile manip_lie = letters_profile({"abc", "bac", "bca"});
  const Assignment x_truth = rawlsian(manip_truth);
  const Assignment x_lie = rawlsian(manip_lie);
  auto omega_bar = [&](const Assignment& x, int agent,
                       const PreferenceProfile& rank_source) {
    int worst = 0;
    for (int o = 0; o < 3; ++o) {
      if (sgn(x.at(agent, o)) > 0) {
        worst = std::max(worst, rank_source.rank(agent, o));
      }
    }
    return worst;
  };
  const int w_truth = omega_bar(x_truth, 1, manip_truth);
  const int w_lie = omega_bar(x_lie, 1, manip_truth);
  c.expect(w_truth == 2 && w_lie == 1, "manipulation witness ranks");
  const analysis::ManipulationReport probe =
      analysis::obvious_manipulability_probe(3, analysis::RuleKind::Rawlsian);
  c.log << (c.log.str().empty() ? "" : "; ")
        << "formal worst/best-case manipulability verdict (reported): "
        << (probe.obviously_manipulable ? "manipulable" : "not manipulable")
        << ", pointwise witnesses: " << probe.pointwise_witnesses.size();

  // swap axioms: counterexample and invariance sweep
  const PreferenceProfile swap_p = letters_profile({"cab", "bca", "bca"});
  const analysis::SwapAxiomResult swap =
      analysis::swap_axiom_check(swap_p, 0, 0, 1);
  c.expect(!swap.swap_monotonic && !swap.upper_invariant &&
               swap.lower_invariant,
           "swap appendix counterexample verdicts");

  Rng rng(777);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + rng.below(5);
    const PreferenceProfile p =
        io::generate(n, io::GenerateModel::Uniform, rng.next_u64());
    const int agent = rng.below(n);
    const int pos = 1 + rng.below(n - 1);
    const analysis::SwapAxiomResult r = analysis::swap_axiom_check(
        p, agent, p.object_at_rank(agent, pos),
        p.object_at_rank(agent, pos + 1));
    if (!r.lower_invariant) {
      c.expect(false, "lower invariance broke at trial " +
                          std::to_string(trial));
      return;
    }
  }

  // cardinal band: alpha* in [1/4, 1/3] and the value matches the closed
  // form exactly
  const PreferenceProfile card_p = letters_profile({"abc", "abc", "bac"});
  Rng crng(888);
  for (int trial = 0; trial < 50; ++trial) {
    const Rat u3 = q(crng.below(5), 1 + crng.below(3));
    const Rat u2 = u3 + q(1 + crng.below(6), 1 + crng.below(4));
    const Rat u1 = u2 + q(1 + crng.below(6), 1 + crng.below(4));
    std::vector<std::vector<Rat>> u(3, std::vector<Rat>(3));
    for (int i = 0; i < 3; ++i) {
      u[i][card_p.object_at_rank(i, 1)] = u1;
      u[i][card_p.object_at_rank(i, 2)] = u2;
      u[i][card_p.object_at_rank(i, 3)] = u3;
    }
    const rules::CardinalUtilityProfile cu(card_p, u);
    const Rat alpha =
        (u1 / 2 + u2 / 2 - u3) / (u1 * 2 + u2 - u3 * 3);
    const Rat value = u1 / 2 + (q(1, 2) - alpha) * u2 + alpha * u3;
    if (alpha < q(1, 4) || alpha > q(1, 3)) {
      c.expect(false, "alpha outside the band at trial " +
                          std::to_string(trial));
      return;
    }
    if (rules::maxmin_cardinal(card_p, cu).value != value) {
      c.expect(false, "max-min value off the closed form at trial " +
                          std::to_string(trial));
      return;
    }
  }
}

void criterion_scale(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  const PreferenceProfile p =
      io::generate(40, io::GenerateModel::Uniform, 987654321);
  const rules::SigmaMinimalResult r = rawlsian_detailed(p);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const long bound = 40L * 40L * 41L / 2L;
  c.expect(r.lp_solves <= bound, "solve count above the bound");
  c.expect(seconds < 600.0, "runtime above ten minutes");
  c.expect(r.assignment.size() == 40, "bad output size");
  c.log << "n=40 in " << seconds << " s, " << r.lp_solves
        << " programs solved (bound " << bound << ")";
}

}  // namespace

int main() {
  int failures = 0;
  const InstancePool pool;

  const std::vector<std::pair<std::string, std::function<void(Check&)>>>
      criteria = {
          {"worked-example exactness",
           [&](Check& c) { criterion_worked_examples(c); }},
          {"uniqueness and anonymity on 500 instances",
           [&](Check& c) { criterion_uniqueness_anonymity(c, pool); }},
          {"sd-efficiency of all rule outputs",
           [&](Check& c) { criterion_efficiency(c, pool); }},
          {"support max rank equals matching bottleneck",
           [&](Check& c) { criterion_bottleneck(c, pool); }},
          {"no dominating perturbation",
           [&](Check& c) { criterion_non_dominance(c, pool); }},
          {"closed-form families", [&](Check& c) { criterion_closed_forms(c); }},
          {"matching rule against factorial oracle",
           [&](Check& c) { criterion_mtav_oracle(c); }},
          {"lottery decomposition and its corollary",
           [&](Check& c) { criterion_bvn(c, pool); }},
          {"appendix reproductions",
           [&](Check& c) { criterion_appendix(c); }},
          {"n=40 scale run", [&](Check& c) { criterion_scale(c); }},
      };

  for (std::size_t idx = 0; idx < criteria.size(); ++idx) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[idx].second(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.log << "exception: " << e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::cout << (check.ok ? "PASS" : "FAIL") << "  " << idx + 1 << ". "
              << criteria[idx].first << " [" << seconds << " s]";
    if (!check.log.str().empty()) std::cout << " -- " << check.log.str();
    std::cout << "\n";
    failures += check.ok ? 0 : 1;
  }
  return failures;
}
