#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fairassign/assignment.hpp"
#include "fairassign/cumulative.hpp"
#include "fairassign/profile.hpp"
#include "fairassign/rational.hpp"

namespace fairassign::analysis {

// sd-efficiency is decided twice: by acyclicity of the object improvement
// graph and by a linear program searching for a dominating assignment. The
// verdicts must agree; disagreement raises InternalCheckError.
struct SdEfficiencyResult {
  bool efficient = false;
  // When inefficient, an object cycle (o_0, ..., o_{m-1}) where some agent
  // holding o_{j+1} prefers o_j; trading along it improves every trader.
  std::vector<int> cycle;
  Rat lp_gain;  // optimum of the dominating-assignment program, 0 iff efficient
};

SdEfficiencyResult sd_efficient(const PreferenceProfile& profile,
                                const Assignment& x);

// M(k) = expected number of agents holding an object ranked k or worse,
// e(k) = M(k) - M(k+1) = expected number at exactly rank k.
class RankDistribution {
 public:
  explicit RankDistribution(std::vector<Rat> m);

  int size() const { return static_cast<int>(m_.size()); }
  const Rat& m(int k) const;     // k in 1..n+1, m(n+1) = 0
  Rat expected_at(int k) const;  // e(k)

  bool operator==(const RankDistribution&) const = default;

 private:
  std::vector<Rat> m_;
};

RankDistribution rank_distribution(const PreferenceProfile& profile,
                                   const Assignment& x);

// True when x rank-dominates y: M_y(k) >= M_x(k) everywhere, strictly
// somewhere.
bool rank_dominates(const PreferenceProfile& profile, const Assignment& x,
                    const Assignment& y);

// LP search for a rank-dominating assignment.
bool rank_efficient(const PreferenceProfile& profile, const Assignment& x);

struct EnvyPair {
  int agent = 0;
  int other = 0;
  bool violation = false;   // agent's row fails to sd-dominate other's
  bool weak_envy = false;   // other's row sd-dominates agent's, rows differ
};

struct EnvyReport {
  std::vector<EnvyPair> pairs;
  int agents_with_violation = 0;
  int agents_with_weak_envy = 0;
  // Among agents with a violation, the average number of envied agents.
  Rat average_envied;
  bool sd_envy_free = false;
};

EnvyReport envy_report(const PreferenceProfile& profile, const Assignment& x);

struct EgalitarianResult {
  bool egalitarian = false;
  int witness_agent = -1;                // j whose allocation all can beat
  std::optional<Assignment> witness;     // the dominating assignment
};

// Duddy's criterion: y is inegalitarian when some assignment gives every
// agent an allocation sd-dominating agent j's allocation at y, strictly in
// at least one level per agent.
EgalitarianResult egalitarian_check(const PreferenceProfile& profile,
                                    const Assignment& y);

struct BvnTerm {
  Rat weight;
  DeterministicAssignment perm;
};

struct BvnDecomposition {
  std::vector<BvnTerm> terms;
};

// Greedy Birkhoff decomposition; exact recomposition, at most n^2 - 2n + 2
// terms.
BvnDecomposition bvn_decompose(const Assignment& x);

// Largest rank carried by any positive entry.
int support_max_rank(const PreferenceProfile& profile, const Assignment& x);

// Smallest maximum rank achievable by a deterministic assignment.
int bottleneck_rank(const PreferenceProfile& profile);

// Pareto efficiency of a deterministic assignment: no object-trading cycle
// in which every participating agent strictly improves.
bool pareto_efficient_deterministic(const PreferenceProfile& profile,
                                    const DeterministicAssignment& det);

// Verifies, on one greedy decomposition of the Rawlsian assignment, that
// every term is Pareto efficient and attains the bottleneck rank.
bool corollary_check(const PreferenceProfile& profile);

enum class RuleKind { Rawlsian, ProbabilisticSerial, Mtav };

struct ManipulationRecord {
  int agent = 0;
  int truthful = 0;   // ranking ids into ManipulationReport::rankings
  int misreport = 0;
  int worst_truth = 0, worst_lie = 0;  // max over opponent profiles of omega-bar
  int best_truth = 0, best_lie = 0;    // min over opponent profiles of omega-underbar
  bool violates_worst_case = false;    // condition (i)
  bool violates_best_case = false;     // condition (ii)
};

// A single-profile improvement of the worst- or best-case supported rank,
// the shape of witness the manipulability discussion exhibits.
struct PointwiseWitness {
  int agent = 0;
  std::vector<int> opponent_rankings;  // ranking ids, one per other agent
  int truthful = 0, misreport = 0;
  int omega_bar_truth = 0, omega_bar_lie = 0;
  int omega_under_truth = 0, omega_under_lie = 0;
};

struct ManipulationReport {
  int n = 0;
  RuleKind rule = RuleKind::Rawlsian;
  std::vector<std::vector<int>> rankings;  // all strict rankings of n objects
  std::vector<ManipulationRecord> records;
  bool obviously_manipulable = false;      // some record violates (i) or (ii)
  std::vector<PointwiseWitness> pointwise_witnesses;
  long rule_evaluations = 0;
};

// Exhaustive search over all profiles and misreports for violations of the
// worst-case / best-case manipulability conditions. Cost grows as (n!)^n;
// n above max_n is rejected.
ManipulationReport obvious_manipulability_probe(int n, RuleKind rule,
                                                int max_n = 3);

struct SwapAxiomResult {
  bool swap_monotonic = false;
  bool upper_invariant = false;
  bool lower_invariant = false;
  Assignment truthful;
  Assignment misreported;
};

// Axioms of the strategyproofness decomposition, evaluated for the Rawlsian
// rule on the swap of two adjacently ranked objects (object_a directly above
// object_b in the agent's list).
SwapAxiomResult swap_axiom_check(const PreferenceProfile& profile, int agent,
                                 int object_a, int object_b);

}  // namespace fairassign::analysis
