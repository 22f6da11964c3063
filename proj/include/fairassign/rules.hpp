#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fairassign/assignment.hpp"
#include "fairassign/profile.hpp"
#include "fairassign/rational.hpp"

namespace fairassign::rules {

// Cumulative values already pinned by the rank-minimization loop: once an
// agent is fixed at rank k, its b(k) is an equality in every later program.
// b(1) = 1 and b(n+1) = 0 count as determined from the start.
class FixedLedger {
 public:
  explicit FixedLedger(int n);

  int n() const { return n_; }
  bool is_fixed(int agent, int rank) const;
  bool is_determined(int agent, int rank) const;
  // Value of b_agent(rank); requires is_determined.
  Rat value(int agent, int rank) const;
  void fix(int agent, int rank, Rat value);

  // Ranks fixed so far, in the order they were processed.
  const std::vector<int>& processed_ranks() const { return processed_; }
  void mark_processed(int rank) { processed_.push_back(rank); }

 private:
  int n_;
  std::vector<std::vector<std::optional<Rat>>> fixed_;  // [agent][rank]
  std::vector<int> processed_;
};

// How the per-iteration linear programs are written down. Reduced folds
// entries already pinned by the ledger into constants, which keeps the
// program small; Verbatim keeps every assignment variable and every ledger
// equality as an explicit row. Both describe the same feasible set and are
// cross-checked in the test suite.
enum class LpFormulation { Reduced, Verbatim };

struct SigmaMinimalOptions {
  LpFormulation formulation = LpFormulation::Reduced;
  // Probe order over agents; empty means ascending index. Output is
  // invariant to this order.
  std::vector<int> scan_order;
  // Re-derive the final matrix from a fully pinned feasibility program and
  // compare with the reconstruction from ledger differences (n <= 8 only;
  // the programs grow quadratically).
  bool cross_check_extraction = true;
};

struct SigmaMinimalResult {
  Assignment assignment;
  FixedLedger ledger;
  long lp_solves = 0;
};

// The sigma-minimal assignment: lexicographically minimizes the block
// vector B^{x,sigma} by a sequence of exact linear programs (minimize the
// worst cumulative value at each rank of sigma, then fix the agents that
// cannot improve, and repeat). The result is unique per problem and order.
SigmaMinimalResult sigma_minimal_detailed(const PreferenceProfile& profile,
                                          const SigmaOrder& sigma,
                                          const SigmaMinimalOptions& options = {});

Assignment sigma_minimal(const PreferenceProfile& profile,
                         const SigmaOrder& sigma);

// sigma = (n, n-1, ..., 2): worst ranks first.
SigmaMinimalResult rawlsian_detailed(const PreferenceProfile& profile,
                                     const SigmaMinimalOptions& options = {});
Assignment rawlsian(const PreferenceProfile& profile);

// Simultaneous-eating rule: every agent consumes her best remaining object
// at unit speed; exact rational event times.
Assignment probabilistic_serial(const PreferenceProfile& profile);

// Round-based eating: in round k every remaining agent eats from her k-th
// choice (or idles if it is gone); agents leave once their mass reaches 1.
Assignment fractional_boston(const PreferenceProfile& profile);

struct MtavResult {
  DeterministicAssignment assignment;
  int bottleneck_rank = 0;        // smallest achievable maximum rank
  std::int64_t rank_sum = 0;      // minimum total rank at that bottleneck
};

// Deterministic rule: minimize the maximum assigned rank, then the sum of
// assigned ranks; ties are broken by a seeded random relabeling of agents
// and objects before the matching solver runs (a random optimum, though not
// a uniform one).
MtavResult mtav(const PreferenceProfile& profile, std::uint64_t seed);

// Cardinal utilities consistent with a profile's ordinal preferences
// (strictly decreasing along each agent's list).
class CardinalUtilityProfile {
 public:
  CardinalUtilityProfile(const PreferenceProfile& profile,
                         std::vector<std::vector<Rat>> utilities);

  int size() const { return static_cast<int>(u_.size()); }
  const Rat& utility(int agent, int object) const { return u_[agent][object]; }

 private:
  std::vector<std::vector<Rat>> u_;
};

struct MaxminResult {
  Assignment assignment;
  Rat value;
};

// maximize t subject to sum_o u[i][o] x[i][o] >= t for every agent, over
// the assignment polytope. Only the value is unique; the returned matrix is
// one optimizer.
MaxminResult maxmin_cardinal(const PreferenceProfile& profile,
                             const CardinalUtilityProfile& utilities);

}  // namespace fairassign::rules
