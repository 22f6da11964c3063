#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fairassign/profile.hpp"
#include "fairassign/rational.hpp"

namespace fairassign::lp {

enum class Sense { Minimize, Maximize };
enum class Rel { Le, Eq, Ge };

// One linear constraint: sum of coeff * var <rel> rhs. Terms are kept as
// entered (merged per variable) so a dumped model matches what was built.
struct Constraint {
  std::vector<std::pair<int, Rat>> terms;
  Rel rel;
  Rat rhs;
};

// A rational-coefficient linear program. Variables are nonnegative unless
// declared free. There is no presolve: rows are stored and solved verbatim.
class LinearProgram {
 public:
  int add_variable(std::string name);
  int add_free_variable(std::string name);

  void add_constraint(std::vector<std::pair<int, Rat>> terms, Rel rel,
                      Rat rhs);

  // Default objective is "minimize 0" (pure feasibility). The constant is
  // added to the reported objective value.
  void set_objective(Sense sense, std::vector<std::pair<int, Rat>> terms,
                     Rat constant = Rat(0));

  int variable_count() const { return static_cast<int>(names_.size()); }
  const std::string& variable_name(int var) const { return names_[var]; }
  bool is_free(int var) const { return free_[var]; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  Sense sense() const { return sense_; }
  const std::vector<std::pair<int, Rat>>& objective() const {
    return objective_;
  }
  const Rat& objective_constant() const { return objective_constant_; }

  // Objective / constraint satisfaction at a given point, all exact.
  Rat evaluate_objective(const std::vector<Rat>& values) const;
  bool satisfies(const std::vector<Rat>& values) const;

 private:
  std::vector<std::pair<int, Rat>> merge(
      std::vector<std::pair<int, Rat>> terms) const;

  std::vector<std::string> names_;
  std::vector<bool> free_;
  std::vector<Constraint> constraints_;
  Sense sense_ = Sense::Minimize;
  std::vector<std::pair<int, Rat>> objective_;
  Rat objective_constant_ = Rat(0);
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  SolveStatus status;
  Rat objective;            // meaningful when Optimal
  std::vector<Rat> values;  // per declared variable, when Optimal
};

// Two-phase primal simplex over exact rationals with Bland's pivoting rule
// (guaranteed termination). The returned point is re-substituted into every
// constraint before returning; a violation raises InternalCheckError.
//
// Setting the environment variable FAIRASSIGN_LP_TRACE to a non-empty value
// dumps each model in LP text format to stderr before solving.
LpSolution solve(const LinearProgram& lp);

// Number of solve() calls since process start (monotone; used for the
// per-rule solve accounting).
long solve_count();

// CPLEX-LP-style text rendering for external cross-checks. Rationals are
// written as p/q, which external tools may need to preprocess; exactness of
// the dump is not part of the format contract.
std::string to_lp_format(const LinearProgram& lp);

// n*n assignment variables with row and column sums pinned to one.
// var_of(i, o) == i * n + o in the returned program.
LinearProgram build_bistochastic(int n);

inline int assignment_var(int n, int agent, int object) {
  return agent * n + object;
}

// Appends sum_{o : rank(agent, o) >= k} x[agent][o] <rel> rhs to `prog`,
// assuming assignment variables laid out as in build_bistochastic.
void add_cumulative_constraint(LinearProgram& prog,
                               const PreferenceProfile& profile, int agent,
                               int k, Rel rel, Rat rhs);

// Same row with an auxiliary variable moved to the left-hand side:
// sum_{rank >= k} x[agent][o] - bound_var <rel> 0.
void add_cumulative_constraint(LinearProgram& prog,
                               const PreferenceProfile& profile, int agent,
                               int k, Rel rel, int bound_var);

}  // namespace fairassign::lp
