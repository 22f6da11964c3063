#include "fairassign/lp.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <map>

#include "fairassign/errors.hpp"

namespace fairassign::lp {

namespace {
std::atomic<long> g_solve_count{0};
}

long solve_count() { return g_solve_count.load(); }

int LinearProgram::add_variable(std::string name) {
  names_.push_back(std::move(name));
  free_.push_back(false);
  return variable_count() - 1;
}

int LinearProgram::add_free_variable(std::string name) {
  names_.push_back(std::move(name));
  free_.push_back(true);
  return variable_count() - 1;
}

std::vector<std::pair<int, Rat>> LinearProgram::merge(
    std::vector<std::pair<int, Rat>> terms) const {
  std::map<int, Rat> by_var;
  for (auto& [var, coeff] : terms) {
    if (var < 0 || var >= variable_count()) {
      throw InputError("constraint references an undeclared variable");
    }
    by_var[var] += coeff;
  }
  std::vector<std::pair<int, Rat>> merged;
  merged.reserve(by_var.size());
  for (auto& [var, coeff] : by_var) {
    if (sgn(coeff) != 0) merged.emplace_back(var, coeff);
  }
  return merged;
}

void LinearProgram::add_constraint(std::vector<std::pair<int, Rat>> terms,
                                   Rel rel, Rat rhs) {
  constraints_.push_back(Constraint{merge(std::move(terms)), rel,
                                    std::move(rhs)});
}

void LinearProgram::set_objective(Sense sense,
                                  std::vector<std::pair<int, Rat>> terms,
                                  Rat constant) {
  sense_ = sense;
  objective_ = merge(std::move(terms));
  objective_constant_ = std::move(constant);
}

Rat LinearProgram::evaluate_objective(const std::vector<Rat>& values) const {
  Rat total = objective_constant_;
  for (const auto& [var, coeff] : objective_) total += coeff * values[var];
  return total;
}

bool LinearProgram::satisfies(const std::vector<Rat>& values) const {
  for (int v = 0; v < variable_count(); ++v) {
    if (!free_[v] && sgn(values[v]) < 0) return false;
  }
  for (const Constraint& c : constraints_) {
    Rat lhs(0);
    for (const auto& [var, coeff] : c.terms) lhs += coeff * values[var];
    const int diff = cmp(lhs, c.rhs);
    if (c.rel == Rel::Le && diff > 0) return false;
    if (c.rel == Rel::Ge && diff < 0) return false;
    if (c.rel == Rel::Eq && diff != 0) return false;
  }
  return true;
}

std::string to_lp_format(const LinearProgram& lp) {
  std::string out;
  out += lp.sense() == Sense::Minimize ? "Minimize\n" : "Maximize\n";
  out += " obj:";
  if (lp.objective().empty()) out += " 0";
  for (const auto& [var, coeff] : lp.objective()) {
    out += sgn(coeff) < 0 ? " - " : " + ";
    out += rat_to_string(abs(coeff)) + " " + lp.variable_name(var);
  }
  out += "\nSubject To\n";
  int row = 0;
  for (const auto& c : lp.constraints()) {
    out += " c" + std::to_string(row++) + ":";
    if (c.terms.empty()) out += " 0";
    for (const auto& [var, coeff] : c.terms) {
      out += sgn(coeff) < 0 ? " - " : " + ";
      out += rat_to_string(abs(coeff)) + " " + lp.variable_name(var);
    }
    switch (c.rel) {
      case Rel::Le: out += " <= "; break;
      case Rel::Eq: out += " = "; break;
      case Rel::Ge: out += " >= "; break;
    }
    out += rat_to_string(c.rhs) + "\n";
  }
  bool any_free = false;
  for (int v = 0; v < lp.variable_count(); ++v) any_free |= lp.is_free(v);
  if (any_free) {
    out += "Bounds\n";
    for (int v = 0; v < lp.variable_count(); ++v) {
      if (lp.is_free(v)) out += " " + lp.variable_name(v) + " free\n";
    }
  }
  out += "End\n";
  return out;
}

namespace {

// Dense tableau for the two-phase method. Columns: structural variables
// (free ones split into a positive and a negative part), then slack /
// surplus columns, then artificials, then the right-hand side. Rows carry
// the constraints; row m holds the phase-2 reduced costs and row m+1 the
// phase-1 costs while phase 1 runs.
class SimplexTableau {
 public:
  explicit SimplexTableau(const LinearProgram& lp) : lp_(lp) {
    build();
  }

  LpSolution run() {
    if (!phase_one()) return {SolveStatus::Infeasible, Rat(0), {}};
    if (!phase_two()) return {SolveStatus::Unbounded, Rat(0), {}};
    return extract();
  }

 private:
  void build() {
    const int n_user = lp_.variable_count();
    col_of_var_.assign(n_user, -1);
    neg_col_of_var_.assign(n_user, -1);
    int cols = 0;
    for (int v = 0; v < n_user; ++v) {
      col_of_var_[v] = cols++;
      if (lp_.is_free(v)) neg_col_of_var_[v] = cols++;
    }
    n_struct_ = cols;

    const auto& rows = lp_.constraints();
    m_ = static_cast<int>(rows.size());

    // One slack/surplus column per inequality, artificials assigned later.
    int n_slack = 0;
    for (const auto& c : rows) {
      if (c.rel != Rel::Eq) ++n_slack;
    }
    // Upper bound on artificial count: one per row.
    width_ = n_struct_ + n_slack + m_ + 1;
    rhs_col_ = width_ - 1;

    tab_.assign(m_ + 2, std::vector<Rat>(width_, Rat(0)));
    basis_.assign(m_, -1);
    row_alive_.assign(m_, true);

    int slack_next = n_struct_;
    artificial_begin_ = n_struct_ + n_slack;
    int artificial_next = artificial_begin_;

    for (int r = 0; r < m_; ++r) {
      const Constraint& c = rows[r];
      // Flip the row if needed so the rhs is nonnegative.
      const bool flip = sgn(c.rhs) < 0;
      Rel rel = c.rel;
      if (flip && rel != Rel::Eq) rel = (rel == Rel::Le) ? Rel::Ge : Rel::Le;

      for (const auto& [var, coeff] : c.terms) {
        const Rat signed_coeff = flip ? Rat(-coeff) : coeff;
        tab_[r][col_of_var_[var]] += signed_coeff;
        if (neg_col_of_var_[var] >= 0) {
          tab_[r][neg_col_of_var_[var]] -= signed_coeff;
        }
      }
      tab_[r][rhs_col_] = flip ? Rat(-c.rhs) : c.rhs;

      if (rel == Rel::Le) {
        const int s = slack_next++;
        tab_[r][s] = 1;
        basis_[r] = s;
      } else if (rel == Rel::Ge) {
        const int s = slack_next++;
        tab_[r][s] = -1;
        const int a = artificial_next++;
        tab_[r][a] = 1;
        basis_[r] = a;
      } else {
        const int a = artificial_next++;
        tab_[r][a] = 1;
        basis_[r] = a;
      }
    }
    n_cols_used_ = artificial_next;

    // Phase-2 cost row: minimize. Maximization is handled by negating.
    const Rat flip_obj = lp_.sense() == Sense::Minimize ? Rat(1) : Rat(-1);
    for (const auto& [var, coeff] : lp_.objective()) {
      tab_[m_][col_of_var_[var]] += flip_obj * coeff;
      if (neg_col_of_var_[var] >= 0) {
        tab_[m_][neg_col_of_var_[var]] -= flip_obj * coeff;
      }
    }

    // Phase-1 cost row: minimize the sum of artificials. Price out the
    // initially basic artificials.
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] >= artificial_begin_) {
        for (int j = 0; j < width_; ++j) {
          if (sgn(tab_[r][j]) != 0) tab_[m_ + 1][j] -= tab_[r][j];
        }
      }
    }
    for (int a = artificial_begin_; a < n_cols_used_; ++a) {
      tab_[m_ + 1][a] = 0;
    }
  }

  // Pivot on (row, col): make col basic in row.
  void pivot(int row, int col) {
    std::vector<Rat>& prow = tab_[row];
    const Rat inv = Rat(1) / prow[col];
    for (int j = 0; j < width_; ++j) {
      if (sgn(prow[j]) != 0) prow[j] *= inv;
    }
    prow[col] = 1;
    for (int r = 0; r < m_ + 2; ++r) {
      if (r == row || !alive(r)) continue;
      const Rat factor = tab_[r][col];
      if (sgn(factor) == 0) continue;
      std::vector<Rat>& target = tab_[r];
      for (int j = 0; j < width_; ++j) {
        if (sgn(prow[j]) != 0) target[j] -= factor * prow[j];
      }
      target[col] = 0;
    }
    basis_[row] = col;
  }

  bool alive(int r) const { return r >= m_ || row_alive_[r]; }

  // Bland's rule: entering column = lowest-index column with a negative
  // reduced cost; leaving row = ratio-test winner with the lowest basic
  // column index. Returns false when no entering column exists (optimal).
  // Sets *unbounded when an entering column has no positive entry.
  bool bland_step(int cost_row, bool allow_artificial, bool* unbounded) {
    int enter = -1;
    for (int j = 0; j < n_cols_used_; ++j) {
      if (!allow_artificial && j >= artificial_begin_) break;
      if (sgn(tab_[cost_row][j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;

    int leave = -1;
    Rat best_ratio;
    for (int r = 0; r < m_; ++r) {
      if (!row_alive_[r] || sgn(tab_[r][enter]) <= 0) continue;
      Rat ratio = tab_[r][rhs_col_] / tab_[r][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis_[r] < basis_[leave])) {
        leave = r;
        best_ratio = std::move(ratio);
      }
    }
    if (leave < 0) {
      *unbounded = true;
      return false;
    }
    pivot(leave, enter);
    return true;
  }

  bool phase_one() {
    bool has_artificial = false;
    for (int r = 0; r < m_; ++r) {
      has_artificial |= basis_[r] >= artificial_begin_;
    }
    if (has_artificial) {
      bool unbounded = false;
      while (bland_step(m_ + 1, true, &unbounded)) {
      }
      // Phase 1 is bounded below by zero, so `unbounded` cannot trigger.
      if (sgn(tab_[m_ + 1][rhs_col_]) != 0) return false;
      // Drive leftover artificials out of the basis; an all-zero row is a
      // redundant constraint and is dropped from further pivoting.
      for (int r = 0; r < m_; ++r) {
        if (basis_[r] < artificial_begin_) continue;
        int col = -1;
        for (int j = 0; j < artificial_begin_; ++j) {
          if (sgn(tab_[r][j]) != 0) {
            col = j;
            break;
          }
        }
        if (col >= 0) {
          pivot(r, col);
        } else {
          row_alive_[r] = false;
        }
      }
    }
    return true;
  }

  bool phase_two() {
    bool unbounded = false;
    while (bland_step(m_, false, &unbounded)) {
    }
    return !unbounded;
  }

  LpSolution extract() {
    std::vector<Rat> cols(n_struct_, Rat(0));
    for (int r = 0; r < m_; ++r) {
      if (row_alive_[r] && basis_[r] < n_struct_) {
        cols[basis_[r]] = tab_[r][rhs_col_];
      }
    }
    std::vector<Rat> values(lp_.variable_count(), Rat(0));
    for (int v = 0; v < lp_.variable_count(); ++v) {
      values[v] = cols[col_of_var_[v]];
      if (neg_col_of_var_[v] >= 0) values[v] -= cols[neg_col_of_var_[v]];
    }
    Rat objective = lp_.evaluate_objective(values);
    return {SolveStatus::Optimal, std::move(objective), std::move(values)};
  }

  const LinearProgram& lp_;
  std::vector<std::vector<Rat>> tab_;
  std::vector<int> basis_;
  std::vector<bool> row_alive_;
  std::vector<int> col_of_var_;
  std::vector<int> neg_col_of_var_;
  int m_ = 0;
  int n_struct_ = 0;
  int n_cols_used_ = 0;
  int artificial_begin_ = 0;
  int width_ = 0;
  int rhs_col_ = 0;
};

bool trace_enabled() {
  static const bool enabled = [] {
    const char* env = std::getenv("FAIRASSIGN_LP_TRACE");
    return env != nullptr && env[0] != '\0';
  }();
  return enabled;
}

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  g_solve_count.fetch_add(1);
  if (trace_enabled()) {
    std::cerr << "=== LP " << g_solve_count.load() << " ===\n"
              << to_lp_format(lp);
  }
  SimplexTableau tableau(lp);
  LpSolution solution = tableau.run();
  if (solution.status == SolveStatus::Optimal) {
    if (!lp.satisfies(solution.values)) {
      throw InternalCheckError(
          "simplex returned a point violating its own constraints");
    }
    if (lp.evaluate_objective(solution.values) != solution.objective) {
      throw InternalCheckError("simplex objective does not re-evaluate");
    }
  }
  if (trace_enabled()) {
    std::cerr << "status="
              << (solution.status == SolveStatus::Optimal     ? "optimal"
                  : solution.status == SolveStatus::Infeasible ? "infeasible"
                                                                : "unbounded");
    if (solution.status == SolveStatus::Optimal) {
      std::cerr << " objective=" << rat_to_string(solution.objective);
    }
    std::cerr << "\n";
  }
  return solution;
}

LinearProgram build_bistochastic(int n) {
  if (n < 1) throw InputError("bistochastic program needs n >= 1");
  LinearProgram prog;
  for (int i = 0; i < n; ++i) {
    for (int o = 0; o < n; ++o) {
      prog.add_variable("x_" + std::to_string(i) + "_" + std::to_string(o));
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, Rat>> row;
    for (int o = 0; o < n; ++o) row.emplace_back(assignment_var(n, i, o), 1);
    prog.add_constraint(std::move(row), Rel::Eq, Rat(1));
  }
  for (int o = 0; o < n; ++o) {
    std::vector<std::pair<int, Rat>> col;
    for (int i = 0; i < n; ++i) col.emplace_back(assignment_var(n, i, o), 1);
    prog.add_constraint(std::move(col), Rel::Eq, Rat(1));
  }
  return prog;
}

namespace {

std::vector<std::pair<int, Rat>> cumulative_terms(
    const PreferenceProfile& profile, int agent, int k) {
  const int n = profile.size();
  if (agent < 0 || agent >= n) throw InputError("unknown agent index");
  if (k < 1 || k > n) throw InputError("rank out of range");
  std::vector<std::pair<int, Rat>> terms;
  for (int r = k; r <= n; ++r) {
    terms.emplace_back(
        assignment_var(n, agent, profile.object_at_rank(agent, r)), Rat(1));
  }
  return terms;
}

}  // namespace

void add_cumulative_constraint(LinearProgram& prog,
                               const PreferenceProfile& profile, int agent,
                               int k, Rel rel, Rat rhs) {
  prog.add_constraint(cumulative_terms(profile, agent, k), rel,
                      std::move(rhs));
}

void add_cumulative_constraint(LinearProgram& prog,
                               const PreferenceProfile& profile, int agent,
                               int k, Rel rel, int bound_var) {
  auto terms = cumulative_terms(profile, agent, k);
  terms.emplace_back(bound_var, Rat(-1));
  prog.add_constraint(std::move(terms), rel, Rat(0));
}

}  // namespace fairassign::lp
