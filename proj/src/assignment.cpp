#include "fairassign/assignment.hpp"

#include "fairassign/errors.hpp"
#include "fairassign/profile.hpp"

namespace fairassign {

Assignment::Assignment(std::vector<std::vector<Rat>> matrix)
    : matrix_(std::move(matrix)) {
  const int n = static_cast<int>(matrix_.size());
  if (n < 1) throw InputError("assignment matrix is empty");
  std::vector<Rat> col_sum(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(matrix_[i].size()) != n) {
      throw InputError("assignment matrix is not square");
    }
    Rat row_sum(0);
    for (int o = 0; o < n; ++o) {
      if (sgn(matrix_[i][o]) < 0) {
        throw InputError("assignment has a negative entry");
      }
      row_sum += matrix_[i][o];
      col_sum[o] += matrix_[i][o];
    }
    if (row_sum != 1) {
      throw InputError("assignment row " + std::to_string(i) +
                       " does not sum to 1");
    }
  }
  for (int o = 0; o < n; ++o) {
    if (col_sum[o] != 1) {
      throw InputError("assignment column " + std::to_string(o) +
                       " does not sum to 1");
    }
  }
}

Assignment Assignment::uniform(int n) {
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(1, n)));
  return Assignment(std::move(m));
}

Assignment Assignment::relabel_agents(const std::vector<int>& perm) const {
  const int n = size();
  if (!is_permutation(perm, n)) {
    throw InputError("agent relabeling is not a permutation");
  }
  std::vector<std::vector<Rat>> m(n);
  for (int i = 0; i < n; ++i) m[i] = matrix_[perm[i]];
  return Assignment(std::move(m));
}

Assignment Assignment::relabel_objects(const std::vector<int>& perm) const {
  const int n = size();
  if (!is_permutation(perm, n)) {
    throw InputError("object relabeling is not a permutation");
  }
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i) {
    for (int o = 0; o < n; ++o) m[i][o] = matrix_[i][perm[o]];
  }
  return Assignment(std::move(m));
}

DeterministicAssignment::DeterministicAssignment(
    std::vector<int> object_of_agent)
    : perm_(std::move(object_of_agent)) {
  if (!is_permutation(perm_, static_cast<int>(perm_.size())) ||
      perm_.empty()) {
    throw InputError("deterministic assignment must be a permutation");
  }
}

Assignment DeterministicAssignment::to_assignment() const {
  const int n = size();
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) m[i][perm_[i]] = 1;
  return Assignment(std::move(m));
}

}  // namespace fairassign
