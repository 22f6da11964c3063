#pragma once

#include <vector>

#include "fairassign/rational.hpp"

namespace fairassign {

// A random assignment: an n x n bistochastic matrix of exact rationals,
// rows indexed by agents and columns by objects. The constructor rejects
// anything that is not exactly bistochastic.
class Assignment {
 public:
  explicit Assignment(std::vector<std::vector<Rat>> matrix);

  static Assignment uniform(int n);

  int size() const { return static_cast<int>(matrix_.size()); }
  const Rat& at(int agent, int object) const { return matrix_[agent][object]; }
  const std::vector<Rat>& row(int agent) const { return matrix_[agent]; }
  const std::vector<std::vector<Rat>>& matrix() const { return matrix_; }

  Assignment relabel_agents(const std::vector<int>& perm) const;
  Assignment relabel_objects(const std::vector<int>& perm) const;

  bool operator==(const Assignment& other) const = default;

 private:
  std::vector<std::vector<Rat>> matrix_;
};

// A deterministic assignment: a bijection agent -> object.
class DeterministicAssignment {
 public:
  explicit DeterministicAssignment(std::vector<int> object_of_agent);

  int size() const { return static_cast<int>(perm_.size()); }
  int object_of(int agent) const { return perm_[agent]; }
  const std::vector<int>& mapping() const { return perm_; }

  Assignment to_assignment() const;

  bool operator==(const DeterministicAssignment& other) const = default;

 private:
  std::vector<int> perm_;
};

}  // namespace fairassign
