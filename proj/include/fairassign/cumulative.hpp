#pragma once

#include <vector>

#include "fairassign/assignment.hpp"
#include "fairassign/profile.hpp"
#include "fairassign/rational.hpp"

namespace fairassign {

// Bottom-up cumulative probabilities of one agent's allocation: b(k) is the
// total probability of receiving an object ranked k or worse. b(1) = 1 and
// b is non-increasing in k.
class CumulativeVector {
 public:
  CumulativeVector(int agent, std::vector<Rat> values);

  int agent() const { return agent_; }
  int size() const { return static_cast<int>(values_.size()); }

  // k in 1..n+1; b(n+1) == 0 by convention.
  const Rat& b(int k) const;

  // Probability of the k most preferred objects: t(k) = 1 - b(k+1),
  // for k in 0..n.
  Rat top(int k) const;

  bool operator==(const CumulativeVector& other) const = default;

 private:
  int agent_;
  std::vector<Rat> values_;  // values_[k-1] = b(k)
};

CumulativeVector cumulative_vector(const PreferenceProfile& profile,
                                   const Assignment& x, int agent);

// The comparison vector for an order sigma: one block of n entries per rank
// in sigma, block j holding {b_i(sigma_j)} over all agents sorted
// non-increasingly. The constant rank-1 block (all ones) is never included,
// so a full order over {2..n} yields (n-1)^2 entries.
class BlockVector {
 public:
  BlockVector(int n, std::vector<Rat> entries);

  int n() const { return n_; }
  int blocks() const { return static_cast<int>(entries_.size()) / n_; }
  const std::vector<Rat>& entries() const { return entries_; }
  const Rat& at(int block, int position) const {
    return entries_[block * n_ + position];
  }

  bool operator==(const BlockVector& other) const = default;

 private:
  int n_;
  std::vector<Rat> entries_;
};

BlockVector block_vector(const PreferenceProfile& profile, const Assignment& x,
                         const SigmaOrder& sigma);

enum class RDominance {
  Dominates,  // first vector lexicographically precedes (is better)
  Dominated,
  Equal,
};

// Lexicographic comparison of two block vectors built for the same n and
// sigma. The order is total, so distinct vectors always compare strictly.
RDominance r_dominates(const BlockVector& bx, const BlockVector& by);

// First-order stochastic dominance of row_a over row_b with respect to
// `agent`'s ranking: every top-k mass of row_a weakly exceeds row_b's.
// Both rows must be nonnegative and sum to one. Equality counts.
bool sd_dominates_allocation(const PreferenceProfile& profile, int agent,
                             const std::vector<Rat>& row_a,
                             const std::vector<Rat>& row_b);

// Top-k mass of a probability row under an agent's ranking.
Rat top_k_mass(const PreferenceProfile& profile, int agent,
               const std::vector<Rat>& row, int k);

}  // namespace fairassign
