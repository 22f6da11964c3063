#include "fairassign/cumulative.hpp"

#include <algorithm>
#include <functional>

#include "fairassign/errors.hpp"

namespace fairassign {

namespace {
const Rat kZero(0);
}

CumulativeVector::CumulativeVector(int agent, std::vector<Rat> values)
    : agent_(agent), values_(std::move(values)) {
  if (values_.empty() || values_[0] != 1) {
    throw InputError("cumulative vector must start with b(1) = 1");
  }
  for (std::size_t k = 0; k + 1 < values_.size(); ++k) {
    if (values_[k] < values_[k + 1]) {
      throw InputError("cumulative vector must be non-increasing");
    }
  }
  if (sgn(values_.back()) < 0) {
    throw InputError("cumulative vector must be nonnegative");
  }
}

const Rat& CumulativeVector::b(int k) const {
  if (k == size() + 1) return kZero;
  return values_[k - 1];
}

Rat CumulativeVector::top(int k) const { return Rat(1) - b(k + 1); }

CumulativeVector cumulative_vector(const PreferenceProfile& profile,
                                   const Assignment& x, int agent) {
  const int n = profile.size();
  if (x.size() != n) {
    throw InputError("assignment size does not match the profile");
  }
  if (agent < 0 || agent >= n) throw InputError("unknown agent index");
  // Accumulate from the worst rank upward: b(k) = b(k+1) + x[i][o_k].
  std::vector<Rat> b(n);
  Rat acc(0);
  for (int k = n; k >= 1; --k) {
    acc += x.at(agent, profile.object_at_rank(agent, k));
    b[k - 1] = acc;
  }
  return CumulativeVector(agent, std::move(b));
}

BlockVector::BlockVector(int n, std::vector<Rat> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n_ < 1 || entries_.size() % static_cast<std::size_t>(n_) != 0) {
    throw InputError("block vector length must be a multiple of n");
  }
}

BlockVector block_vector(const PreferenceProfile& profile, const Assignment& x,
                         const SigmaOrder& sigma) {
  const int n = profile.size();
  if (sigma.n() != n || x.size() != n) {
    throw InputError("sigma order or assignment does not match the profile");
  }
  std::vector<CumulativeVector> cumulative;
  cumulative.reserve(n);
  for (int i = 0; i < n; ++i) {
    cumulative.push_back(cumulative_vector(profile, x, i));
  }
  std::vector<Rat> entries;
  entries.reserve(static_cast<std::size_t>(n) * sigma.ranks().size());
  for (int k : sigma.ranks()) {
    std::vector<Rat> block;
    block.reserve(n);
    for (int i = 0; i < n; ++i) block.push_back(cumulative[i].b(k));
    std::sort(block.begin(), block.end(), std::greater<Rat>());
    for (Rat& v : block) entries.push_back(std::move(v));
  }
  return BlockVector(n, std::move(entries));
}

RDominance r_dominates(const BlockVector& bx, const BlockVector& by) {
  if (bx.n() != by.n() || bx.entries().size() != by.entries().size()) {
    throw InputError("block vectors are not comparable");
  }
  const auto& a = bx.entries();
  const auto& b = by.entries();
  for (std::size_t j = 0; j < a.size(); ++j) {
    const int c = cmp(a[j], b[j]);
    if (c < 0) return RDominance::Dominates;
    if (c > 0) return RDominance::Dominated;
  }
  return RDominance::Equal;
}

Rat top_k_mass(const PreferenceProfile& profile, int agent,
               const std::vector<Rat>& row, int k) {
  Rat mass(0);
  for (int r = 1; r <= k; ++r) mass += row[profile.object_at_rank(agent, r)];
  return mass;
}

bool sd_dominates_allocation(const PreferenceProfile& profile, int agent,
                             const std::vector<Rat>& row_a,
                             const std::vector<Rat>& row_b) {
  const int n = profile.size();
  if (static_cast<int>(row_a.size()) != n ||
      static_cast<int>(row_b.size()) != n) {
    throw InputError("allocation rows do not match the profile size");
  }
  Rat sum_a(0), sum_b(0), top_a(0), top_b(0);
  for (int o = 0; o < n; ++o) {
    if (sgn(row_a[o]) < 0 || sgn(row_b[o]) < 0) {
      throw InputError("allocation rows must be nonnegative");
    }
    sum_a += row_a[o];
    sum_b += row_b[o];
  }
  if (sum_a != 1 || sum_b != 1) {
    throw InputError("allocation rows must sum to one");
  }
  for (int k = 1; k <= n; ++k) {
    const int o = profile.object_at_rank(agent, k);
    top_a += row_a[o];
    top_b += row_b[o];
    if (top_a < top_b) return false;
  }
  return true;
}

}  // namespace fairassign
