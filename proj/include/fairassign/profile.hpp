#pragma once

#include <string>
#include <vector>

namespace fairassign {

// A problem instance: n agents with strict, complete rankings over n
// objects. External names are kept for I/O; all internal math is index
// based. Immutable after construction.
class PreferenceProfile {
 public:
  // preferences[i] lists agent i's objects from best to worst, as indices
  // into `objects`. Throws InputError if the lists are not permutations or
  // the instance is not square.
  PreferenceProfile(std::vector<std::string> agents,
                    std::vector<std::string> objects,
                    std::vector<std::vector<int>> preferences);

  // Same, with objects given by name.
  static PreferenceProfile from_names(
      std::vector<std::string> agents, std::vector<std::string> objects,
      const std::vector<std::vector<std::string>>& preference_names);

  int size() const { return n_; }

  // Rank of `object` in `agent`'s list; 1 = most preferred, n = least.
  int rank(int agent, int object) const { return rank_[agent][object]; }

  // Inverse of rank(): the object agent ranks at position `r`.
  int object_at_rank(int agent, int r) const { return pref_[agent][r - 1]; }

  // Agent i's list of objects, best to worst.
  const std::vector<int>& preference_list(int agent) const {
    return pref_[agent];
  }

  const std::vector<std::string>& agent_names() const { return agents_; }
  const std::vector<std::string>& object_names() const { return objects_; }

  int agent_index(const std::string& name) const;   // -1 if unknown
  int object_index(const std::string& name) const;  // -1 if unknown

  // Profile with agent rows permuted: agent i of the result has the
  // preferences of agent perm[i]. Names follow the rows.
  PreferenceProfile relabel_agents(const std::vector<int>& perm) const;

  // Profile over renamed objects: object o of the result is object perm[o]
  // of the original (rankings transported accordingly).
  PreferenceProfile relabel_objects(const std::vector<int>& perm) const;

  // Same preference matrix with one agent's list replaced.
  PreferenceProfile with_preference(int agent,
                                    std::vector<int> preference) const;

  bool operator==(const PreferenceProfile& other) const = default;

 private:
  int n_ = 0;
  std::vector<std::string> agents_;
  std::vector<std::string> objects_;
  std::vector<std::vector<int>> pref_;  // [agent][position] -> object
  std::vector<std::vector<int>> rank_;  // [agent][object] -> 1..n
};

// An ordering of the ranks {2,...,n} controlling which cumulative level is
// minimized first. The order (n, n-1, ..., 2) gives the Rawlsian rule.
class SigmaOrder {
 public:
  SigmaOrder(int n, std::vector<int> order);

  static SigmaOrder rawlsian(int n);      // (n, n-1, ..., 2)
  static SigmaOrder bottom_up(int n);     // (2, 3, ..., n)

  int n() const { return n_; }
  const std::vector<int>& ranks() const { return order_; }

  bool operator==(const SigmaOrder& other) const = default;

 private:
  int n_;
  std::vector<int> order_;
};

// True when `perm` is a permutation of {0,...,n-1}.
bool is_permutation(const std::vector<int>& perm, int n);

}  // namespace fairassign
