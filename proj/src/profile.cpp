#include "fairassign/profile.hpp"

#include <algorithm>
#include <unordered_map>

#include "fairassign/errors.hpp"

namespace fairassign {

bool is_permutation(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

PreferenceProfile::PreferenceProfile(std::vector<std::string> agents,
                                     std::vector<std::string> objects,
                                     std::vector<std::vector<int>> preferences)
    : n_(static_cast<int>(agents.size())),
      agents_(std::move(agents)),
      objects_(std::move(objects)),
      pref_(std::move(preferences)) {
  if (n_ < 1) throw InputError("profile needs at least one agent");
  if (static_cast<int>(objects_.size()) != n_) {
    throw InputError("problem is not square: " + std::to_string(n_) +
                     " agents vs " + std::to_string(objects_.size()) +
                     " objects");
  }
  if (static_cast<int>(pref_.size()) != n_) {
    throw InputError("expected one preference list per agent");
  }
  rank_.assign(n_, std::vector<int>(n_, 0));
  for (int i = 0; i < n_; ++i) {
    if (!is_permutation(pref_[i], n_)) {
      throw InputError("preference list of agent '" + agents_[i] +
                       "' is not a permutation of the objects");
    }
    for (int pos = 0; pos < n_; ++pos) rank_[i][pref_[i][pos]] = pos + 1;
  }
}

PreferenceProfile PreferenceProfile::from_names(
    std::vector<std::string> agents, std::vector<std::string> objects,
    const std::vector<std::vector<std::string>>& preference_names) {
  std::unordered_map<std::string, int> index;
  for (std::size_t o = 0; o < objects.size(); ++o) {
    if (!index.emplace(objects[o], static_cast<int>(o)).second) {
      throw InputError("duplicate object name '" + objects[o] + "'");
    }
  }
  std::vector<std::vector<int>> prefs;
  prefs.reserve(preference_names.size());
  for (std::size_t i = 0; i < preference_names.size(); ++i) {
    std::vector<int> row;
    row.reserve(preference_names[i].size());
    for (const std::string& name : preference_names[i]) {
      auto it = index.find(name);
      if (it == index.end()) {
        throw InputError("agent '" + (i < agents.size() ? agents[i]
                                                        : std::to_string(i)) +
                         "' ranks unknown object '" + name + "'");
      }
      row.push_back(it->second);
    }
    prefs.push_back(std::move(row));
  }
  return PreferenceProfile(std::move(agents), std::move(objects),
                           std::move(prefs));
}

int PreferenceProfile::agent_index(const std::string& name) const {
  auto it = std::find(agents_.begin(), agents_.end(), name);
  return it == agents_.end() ? -1 : static_cast<int>(it - agents_.begin());
}

int PreferenceProfile::object_index(const std::string& name) const {
  auto it = std::find(objects_.begin(), objects_.end(), name);
  return it == objects_.end() ? -1 : static_cast<int>(it - objects_.begin());
}

PreferenceProfile PreferenceProfile::relabel_agents(
    const std::vector<int>& perm) const {
  if (!is_permutation(perm, n_)) {
    throw InputError("agent relabeling is not a permutation");
  }
  std::vector<std::string> agents(n_);
  std::vector<std::vector<int>> prefs(n_);
  for (int i = 0; i < n_; ++i) {
    agents[i] = agents_[perm[i]];
    prefs[i] = pref_[perm[i]];
  }
  return PreferenceProfile(std::move(agents), objects_, std::move(prefs));
}

PreferenceProfile PreferenceProfile::relabel_objects(
    const std::vector<int>& perm) const {
  if (!is_permutation(perm, n_)) {
    throw InputError("object relabeling is not a permutation");
  }
  // inverse[old] = new position of that object
  std::vector<int> inverse(n_);
  for (int o = 0; o < n_; ++o) inverse[perm[o]] = o;
  std::vector<std::string> objects(n_);
  for (int o = 0; o < n_; ++o) objects[o] = objects_[perm[o]];
  std::vector<std::vector<int>> prefs(n_, std::vector<int>(n_));
  for (int i = 0; i < n_; ++i) {
    for (int pos = 0; pos < n_; ++pos) prefs[i][pos] = inverse[pref_[i][pos]];
  }
  return PreferenceProfile(agents_, std::move(objects), std::move(prefs));
}

PreferenceProfile PreferenceProfile::with_preference(
    int agent, std::vector<int> preference) const {
  std::vector<std::vector<int>> prefs = pref_;
  prefs[agent] = std::move(preference);
  return PreferenceProfile(agents_, objects_, std::move(prefs));
}

SigmaOrder::SigmaOrder(int n, std::vector<int> order)
    : n_(n), order_(std::move(order)) {
  if (n < 1) throw InputError("sigma order needs n >= 1");
  std::vector<bool> seen(n + 1, false);
  if (static_cast<int>(order_.size()) != n - 1) {
    throw InputError("sigma order must list each rank in {2..n} once");
  }
  for (int k : order_) {
    if (k < 2 || k > n || seen[k]) {
      throw InputError("sigma order must list each rank in {2..n} once");
    }
    seen[k] = true;
  }
}

SigmaOrder SigmaOrder::rawlsian(int n) {
  std::vector<int> order;
  for (int k = n; k >= 2; --k) order.push_back(k);
  return SigmaOrder(n, std::move(order));
}

SigmaOrder SigmaOrder::bottom_up(int n) {
  std::vector<int> order;
  for (int k = 2; k <= n; ++k) order.push_back(k);
  return SigmaOrder(n, std::move(order));
}

}  // namespace fairassign
