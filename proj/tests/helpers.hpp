#pragma once

#include <string>
#include <vector>

#include "fairassign/assignment.hpp"
#include "fairassign/errors.hpp"
#include "fairassign/profile.hpp"
#include "fairassign/rational.hpp"
#include "fairassign/rng.hpp"

namespace test_helpers {

inline fairassign::Rat q(long num, long den = 1) {
  fairassign::Rat r(num, den);
  r.canonicalize();
  return r;
}

// Profile over single-letter objects "a", "b", ... from rows like "abc"
// (best to worst); agents are named "1", "2", ...
inline fairassign::PreferenceProfile make_profile(
    const std::vector<std::string>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<std::string> agents, objects;
  for (int i = 0; i < n; ++i) {
    agents.push_back(std::to_string(i + 1));
    objects.push_back(std::string(1, static_cast<char>('a' + i)));
  }
  std::vector<std::vector<int>> prefs;
  for (const std::string& row : rows) {
    std::vector<int> p;
    for (char c : row) p.push_back(c - 'a');
    prefs.push_back(std::move(p));
  }
  return fairassign::PreferenceProfile(agents, objects, prefs);
}

// Assignment from rows of space-separated rationals: {"1/2 1/2 0", ...}.
inline fairassign::Assignment make_assignment(
    const std::vector<std::string>& rows) {
  std::vector<std::vector<fairassign::Rat>> matrix;
  for (const std::string& row : rows) {
    std::vector<fairassign::Rat> vals;
    std::string token;
    for (std::size_t i = 0; i <= row.size(); ++i) {
      if (i == row.size() || row[i] == ' ') {
        if (!token.empty()) {
          auto r = fairassign::rat_from_string(token);
          if (!r) throw fairassign::InputError("bad rational: " + token);
          vals.push_back(*r);
          token.clear();
        }
      } else {
        token += row[i];
      }
    }
    matrix.push_back(std::move(vals));
  }
  return fairassign::Assignment(std::move(matrix));
}

// Random profile with letter objects, uniform rankings.
inline fairassign::PreferenceProfile random_profile(int n,
                                                    fairassign::Rng& rng) {
  std::vector<std::string> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<int> perm = rng.permutation(n);
    std::string row;
    for (int o : perm) row += static_cast<char>('a' + o);
    rows.push_back(row);
  }
  return make_profile(rows);
}

// Exact random bistochastic matrix: a rational convex combination of a few
// random permutation matrices.
inline fairassign::Assignment random_assignment(int n, fairassign::Rng& rng) {
  const int terms = 1 + rng.below(4);
  std::vector<std::vector<fairassign::Rat>> m(
      n, std::vector<fairassign::Rat>(n, fairassign::Rat(0)));
  std::vector<fairassign::Rat> weights;
  fairassign::Rat total(0);
  for (int t = 0; t < terms; ++t) {
    weights.push_back(q(1 + rng.below(7)));
    total += weights.back();
  }
  for (int t = 0; t < terms; ++t) {
    const std::vector<int> perm = rng.permutation(n);
    const fairassign::Rat w = weights[t] / total;
    for (int i = 0; i < n; ++i) m[i][perm[i]] += w;
  }
  return fairassign::Assignment(std::move(m));
}

}  // namespace test_helpers
