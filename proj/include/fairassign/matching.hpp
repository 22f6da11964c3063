#pragma once

#include <cstdint>
#include <vector>

namespace fairassign {

struct BipartiteMatching {
  int size = 0;
  std::vector<int> right_of_left;  // -1 when unmatched
  std::vector<int> left_of_right;
};

// Maximum-cardinality bipartite matching, Hopcroft-Karp. adj[u] lists the
// right vertices reachable from left vertex u.
BipartiteMatching max_bipartite_matching(int n_left, int n_right,
                                         const std::vector<std::vector<int>>& adj);

// Minimum-cost perfect matching on a square cost matrix (Hungarian
// algorithm with potentials). Returns the matched column per row.
std::vector<int> min_cost_perfect_matching(
    const std::vector<std::vector<std::int64_t>>& cost);

}  // namespace fairassign
