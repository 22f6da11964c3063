#include "fairassign/matching.hpp"

#include <limits>
#include <queue>

#include "fairassign/errors.hpp"

namespace fairassign {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HopcroftKarp {
  const std::vector<std::vector<int>>& adj;
  std::vector<int> match_l, match_r, dist;

  HopcroftKarp(int n_left, int n_right,
               const std::vector<std::vector<int>>& adjacency)
      : adj(adjacency),
        match_l(n_left, -1),
        match_r(n_right, -1),
        dist(n_left) {}

  bool bfs() {
    std::queue<int> q;
    bool reachable_free = false;
    for (std::size_t u = 0; u < match_l.size(); ++u) {
      if (match_l[u] < 0) {
        dist[u] = 0;
        q.push(static_cast<int>(u));
      } else {
        dist[u] = kInf;
      }
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        const int w = match_r[v];
        if (w < 0) {
          reachable_free = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return reachable_free;
  }

  bool dfs(int u) {
    for (int v : adj[u]) {
      const int w = match_r[v];
      if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
        match_l[u] = v;
        match_r[v] = u;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  }
};

}  // namespace

BipartiteMatching max_bipartite_matching(
    int n_left, int n_right, const std::vector<std::vector<int>>& adj) {
  HopcroftKarp hk(n_left, n_right, adj);
  int matched = 0;
  while (hk.bfs()) {
    for (int u = 0; u < n_left; ++u) {
      if (hk.match_l[u] < 0 && hk.dfs(u)) ++matched;
    }
  }
  return {matched, std::move(hk.match_l), std::move(hk.match_r)};
}

std::vector<int> min_cost_perfect_matching(
    const std::vector<std::vector<std::int64_t>>& cost) {
  const int n = static_cast<int>(cost.size());
  if (n == 0) throw InputError("empty cost matrix");
  constexpr std::int64_t kBig = std::numeric_limits<std::int64_t>::max() / 4;

  // Potentials-based Hungarian algorithm, 1-indexed internal arrays.
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<std::int64_t> minv(n + 1, kBig);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      std::int64_t delta = kBig;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> match(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] > 0) match[p[j] - 1] = j - 1;
  }
  return match;
}

}  // namespace fairassign
