#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <vector>

#include "dipaths/dipaths.hpp"

namespace testing {

using namespace dipaths;

/// Random DAG: edges go from lower to higher position in a random permutation.
inline Digraph random_dag(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  rng.shuffle(order);
  std::set<Edge> edges;
  const std::size_t cap = n * (n - 1) / 2;
  m = std::min(m, cap);
  while (edges.size() < m) {
    auto i = rng.below(n);
    auto j = rng.below(n);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    edges.insert({order[i], order[j]});
  }
  return Digraph(n, {edges.begin(), edges.end()});
}

/// Random digraph without loops or repeated arcs; antiparallel pairs allowed.
inline Digraph random_digraph(Rng& rng, std::size_t n, std::size_t m) {
  std::set<Edge> edges;
  m = std::min(m, n * (n - 1));
  while (edges.size() < m) {
    auto u = rng.below(n);
    auto v = rng.below(n);
    if (u != v) edges.insert({u, v});
  }
  return Digraph(n, {edges.begin(), edges.end()});
}

/// Random connected simple graph: a random spanning tree plus extra edges.
inline Graph random_connected_graph(Rng& rng, std::size_t n, std::size_t m) {
  std::set<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    Vertex u = rng.below(v);
    edges.insert({u, v});
  }
  m = std::min(m, n * (n - 1) / 2);
  while (edges.size() < m) {
    auto u = rng.below(n);
    auto v = rng.below(n);
    if (u == v) continue;
    edges.insert({std::min(u, v), std::max(u, v)});
  }
  return Graph(n, {edges.begin(), edges.end()});
}

// ---------------------------------------------------------------------------
// Independent oracles

/// ex(D) straight from the definition, half the sum of |d+ - d-|.
inline std::size_t oracle_excess(const Digraph& d) {
  std::vector<long> diff(d.num_vertices(), 0);
  for (const auto& e : d.edges()) {
    ++diff[e.tail];
    --diff[e.head];
  }
  long total = 0;
  for (long x : diff) total += std::labs(x);
  return static_cast<std::size_t>(total / 2);
}

/// pn by dynamic programming over edge subsets: dp[S] = 1 + min dp[S \ T]
/// over subsets T of S that form one path and contain the lowest edge of S.
inline std::size_t oracle_pn(const Digraph& d) {
  const std::size_t m = d.num_edges();
  const std::size_t n = d.num_vertices();
  const std::uint32_t full = (1U << m) - 1;
  std::vector<char> is_path(full + 1, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    std::vector<int> in(n, 0), out(n, 0);
    std::vector<Vertex> next(n, kInfinity);
    std::size_t count = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (s >> i & 1U) {
        const auto& e = d.edges()[i];
        ++out[e.tail];
        ++in[e.head];
        next[e.tail] = e.head;
        ++count;
      }
    }
    bool ok = true;
    Vertex start = kInfinity;
    for (Vertex v = 0; v < n && ok; ++v) {
      if (in[v] > 1 || out[v] > 1) ok = false;
      if (out[v] == 1 && in[v] == 0) {
        if (start != kInfinity) ok = false;
        start = v;
      }
    }
    if (!ok || start == kInfinity) continue;
    std::size_t walked = 0;
    for (Vertex v = start; next[v] != kInfinity; v = next[v]) ++walked;
    is_path[s] = walked == count;
  }
  std::vector<std::size_t> dp(full + 1, kInfinity);
  dp[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    const std::uint32_t low = s & (~s + 1);
    for (std::uint32_t t = s; t; t = (t - 1) & s) {
      if ((t & low) && is_path[t] && dp[s ^ t] != kInfinity) dp[s] = std::min(dp[s], dp[s ^ t] + 1);
    }
  }
  return dp[full];
}

/// Girth by boolean matrix closure: shortest k with a closed walk of length
/// k through some vertex. The shortest closed walk is always a cycle.
inline std::size_t oracle_girth(const Digraph& d) {
  const std::size_t n = d.num_vertices();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0)), reach = adj;
  for (const auto& e : d.edges()) adj[e.tail][e.head] = 1;
  reach = adj;
  for (std::size_t k = 1; k <= n; ++k) {
    for (Vertex v = 0; v < n; ++v)
      if (reach[v][v]) return k;
    std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b)
        if (reach[a][b])
          for (Vertex c = 0; c < n; ++c)
            if (adj[b][c]) next[a][c] = 1;
    reach = std::move(next);
  }
  return kInfinity;
}

/// All-pairs underlying distances by Floyd-Warshall.
inline std::vector<std::vector<std::size_t>> oracle_distances(const Digraph& d) {
  const std::size_t n = d.num_vertices();
  std::vector<std::vector<std::size_t>> dist(n, std::vector<std::size_t>(n, kInfinity));
  for (Vertex v = 0; v < n; ++v) dist[v][v] = 0;
  for (const auto& e : d.edges()) dist[e.tail][e.head] = dist[e.head][e.tail] = 1;
  for (Vertex k = 0; k < n; ++k)
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b)
        if (dist[a][k] != kInfinity && dist[k][b] != kInfinity)
          dist[a][b] = std::min(dist[a][b], dist[a][k] + dist[k][b]);
  return dist;
}

}  // namespace testing
