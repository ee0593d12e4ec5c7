#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "dipaths/digraph.hpp"

namespace dipaths {

/// Undirected (multi)graph on 0..n-1. Edges are stored with tail <= head.
/// Loops and repeated edges are representable so configuration-model output
/// can be held before simplicity is checked; `is_simple()` reports it.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), adj_(n) {}

  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), adj_(n) {
    edges_.reserve(edges.size());
    for (auto e : edges) {
      if (e.tail >= n || e.head >= n) {
        throw Error(ErrorCode::VertexOutOfRange,
                    "edge " + std::to_string(e.tail) + "-" + std::to_string(e.head) + " out of range");
      }
      if (e.tail > e.head) std::swap(e.tail, e.head);
      edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end());
    for (const auto& e : edges_) {
      adj_[e.tail].push_back(e.head);
      adj_[e.head].push_back(e.tail);  // a loop lists its vertex twice
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
  }

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (const auto& list : adj_) best = std::max(best, list.size());
    return best;
  }

  bool is_simple() const {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (edges_[i].tail == edges_[i].head) return false;
      if (i > 0 && edges_[i] == edges_[i - 1]) return false;
    }
    return true;
  }

  bool has_edge(Vertex u, Vertex v) const {
    return u < n_ && std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  bool is_connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::deque<Vertex> queue{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : adj_[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          queue.push_back(w);
        }
      }
    }
    return count == n_;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

/// The underlying undirected graph of a digraph (antiparallel pairs collapse).
inline Graph underlying_graph(const Digraph& d) {
  std::vector<Edge> edges;
  for (const auto& e : d.edges()) {
    Edge u{std::min(e.tail, e.head), std::max(e.tail, e.head)};
    edges.push_back(u);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(d.num_vertices(), std::move(edges));
}

/// Orientation of a simple graph: bit i of `mask` reverses edges()[i].
inline Digraph orientation_from_mask(const Graph& g, std::uint64_t mask) {
  std::vector<Edge> arcs;
  arcs.reserve(g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const auto& e = g.edges()[i];
    arcs.push_back((mask >> i) & 1U ? Edge{e.head, e.tail} : e);
  }
  return Digraph(g.num_vertices(), std::move(arcs));
}

/// BFS distances in an undirected graph, optionally ignoring some edges.
inline std::vector<std::size_t> graph_distances(const Graph& g, Vertex source,
                                                std::span<const Edge> removed = {}) {
  std::vector<Edge> skip(removed.begin(), removed.end());
  for (auto& e : skip)
    if (e.tail > e.head) std::swap(e.tail, e.head);
  std::sort(skip.begin(), skip.end());
  auto skipped = [&](Vertex a, Vertex b) {
    Edge e{std::min(a, b), std::max(a, b)};
    return std::binary_search(skip.begin(), skip.end(), e);
  };
  std::vector<std::size_t> dist(g.num_vertices(), kInfinity);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == kInfinity && !skipped(v, w)) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace dipaths
