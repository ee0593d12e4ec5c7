#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <iterator>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dipaths/error.hpp"

namespace dipaths {

using Vertex = std::size_t;

/// Sentinel for "no path" distances and acyclic girth.
inline constexpr std::size_t kInfinity = std::numeric_limits<std::size_t>::max();

struct Edge {
  Vertex tail = 0;
  Vertex head = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(e.tail) << 32) ^ e.head);
  }
};

/// Loop-free directed graph on vertices 0..n-1 with at most one edge per
/// ordered pair. Antiparallel pairs are allowed. Immutable once built; edges
/// are kept in lexicographic order and the adjacency lists are sorted.
class Digraph {
 public:
  Digraph() = default;

  explicit Digraph(std::size_t n) : n_(n), out_(n), in_(n) {}

  Digraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), out_(n), in_(n) {
    for (const auto& e : edges_) {
      if (e.tail >= n_ || e.head >= n_) {
        throw Error(ErrorCode::VertexOutOfRange,
                    "edge " + std::to_string(e.tail) + "->" + std::to_string(e.head) + " outside 0.." +
                        std::to_string(n_ == 0 ? 0 : n_ - 1));
      }
      if (e.tail == e.head) {
        throw Error(ErrorCode::Loop, "loop at vertex " + std::to_string(e.tail));
      }
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
      throw Error(ErrorCode::DuplicateEdge,
                  "edge " + std::to_string(dup->tail) + "->" + std::to_string(dup->head) + " given twice");
    }
    for (const auto& e : edges_) {
      out_[e.tail].push_back(e.head);
      in_[e.head].push_back(e.tail);
    }
    for (auto& list : in_) std::sort(list.begin(), list.end());
  }

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Vertex> out(Vertex v) const { return out_[v]; }
  std::span<const Vertex> in(Vertex v) const { return in_[v]; }
  std::size_t out_degree(Vertex v) const { return out_[v].size(); }
  std::size_t in_degree(Vertex v) const { return in_[v].size(); }

  bool has_edge(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) return false;
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
  }

  /// Position of u->v in edges(), if present.
  std::optional<std::size_t> edge_index(Vertex u, Vertex v) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
    if (it == edges_.end() || *it != Edge{u, v}) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  /// Copy with the given edges removed. Every removed edge must be present.
  Digraph without(std::span<const Edge> removed) const {
    std::vector<Edge> sorted(removed.begin(), removed.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<Edge> kept;
    kept.reserve(edges_.size());
    std::set_difference(edges_.begin(), edges_.end(), sorted.begin(), sorted.end(), std::back_inserter(kept));
    if (kept.size() + sorted.size() != edges_.size()) {
      throw Error(ErrorCode::InvalidArgument, "removing edges that are absent or repeated");
    }
    return Digraph(n_, std::move(kept));
  }

  Digraph reversed() const {
    std::vector<Edge> flipped;
    flipped.reserve(edges_.size());
    for (const auto& e : edges_) flipped.push_back({e.head, e.tail});
    return Digraph(n_, std::move(flipped));
  }

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

// ---------------------------------------------------------------------------
// Excess and vertex signs

enum class Sign { Plus, Minus, Zero };

constexpr const char* to_string(Sign s) {
  switch (s) {
    case Sign::Plus: return "plus";
    case Sign::Minus: return "minus";
    case Sign::Zero: return "zero";
  }
  return "?";
}

struct VertexSign {
  Sign sign = Sign::Zero;
  std::size_t ex_plus = 0;
  std::size_t ex_minus = 0;

  std::size_t excess() const noexcept { return std::max(ex_plus, ex_minus); }
  friend bool operator==(const VertexSign&, const VertexSign&) = default;
};

class SignTable {
 public:
  SignTable() = default;
  explicit SignTable(std::vector<VertexSign> entries) : entries_(std::move(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  const VertexSign& operator[](Vertex v) const { return entries_[v]; }
  Sign sign(Vertex v) const { return entries_[v].sign; }
  bool is_plus(Vertex v) const { return entries_[v].sign == Sign::Plus; }
  bool is_minus(Vertex v) const { return entries_[v].sign == Sign::Minus; }
  bool is_zero(Vertex v) const { return entries_[v].sign == Sign::Zero; }

  std::vector<Vertex> zero_vertices() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < entries_.size(); ++v)
      if (entries_[v].sign == Sign::Zero) out.push_back(v);
    return out;
  }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::vector<VertexSign> entries_;
};

struct ExcessReport {
  std::size_t excess = 0;
  SignTable signs;
};

/// ex(D) = sum of max(d+ - d-, 0) over vertices, with the per-vertex table.
inline ExcessReport excess(const Digraph& d) {
  std::vector<VertexSign> table(d.num_vertices());
  std::size_t total = 0;
  for (Vertex v = 0; v < d.num_vertices(); ++v) {
    const auto out = d.out_degree(v);
    const auto in = d.in_degree(v);
    auto& entry = table[v];
    if (out > in) {
      entry = {Sign::Plus, out - in, 0};
      total += out - in;
    } else if (in > out) {
      entry = {Sign::Minus, 0, in - out};
    }
  }
  return {total, SignTable(std::move(table))};
}

inline std::size_t max_semi_degree(const Digraph& d) {
  std::size_t best = 0;
  for (Vertex v = 0; v < d.num_vertices(); ++v) best = std::max({best, d.out_degree(v), d.in_degree(v)});
  return best;
}

// ---------------------------------------------------------------------------
// Paths and cycles

/// Directed path v_1 ... v_k, k >= 2, as an ordered vertex sequence.
struct Path {
  std::vector<Vertex> vertices;

  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) out.push_back({vertices[i], vertices[i + 1]});
    return out;
  }

  std::optional<std::size_t> position(Vertex v) const {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
  }

  bool contains(Vertex v) const { return position(v).has_value(); }

  /// Subpath between two positions, inclusive.
  Path slice(std::size_t from, std::size_t to) const {
    return Path{std::vector<Vertex>(vertices.begin() + static_cast<std::ptrdiff_t>(from),
                                    vertices.begin() + static_cast<std::ptrdiff_t>(to) + 1)};
  }

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

/// Directed cycle v_1 ... v_k (closing edge v_k -> v_1), k >= 2.
struct Cycle {
  std::vector<Vertex> vertices;

  std::size_t length() const { return vertices.size(); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      out.push_back({vertices[i], vertices[(i + 1) % vertices.size()]});
    return out;
  }

  std::optional<std::size_t> position(Vertex v) const {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
  }

  bool contains(Vertex v) const { return position(v).has_value(); }

  /// xCy: the directed path from x to y along the cycle. x != y.
  Path arc(Vertex x, Vertex y) const {
    auto px = position(x);
    auto py = position(y);
    if (!px || !py || x == y) throw Error(ErrorCode::InvalidArgument, "arc endpoints must be distinct cycle vertices");
    Path p;
    for (std::size_t i = *px;; i = (i + 1) % vertices.size()) {
      p.vertices.push_back(vertices[i]);
      if (i == *py) break;
    }
    return p;
  }

  /// Rotation starting at the smallest vertex; equal cycles compare equal.
  Cycle canonical() const {
    if (vertices.empty()) return *this;
    auto it = std::min_element(vertices.begin(), vertices.end());
    Cycle c;
    c.vertices.insert(c.vertices.end(), it, vertices.end());
    c.vertices.insert(c.vertices.end(), vertices.begin(), it);
    return c;
  }

  friend bool operator==(const Cycle&, const Cycle&) = default;
};

inline bool has_distinct_vertices(std::span<const Vertex> vs) {
  std::vector<Vertex> sorted(vs.begin(), vs.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

inline bool is_path_in(const Digraph& d, const Path& p) {
  if (p.vertices.size() < 2 || !has_distinct_vertices(p.vertices)) return false;
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
    if (!d.has_edge(p.vertices[i], p.vertices[i + 1])) return false;
  return true;
}

inline bool is_cycle_in(const Digraph& d, const Cycle& c) {
  if (c.vertices.size() < 2 || !has_distinct_vertices(c.vertices)) return false;
  for (const auto& e : c.edges())
    if (!d.has_edge(e.tail, e.head)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Structural queries

/// Kahn order; empty optional when a directed cycle exists.
inline std::optional<std::vector<Vertex>> topological_order(const Digraph& d) {
  std::vector<std::size_t> indeg(d.num_vertices());
  std::vector<Vertex> order;
  std::deque<Vertex> ready;
  for (Vertex v = 0; v < d.num_vertices(); ++v) {
    indeg[v] = d.in_degree(v);
    if (indeg[v] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    Vertex v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (Vertex w : d.out(v))
      if (--indeg[w] == 0) ready.push_back(w);
  }
  if (order.size() != d.num_vertices()) return std::nullopt;
  return order;
}

inline bool is_acyclic(const Digraph& d) { return topological_order(d).has_value(); }

/// BFS distances along out-edges from `source`, kInfinity where unreachable.
inline std::vector<std::size_t> directed_distances(const Digraph& d, Vertex source) {
  std::vector<std::size_t> dist(d.num_vertices(), kInfinity);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : d.out(v)) {
      if (dist[w] == kInfinity) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

/// Shortest directed cycle through edge u->v, if any (BFS from v back to u).
inline std::optional<Cycle> shortest_cycle_through(const Digraph& d, Vertex u, Vertex v) {
  std::vector<Vertex> parent(d.num_vertices(), kInfinity);
  std::deque<Vertex> queue{v};
  parent[v] = v;
  while (!queue.empty() && parent[u] == kInfinity) {
    Vertex x = queue.front();
    queue.pop_front();
    for (Vertex w : d.out(x)) {
      if (parent[w] == kInfinity) {
        parent[w] = x;
        queue.push_back(w);
      }
    }
  }
  if (parent[u] == kInfinity) return std::nullopt;
  std::vector<Vertex> back;
  for (Vertex x = u; x != v; x = parent[x]) back.push_back(x);
  back.push_back(v);
  Cycle c;
  c.vertices.push_back(u);
  for (auto it = back.rbegin(); it != back.rend() && *it != u; ++it) c.vertices.push_back(*it);
  return c;
}

/// Length of the shortest directed cycle, kInfinity for acyclic digraphs.
/// BFS from the head of every edge: O(m (n + m)).
inline std::size_t girth(const Digraph& d) {
  std::size_t best = kInfinity;
  for (const auto& e : d.edges()) {
    auto dist = directed_distances(d, e.head);
    if (dist[e.tail] != kInfinity) best = std::min(best, dist[e.tail] + 1);
  }
  return best;
}

/// Distances in the underlying undirected graph from a set of sources,
/// explored up to `max_depth` (kInfinity beyond it).
inline std::vector<std::size_t> underlying_distances(const Digraph& d, std::span<const Vertex> sources,
                                                     std::size_t max_depth = kInfinity) {
  std::vector<std::size_t> dist(d.num_vertices(), kInfinity);
  std::deque<Vertex> queue;
  for (Vertex s : sources) {
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    if (dist[v] >= max_depth) continue;
    auto relax = [&](Vertex w) {
      if (dist[w] == kInfinity) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    };
    for (Vertex w : d.out(v)) relax(w);
    for (Vertex w : d.in(v)) relax(w);
  }
  return dist;
}

inline std::size_t underlying_distance(const Digraph& d, Vertex u, Vertex v) {
  if (u >= d.num_vertices() || v >= d.num_vertices()) throw Error(ErrorCode::VertexOutOfRange, "distance query");
  const Vertex src[] = {u};
  return underlying_distances(d, src)[v];
}

struct SparsityResult {
  bool sparse = true;
  /// On failure: u has two distinct other members v, w within distance k.
  std::optional<std::array<Vertex, 3>> witness;
};

/// S is k-sparse if every member has at most one other member within
/// underlying distance k.
inline SparsityResult is_k_sparse(const Digraph& d, std::span<const Vertex> members, std::size_t k) {
  std::vector<char> in_set(d.num_vertices(), 0);
  for (Vertex v : members) {
    if (v >= d.num_vertices()) throw Error(ErrorCode::VertexOutOfRange, "sparsity query");
    in_set[v] = 1;
  }
  for (Vertex u : members) {
    const Vertex src[] = {u};
    auto dist = underlying_distances(d, src, k);
    std::vector<Vertex> near;
    for (Vertex v = 0; v < d.num_vertices(); ++v) {
      if (v != u && in_set[v] && dist[v] <= k) near.push_back(v);
      if (near.size() == 2) return {false, std::array<Vertex, 3>{u, near[0], near[1]}};
    }
  }
  return {};
}

}  // namespace dipaths
