#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dipaths/digraph.hpp"

namespace dipaths {

class CycleFamily {
 public:
  std::size_t add(Cycle c) {
    const auto index = cycles_.size();
    for (const auto& e : c.edges()) {
      if (!owner_.emplace(e, index).second) {
        throw Error(ErrorCode::InvalidArgument,
                    "edge " + std::to_string(e.tail) + "->" + std::to_string(e.head) + " already in the family");
      }
    }
    cycles_.push_back(std::move(c));
    return index;
  }

  const std::vector<Cycle>& cycles() const noexcept { return cycles_; }
  std::size_t size() const noexcept { return cycles_.size(); }
  bool empty() const noexcept { return cycles_.empty(); }
  const Cycle& operator[](std::size_t i) const { return cycles_[i]; }

  std::optional<std::size_t> owner(const Edge& e) const {
    auto it = owner_.find(e);
    if (it == owner_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<Edge> all_edges() const {
    std::vector<Edge> out;
    for (const auto& c : cycles_)
      for (const auto& e : c.edges()) out.push_back(e);
    return out;
  }

 private:
  std::vector<Cycle> cycles_;
  std::unordered_map<Edge, std::size_t, EdgeHash> owner_;
};

struct CycleExtraction {
  CycleFamily family;
  Digraph remainder;
};

struct ChordWitness {
  std::size_t cycle_index = 0;
  Edge chord;
};

/// First remainder edge joining two vertices of the same family cycle.
inline std::optional<ChordWitness> find_chord(const CycleFamily& family, const Digraph& remainder) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& c = family[i];
    std::unordered_set<Vertex> on(c.vertices.begin(), c.vertices.end());
    for (Vertex x : c.vertices)
      for (Vertex y : remainder.out(x))
        if (on.contains(y)) return ChordWitness{i, {x, y}};
  }
  return std::nullopt;
}

namespace detail {

/// Set-based adjacency for edge deletion and reinsertion.
class MutableDigraph {
 public:
  explicit MutableDigraph(const Digraph& d) : out_(d.num_vertices()) {
    for (const auto& e : d.edges()) out_[e.tail].insert(e.head);
  }

  void erase(const Edge& e) { out_[e.tail].erase(e.head); }
  void insert(const Edge& e) { out_[e.tail].insert(e.head); }
  bool has(const Edge& e) const { return out_[e.tail].contains(e.head); }

  /// Shortest cycle overall; ties go to the cycle through the
  /// lexicographically smallest edge. BFS from the head of every edge.
  std::optional<Cycle> shortest_cycle() const {
    const std::size_t n = out_.size();
    std::optional<Cycle> best;
    std::vector<Vertex> parent(n);
    std::vector<std::size_t> dist(n);
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v : out_[u]) {
        std::fill(dist.begin(), dist.end(), kInfinity);
        const std::size_t cap = best ? best->length() - 1 : kInfinity;
        std::deque<Vertex> queue{v};
        dist[v] = 0;
        while (!queue.empty() && dist[u] == kInfinity) {
          Vertex x = queue.front();
          queue.pop_front();
          if (dist[x] + 1 >= cap) break;
          for (Vertex w : out_[x]) {
            if (dist[w] == kInfinity) {
              dist[w] = dist[x] + 1;
              parent[w] = x;
              queue.push_back(w);
            }
          }
        }
        if (dist[u] == kInfinity) continue;
        Cycle c;
        for (Vertex x = u; x != v; x = parent[x]) c.vertices.push_back(x);
        c.vertices.push_back(v);
        std::reverse(c.vertices.begin(), c.vertices.end());
        // now v ... u; rotate so the cycle starts with u -> v
        std::rotate(c.vertices.begin(), c.vertices.end() - 1, c.vertices.end());
        best = std::move(c);
        if (best->length() == 2) return best;
      }
    }
    return best;
  }

  Digraph freeze() const {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < out_.size(); ++u)
      for (Vertex v : out_[u]) edges.push_back({u, v});
    return Digraph(out_.size(), std::move(edges));
  }

  std::size_t num_vertices() const { return out_.size(); }
  const std::set<Vertex>& out(Vertex v) const { return out_[v]; }

 private:
  std::vector<std::set<Vertex>> out_;
};

}  // namespace detail

/// Maximal edge-disjoint cycle family with no remainder edge joining two
/// vertices of one of its cycles. Shortest cycles are peeled off until the
/// remainder is acyclic; then any cycle with such a chord x->y is shortened
/// to x->y followed by yCx, the skipped arc is handed back to the remainder,
/// and peeling resumes. Each round either adds a cycle or shortens one.
inline CycleExtraction extract_chordless_maximal(const Digraph& d) {
  detail::MutableDigraph rest(d);
  std::vector<std::optional<Cycle>> slots;

  auto peel = [&] {
    while (auto c = rest.shortest_cycle()) {
      for (const auto& e : c->edges()) rest.erase(e);
      slots.push_back(std::move(c));
    }
  };

  auto find_swap = [&]() -> std::optional<std::pair<std::size_t, Edge>> {
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto& c = *slots[i];
      std::unordered_set<Vertex> on(c.vertices.begin(), c.vertices.end());
      for (Vertex x : c.vertices)
        for (Vertex y : rest.out(x))
          if (on.contains(y)) return std::make_pair(i, Edge{x, y});
    }
    return std::nullopt;
  };

  peel();
  while (auto swap = find_swap()) {
    auto& c = *slots[swap->first];
    const Edge chord = swap->second;
    const Path skipped = c.arc(chord.tail, chord.head);
    const Path kept = c.arc(chord.head, chord.tail);
    if (skipped.length() < 2) throw std::logic_error("chord coincides with a cycle edge");
    for (const auto& e : skipped.edges()) rest.insert(e);
    rest.erase(chord);
    c = Cycle{kept.vertices};
    peel();
  }

  CycleExtraction out;
  for (auto& c : slots) out.family.add(std::move(*c));
  out.remainder = rest.freeze();
  return out;
}

// ---------------------------------------------------------------------------
// Precise parts and tangent paths

struct TangentPath {
  Path path;
  std::size_t cycle_index = 0;
  Vertex touch_vertex = 0;
};

/// The unique vertex of `p` on `c` when that vertex is an endpoint of p.
inline std::optional<Vertex> tangent_vertex(const Path& p, const Cycle& c) {
  std::optional<Vertex> hit;
  for (Vertex v : p.vertices) {
    if (c.contains(v)) {
      if (hit) return std::nullopt;
      hit = v;
    }
  }
  if (hit && (*hit == p.front() || *hit == p.back())) return hit;
  return std::nullopt;
}

inline bool is_plus_minus(const Path& p, const SignTable& signs) {
  return p.vertices.size() >= 2 && signs.is_plus(p.front()) && signs.is_minus(p.back());
}

namespace detail {
inline void require_incident(const Path& p, const Cycle& c, Vertex v) {
  if (!c.contains(v) || (p.front() != v && p.back() != v)) {
    throw Error(ErrorCode::NotIncident, "path does not end at cycle vertex " + std::to_string(v));
  }
  std::unordered_set<Edge, EdgeHash> cyc;
  for (const auto& e : c.edges()) cyc.insert(e);
  for (const auto& e : p.edges()) {
    if (cyc.contains(e)) {
      throw Error(ErrorCode::NotIncident,
                  "path shares edge " + std::to_string(e.tail) + "->" + std::to_string(e.head) + " with the cycle");
    }
  }
}
}  // namespace detail

/// pp(P, C, v). For a plus v = l(P): zPy with y the first minus vertex of P
/// and z the last vertex of vPy on C before y. For a minus v = r(P): yPz with
/// y the last plus vertex of P and z the first vertex of yPv on C after y.
inline Path precise_part(const Path& p, const Cycle& c, Vertex v, const SignTable& signs) {
  detail::require_incident(p, c, v);
  const auto& vs = p.vertices;
  if (signs.is_plus(v)) {
    if (p.front() != v) throw Error(ErrorCode::NotIncident, "plus vertex must start the path");
    std::size_t y = 1;
    while (y < vs.size() && !signs.is_minus(vs[y])) ++y;
    if (y == vs.size()) throw Error(ErrorCode::NoSignChange, "no minus vertex after " + std::to_string(v));
    std::size_t z = y - 1;
    while (!c.contains(vs[z])) --z;
    return p.slice(z, y);
  }
  if (signs.is_minus(v)) {
    if (p.back() != v) throw Error(ErrorCode::NotIncident, "minus vertex must end the path");
    const std::size_t last = vs.size() - 1;
    std::size_t y = last;
    while (y > 0 && !signs.is_plus(vs[y - 1])) --y;
    if (y == 0) throw Error(ErrorCode::NoSignChange, "no plus vertex before " + std::to_string(v));
    --y;
    std::size_t z = y + 1;
    while (!c.contains(vs[z])) ++z;
    return p.slice(y, z);
  }
  throw Error(ErrorCode::InvalidArgument, "incidence vertex " + std::to_string(v) + " has excess zero");
}

/// A plus-minus subpath of P tangent to C. If pp(P, C, v) meets C only at
/// one end it is returned. Otherwise both ends lie on C and the interior is
/// nonempty when the remainder has no chord of C; with z the interior vertex
/// next to the end at v, the result is zPy when z is plus and xPz when z is
/// minus, where x, y are the ends of the precise part.
inline TangentPath derive_tangent(const Path& p, const Cycle& c, std::size_t cycle_index, Vertex v,
                                  const SignTable& signs) {
  const Path x = precise_part(p, c, v, signs);
  Path out;
  if (tangent_vertex(x, c)) {
    out = x;
  } else {
    if (x.vertices.size() < 3) {
      throw Error(ErrorCode::ChordViolation, "edge " + std::to_string(x.front()) + "->" + std::to_string(x.back()) +
                                                 " joins two vertices of the cycle");
    }
    const std::size_t zi = signs.is_plus(v) ? 1 : x.vertices.size() - 2;
    const Vertex z = x.vertices[zi];
    if (signs.is_plus(z)) {
      out = x.slice(zi, x.vertices.size() - 1);
    } else if (signs.is_minus(z)) {
      out = x.slice(0, zi);
    } else {
      throw Error(ErrorCode::ZeroInterior, "interior vertex " + std::to_string(z) + " has excess zero");
    }
  }
  if (!is_plus_minus(out, signs)) {
    throw Error(ErrorCode::ZeroInterior, "tangent candidate ends at an excess-zero vertex");
  }
  const auto touch = tangent_vertex(out, c);
  if (!touch) throw std::logic_error("derived path is not tangent to its cycle");
  return {std::move(out), cycle_index, *touch};
}

}  // namespace dipaths
