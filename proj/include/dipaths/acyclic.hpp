#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dipaths/digraph.hpp"
#include "dipaths/rng.hpp"

namespace dipaths {

/// Edge-disjoint collection of paths with an edge -> owner index.
class PathFamily {
 public:
  PathFamily() = default;
  explicit PathFamily(std::vector<Path> paths) {
    for (auto& p : paths) add(std::move(p));
  }

  /// Appends a path; throws InvalidArgument if it shares an edge or repeats a vertex.
  std::size_t add(Path p) {
    if (p.vertices.size() < 2 || !has_distinct_vertices(p.vertices)) {
      throw Error(ErrorCode::InvalidArgument, "a path needs at least two distinct vertices");
    }
    const auto index = paths_.size();
    const auto edges = p.edges();
    for (const auto& e : edges) {
      if (owner_.contains(e)) {
        throw Error(ErrorCode::InvalidArgument,
                    "edge " + std::to_string(e.tail) + "->" + std::to_string(e.head) + " already owned");
      }
    }
    for (const auto& e : edges) owner_.emplace(e, index);
    paths_.push_back(std::move(p));
    return index;
  }

  const std::vector<Path>& paths() const noexcept { return paths_; }
  std::size_t size() const noexcept { return paths_.size(); }
  bool empty() const noexcept { return paths_.empty(); }
  const Path& operator[](std::size_t i) const { return paths_[i]; }
  std::size_t num_edges() const noexcept { return owner_.size(); }

  std::optional<std::size_t> owner(const Edge& e) const {
    auto it = owner_.find(e);
    if (it == owner_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<Edge> all_edges() const {
    std::vector<Edge> out;
    out.reserve(owner_.size());
    for (const auto& p : paths_)
      for (const auto& e : p.edges()) out.push_back(e);
    return out;
  }

  auto begin() const { return paths_.begin(); }
  auto end() const { return paths_.end(); }

 private:
  std::vector<Path> paths_;
  std::unordered_map<Edge, std::size_t, EdgeHash> owner_;
};

/// A path family claimed to partition the host's edges.
struct Decomposition {
  PathFamily family;
  std::size_t host_excess = 0;
  bool perfect = false;
  /// Set only after an independent check against the host (see verify.hpp).
  bool verified = false;
  /// Which construction produced the family, e.g. "acyclic" or "discrete".
  std::string method;

  std::size_t size() const noexcept { return family.size(); }
};

struct AcyclicOptions {
  /// Unset: deterministic smallest-index choices. Set: random plus vertex
  /// and random out/in neighbours at every step.
  std::optional<std::uint64_t> seed;
  /// Recompute ex of the residual after every removal and check it dropped by one.
  bool check_removals = false;
};

namespace detail {

/// Mutable adjacency used while peeling paths off a digraph.
class Residual {
 public:
  explicit Residual(const Digraph& d) : out_(d.num_vertices()), in_(d.num_vertices()) {
    for (const auto& e : d.edges()) {
      out_[e.tail].push_back(e.head);
      in_[e.head].push_back(e.tail);
    }
    for (auto& l : in_) std::sort(l.begin(), l.end());
    remaining_ = d.num_edges();
  }

  std::size_t size() const { return out_.size(); }
  std::size_t remaining() const { return remaining_; }
  const std::vector<Vertex>& out(Vertex v) const { return out_[v]; }
  const std::vector<Vertex>& in(Vertex v) const { return in_[v]; }
  bool is_plus(Vertex v) const { return out_[v].size() > in_[v].size(); }

  void erase(Vertex u, Vertex v) {
    auto drop = [](std::vector<Vertex>& l, Vertex x) { l.erase(std::lower_bound(l.begin(), l.end(), x)); };
    drop(out_[u], v);
    drop(in_[v], u);
    --remaining_;
  }

  std::size_t excess() const {
    std::size_t total = 0;
    for (Vertex v = 0; v < out_.size(); ++v)
      if (out_[v].size() > in_[v].size()) total += out_[v].size() - in_[v].size();
    return total;
  }

 private:
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::size_t remaining_ = 0;
};

}  // namespace detail

/// Perfect path decomposition of an acyclic digraph by repeatedly removing a
/// maximal path. Each path runs from a source to a sink of the residual, so
/// it starts at a plus vertex, ends at a minus vertex and lowers ex by one.
inline Decomposition decompose_acyclic(const Digraph& a, const AcyclicOptions& opts = {}) {
  if (!is_acyclic(a)) throw Error(ErrorCode::NotAcyclic, "input has a directed cycle");
  const auto ex = excess(a).excess;
  detail::Residual res(a);
  std::optional<Rng> rng;
  if (opts.seed) rng.emplace(*opts.seed);

  auto pick = [&](const std::vector<Vertex>& options) {
    return rng ? options[rng->below(options.size())] : options.front();
  };

  // Removing a path never creates a new plus vertex, so a forward scan
  // (deterministic) or a lazily pruned pool (randomized) suffices.
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < a.num_vertices(); ++v)
    if (res.is_plus(v)) pool.push_back(v);
  std::size_t cursor = 0;

  Decomposition dec;
  dec.host_excess = ex;
  std::size_t current_ex = ex;
  while (res.remaining() > 0) {
    Vertex start = 0;
    if (rng) {
      for (;;) {
        const auto i = rng->below(pool.size());
        if (res.is_plus(pool[i])) {
          start = pool[i];
          break;
        }
        pool[i] = pool.back();
        pool.pop_back();
      }
    } else {
      while (!res.is_plus(pool[cursor])) ++cursor;
      start = pool[cursor];
    }

    std::vector<Vertex> forward{start};
    while (!res.out(forward.back()).empty()) forward.push_back(pick(res.out(forward.back())));
    std::vector<Vertex> backward;
    Vertex head = start;
    while (!res.in(head).empty()) {
      head = pick(res.in(head));
      backward.push_back(head);
    }
    Path p;
    p.vertices.assign(backward.rbegin(), backward.rend());
    p.vertices.insert(p.vertices.end(), forward.begin(), forward.end());
    for (const auto& e : p.edges()) res.erase(e.tail, e.head);
    if (opts.check_removals) {
      const auto now = res.excess();
      if (now + 1 != current_ex) throw std::logic_error("path removal changed ex by other than one");
      current_ex = now;
    }
    dec.family.add(std::move(p));
  }
  dec.perfect = dec.family.size() == ex;
  dec.method = "acyclic";
  return dec;
}

/// Checks that `q` is a partial path decomposition of `d`: edge-disjoint
/// paths of d whose per-vertex start/end counts stay within ex+/ex-.
/// Returns a description of the first violation.
inline std::optional<std::string> partial_violation(const Digraph& d, const std::vector<Path>& q) {
  const auto report = excess(d);
  std::vector<std::size_t> starts(d.num_vertices()), ends(d.num_vertices());
  std::unordered_map<Edge, std::size_t, EdgeHash> seen;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto& p = q[i];
    if (!is_path_in(d, p)) return "member " + std::to_string(i) + " is not a path of the digraph";
    for (const auto& e : p.edges()) {
      if (!seen.emplace(e, i).second) {
        return "members " + std::to_string(seen[e]) + " and " + std::to_string(i) + " share edge " +
               std::to_string(e.tail) + "->" + std::to_string(e.head);
      }
    }
    if (++starts[p.front()] > report.signs[p.front()].ex_plus)
      return "too many paths start at " + std::to_string(p.front());
    if (++ends[p.back()] > report.signs[p.back()].ex_minus)
      return "too many paths end at " + std::to_string(p.back());
  }
  return std::nullopt;
}

/// Extends a partial path decomposition of an acyclic digraph to a perfect
/// one. The paths of `q` come first in the result, unmodified.
inline Decomposition complete_partial(const Digraph& a, const std::vector<Path>& q, const AcyclicOptions& opts = {}) {
  if (auto why = partial_violation(a, q)) throw Error(ErrorCode::NotPartial, *why);
  if (!is_acyclic(a)) throw Error(ErrorCode::NotAcyclic, "input has a directed cycle");
  const auto ex = excess(a).excess;
  std::vector<Edge> used;
  for (const auto& p : q)
    for (const auto& e : p.edges()) used.push_back(e);
  const auto rest = a.without(used);
  auto tail = decompose_acyclic(rest, opts);
  if (tail.host_excess + q.size() != ex) throw std::logic_error("partial paths did not lower ex one each");

  Decomposition dec;
  dec.host_excess = ex;
  for (const auto& p : q) dec.family.add(p);
  for (const auto& p : tail.family) dec.family.add(p);
  dec.perfect = dec.family.size() == ex;
  dec.method = "acyclic-completion";
  return dec;
}

}  // namespace dipaths
