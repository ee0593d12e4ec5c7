#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dipaths/digraph.hpp"
#include "dipaths/graph.hpp"
#include "dipaths/rng.hpp"
#include "json.hpp"

namespace dipaths {

inline constexpr std::size_t kRejectionCap = 100000;

/// Configuration model: n*d half-edges paired uniformly. With `simple`,
/// pairings with a loop or a repeated edge are redrawn.
inline Graph sample_regular(std::size_t n, std::size_t d, std::uint64_t seed, bool simple = true) {
  if ((n * d) % 2 != 0) throw Error(ErrorCode::OddProduct, "n*d must be even");
  if (d >= n && d > 0) throw Error(ErrorCode::InvalidArgument, "d must be smaller than n");
  Rng rng(seed);
  std::vector<Vertex> points;
  points.reserve(n * d);
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t i = 0; i < d; ++i) points.push_back(v);

  for (std::size_t attempt = 0; attempt < kRejectionCap; ++attempt) {
    rng.shuffle(points);
    std::vector<Edge> edges;
    edges.reserve(points.size() / 2);
    for (std::size_t i = 0; i + 1 < points.size(); i += 2) edges.push_back({points[i], points[i + 1]});
    Graph g(n, std::move(edges));
    if (!simple || g.is_simple()) return g;
  }
  throw Error(ErrorCode::RejectionBudget, "no simple pairing within " + std::to_string(kRejectionCap) + " attempts");
}

/// Every cycle of length 3..max_len of a simple graph, once each, as the
/// vertex sequence starting at its smallest vertex, second vertex smaller
/// than the last.
inline std::vector<std::vector<Vertex>> undirected_cycles(const Graph& g, std::size_t max_len) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  std::vector<char> on(g.num_vertices(), 0);
  auto dfs = [&](auto&& self, Vertex s) -> void {
    const Vertex v = stack.back();
    for (Vertex w : g.neighbors(v)) {
      if (w == s && stack.size() >= 3 && stack[1] < stack.back()) {
        out.push_back(stack);
      } else if (w > s && !on[w] && stack.size() < max_len) {
        on[w] = 1;
        stack.push_back(w);
        self(self, s);
        stack.pop_back();
        on[w] = 0;
      }
    }
  };
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    stack.assign(1, s);
    on[s] = 1;
    dfs(dfs, s);
    on[s] = 0;
  }
  return out;
}

/// counts[i] = number of cycles of length i, for i <= max_len.
inline std::vector<std::size_t> cycle_counts(const Graph& g, std::size_t max_len) {
  std::vector<std::size_t> counts(max_len + 1, 0);
  for (const auto& c : undirected_cycles(g, max_len)) ++counts[c.size()];
  return counts;
}

/// Limiting mean (d-1)^i / 2i of the number of i-cycles.
inline double poisson_cycle_mean(std::size_t d, std::size_t i) {
  return std::pow(static_cast<double>(d) - 1.0, static_cast<double>(i)) / (2.0 * static_cast<double>(i));
}

struct CycleCensus {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t max_len = 0;
  std::size_t samples = 0;
  std::vector<std::vector<std::size_t>> counts;  // per sample, index = length

  double mean(std::size_t len) const {
    if (samples == 0) return 0.0;
    double total = 0;
    for (const auto& c : counts) total += static_cast<double>(c[len]);
    return total / static_cast<double>(samples);
  }

  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t i = 3; i <= max_len; ++i) {
      j[std::to_string(i)] = {
          {"theoretical_mean", poisson_cycle_mean(d, i)}, {"empirical_mean", mean(i)}, {"samples", samples}};
    }
    return j;
  }
};

/// Sample s uses Rng::substream(seed, s), so results do not depend on `jobs`.
inline CycleCensus cycle_census(std::size_t n, std::size_t d, std::size_t max_len, std::size_t samples,
                                std::uint64_t seed, std::size_t jobs = 1) {
  if (max_len > 8) throw Error(ErrorCode::InvalidArgument, "cycle lengths above 8 are not enumerated");
  CycleCensus census{n, d, max_len, samples, std::vector<std::vector<std::size_t>>(samples)};
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    try {
      for (std::size_t s; (s = next.fetch_add(1)) < samples && !failed;) {
        const auto g = sample_regular(n, d, Rng::substream(seed, s).next(), true);
        census.counts[s] = cycle_counts(g, max_len);
      }
    } catch (...) {
      if (!failed.exchange(true)) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < std::max<std::size_t>(1, jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return census;
}

struct DiscretenessReport {
  std::vector<std::vector<Vertex>> short_cycles;
  bool census_ok = true;
  bool disjoint_ok = true;
  bool distance_ok = true;
  nlohmann::json witness = nlohmann::json::object();

  bool verdict() const { return census_ok && disjoint_ok && distance_ok; }
};

/// All cycles of length <= p: at most census_cap of them, pairwise
/// vertex-disjoint, and any two distinct cycle vertices at distance >=
/// distance_floor once the cycle edges are deleted.
inline DiscretenessReport check_discrete(const Graph& g, std::size_t p, std::size_t census_cap,
                                         std::size_t distance_floor) {
  if (p < 3) throw Error(ErrorCode::InvalidArgument, "p must be at least 3");
  DiscretenessReport r;
  r.short_cycles = undirected_cycles(g, p);
  nlohmann::json witness = nlohmann::json::object();
  if (r.short_cycles.size() > census_cap) {
    r.census_ok = false;
    witness["census"] = {{"count", r.short_cycles.size()}, {"cap", census_cap}};
  }
  const std::size_t none = r.short_cycles.size();
  std::vector<std::size_t> owner(g.num_vertices(), none);
  for (std::size_t i = 0; i < r.short_cycles.size() && r.disjoint_ok; ++i) {
    for (Vertex v : r.short_cycles[i]) {
      if (owner[v] != none) {
        r.disjoint_ok = false;
        witness["disjoint"] = {{"cycles", {r.short_cycles[owner[v]], r.short_cycles[i]}}, {"shared_vertex", v}};
        break;
      }
      owner[v] = i;
    }
  }
  std::vector<Edge> removed;
  std::vector<Vertex> members;
  for (const auto& c : r.short_cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) removed.push_back({c[i], c[(i + 1) % c.size()]});
    members.insert(members.end(), c.begin(), c.end());
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (Vertex u : members) {
    const auto dist = graph_distances(g, u, removed);
    for (Vertex v : members) {
      if (v != u && dist[v] < distance_floor) {
        r.distance_ok = false;
        witness["distance"] = {{"pair", {u, v}}, {"distance", dist[v]}, {"floor", distance_floor}};
        break;
      }
    }
    if (!r.distance_ok) break;
  }
  r.witness = std::move(witness);
  return r;
}

/// Each edge directed by an independent fair coin.
inline Digraph orient_random(const Graph& g, std::uint64_t seed) {
  if (!g.is_simple()) throw Error(ErrorCode::InvalidArgument, "orientation needs a simple graph");
  Rng rng(seed);
  std::vector<Edge> arcs;
  arcs.reserve(g.num_edges());
  for (const auto& e : g.edges()) arcs.push_back(rng.coin() ? Edge{e.head, e.tail} : e);
  return Digraph(g.num_vertices(), std::move(arcs));
}

// ---------------------------------------------------------------------------
// Inconsistent examples

/// a=0, b=1, c=2, d=3, v=4 with edges ab, ad, cb, cd, va, vc, bv, dv.
inline Digraph gen_D0() {
  return Digraph(5, {{0, 1}, {0, 3}, {2, 1}, {2, 3}, {4, 0}, {4, 2}, {1, 4}, {3, 4}});
}

struct Counterexample {
  std::size_t k = 0;
  Digraph digraph;
  std::size_t pn_lower_bound = 0;  // 4(4k+2) - (4k+1) = 12k+7
  Vertex x = 0;
  Vertex y = 0;
};

/// 4k+2 copies of D0 (copy c occupies 5c..5c+4, its v at 5c+4). Copies
/// 0..k-1 feed x, x feeds k..2k-1, copy 2k holds x; copies 2k+1..3k feed y,
/// y feeds 3k+1..4k, copy 4k+1 holds y; plus x -> y.
inline Counterexample gen_Gk(std::size_t k) {
  const std::size_t copies = 4 * k + 2;
  auto zero = [](std::size_t copy) { return static_cast<Vertex>(5 * copy + 4); };
  const Vertex x = zero(2 * k);
  const Vertex y = zero(4 * k + 1);
  std::vector<Edge> edges;
  const auto base = gen_D0();
  for (std::size_t c = 0; c < copies; ++c)
    for (const auto& e : base.edges()) edges.push_back({5 * c + e.tail, 5 * c + e.head});
  for (std::size_t i = 0; i < k; ++i) {
    edges.push_back({zero(i), x});
    edges.push_back({x, zero(k + i)});
    edges.push_back({zero(2 * k + 1 + i), y});
    edges.push_back({y, zero(3 * k + 1 + i)});
  }
  edges.push_back({x, y});
  return {k, Digraph(5 * copies, std::move(edges)), 12 * k + 7, x, y};
}

// ---------------------------------------------------------------------------
// Plus-minus reach

/// PM(D, v): for a plus v the minus vertices reachable from v, for a minus v
/// the plus vertices that reach v. Empty for a zero v.
inline std::vector<Vertex> pm_set(const Digraph& d, Vertex v, const SignTable& signs) {
  if (signs.is_zero(v)) return {};
  const bool forward = signs.is_plus(v);
  std::vector<char> seen(d.num_vertices(), 0);
  std::deque<Vertex> queue{v};
  seen[v] = 1;
  std::vector<Vertex> out;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    if (x != v && (forward ? signs.is_minus(x) : signs.is_plus(x))) out.push_back(x);
    for (Vertex w : forward ? d.out(x) : d.in(x)) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// SD(D, v): length of a shortest plus-minus path with v as an end;
/// kInfinity when there is none.
inline std::size_t sign_distance(const Digraph& d, Vertex v, const SignTable& signs) {
  if (signs.is_zero(v)) return kInfinity;
  const bool forward = signs.is_plus(v);
  std::vector<std::size_t> dist(d.num_vertices(), kInfinity);
  std::deque<Vertex> queue{v};
  dist[v] = 0;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    for (Vertex w : forward ? d.out(x) : d.in(x)) {
      if (dist[w] != kInfinity) continue;
      dist[w] = dist[x] + 1;
      if (forward ? signs.is_minus(w) : signs.is_plus(w)) return dist[w];
      queue.push_back(w);
    }
  }
  return kInfinity;
}

}  // namespace dipaths
