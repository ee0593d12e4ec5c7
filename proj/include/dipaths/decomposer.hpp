#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "dipaths/acyclic.hpp"
#include "dipaths/assignment.hpp"
#include "dipaths/cycle_family.hpp"
#include "dipaths/digraph.hpp"
#include "dipaths/verify.hpp"
#include "json.hpp"

namespace dipaths {

/// Knobs of the absorption pipelines. The proofs need constants such as
/// 100d tangent paths per cycle; these defaults are desk-scale stand-ins and
/// every result is checked by verify() instead.
struct PipelineConfig {
  std::size_t m = 2;                   // tangent paths reserved per cycle (first try)
  std::size_t max_m = 8;               // m is raised up to this when a later stage fails
  std::size_t cycle_degree_floor = 4;  // incident paths per cycle required in strict mode
  std::size_t sparsity_k = 4;
  std::size_t theta = 0;               // short-path length cap; 0 means ceil(log2 n)
  std::size_t attempts = 8;            // acyclic decompositions tried; the first is deterministic
  std::size_t lll_budget = 1000;       // resamples per group
  std::size_t short_cycle_length = 6;  // p of the discrete pipeline in auto mode
  std::size_t census_cap = 0;          // 0 means 3 + floor(log2 log2 n)
  std::size_t distance_floor = 1;
  bool strict = false;                 // fail when a cycle has fewer than cycle_degree_floor incident paths
  std::uint64_t seed = 0;

  std::size_t theta_for(std::size_t n) const {
    if (theta != 0) return theta;
    return n < 2 ? 1 : static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n))));
  }

  std::size_t census_cap_for(std::size_t n) const {
    if (census_cap != 0) return census_cap;
    if (n < 4) return 3;
    return 3 + static_cast<std::size_t>(std::floor(std::log2(std::log2(static_cast<double>(n)))));
  }
};

inline void to_json(nlohmann::json& j, const PipelineConfig& c) {
  j = {{"m", c.m},
       {"max_m", c.max_m},
       {"cycle_degree_floor", c.cycle_degree_floor},
       {"sparsity_k", c.sparsity_k},
       {"theta", c.theta},
       {"attempts", c.attempts},
       {"lll_budget", c.lll_budget},
       {"short_cycle_length", c.short_cycle_length},
       {"census_cap", c.census_cap},
       {"distance_floor", c.distance_floor},
       {"strict", c.strict},
       {"seed", c.seed}};
}

enum class Stage {
  HallInfeasible,
  SignMajorityTooSmall,
  LLLExhausted,
  DiscretenessViolated,
  PathFamilyNotFound,
  SparsityViolated,
  VerificationFailed,
  HypothesisUnmet,
};

constexpr const char* to_string(Stage s) {
  switch (s) {
    case Stage::HallInfeasible: return "HallInfeasible";
    case Stage::SignMajorityTooSmall: return "SignMajorityTooSmall";
    case Stage::LLLExhausted: return "LLLExhausted";
    case Stage::DiscretenessViolated: return "DiscretenessViolated";
    case Stage::PathFamilyNotFound: return "PathFamilyNotFound";
    case Stage::SparsityViolated: return "SparsityViolated";
    case Stage::VerificationFailed: return "VerificationFailed";
    case Stage::HypothesisUnmet: return "HypothesisUnmet";
  }
  return "?";
}

/// A pipeline that could not finish. This says nothing about whether the
/// input is consistent.
struct Failure {
  Stage stage = Stage::VerificationFailed;
  std::string detail;
  nlohmann::json witness = nlohmann::json::object();
};

using Outcome = std::variant<Decomposition, Failure>;

inline bool succeeded(const Outcome& o) { return std::holds_alternative<Decomposition>(o); }

inline nlohmann::json failure_json(const Failure& f, const PipelineConfig& cfg) {
  return {{"stage", to_string(f.stage)}, {"detail", f.detail}, {"witness", f.witness}, {"config", cfg}};
}

// ---------------------------------------------------------------------------
// Absorption of one cycle

/// Rewrites a cycle and two tangent paths touching it at distinct vertices
/// of one sign as two paths. Plus: U = zaCzb + Qb, V = zbCza + Qa. Minus:
/// U = Qa + zaCzb, V = Qb + zbCza.
inline std::pair<Path, Path> absorb_cycle(const Cycle& c, const TangentPath& qa, const TangentPath& qb,
                                          const SignTable& signs) {
  const Vertex za = qa.touch_vertex;
  const Vertex zb = qb.touch_vertex;
  if (za == zb) throw Error(ErrorCode::SameTouchVertex, "both paths touch the cycle at " + std::to_string(za));
  if (signs.sign(za) != signs.sign(zb)) {
    throw Error(ErrorCode::MixedSigns, "touch vertices " + std::to_string(za) + " and " + std::to_string(zb) +
                                           " differ in sign");
  }
  if (signs.is_zero(za)) throw Error(ErrorCode::ZeroSignTouch, "touch vertices have excess zero");
  for (const auto* q : {&qa, &qb}) {
    if (tangent_vertex(q->path, c) != q->touch_vertex) {
      throw Error(ErrorCode::InvalidArgument, "path is not tangent to the cycle at its touch vertex");
    }
  }

  auto glue = [](Path head, const Path& tail) {
    head.vertices.insert(head.vertices.end(), tail.vertices.begin() + 1, tail.vertices.end());
    return head;
  };
  Path u;
  Path v;
  if (signs.is_plus(za)) {
    if (qa.path.front() != za || qb.path.front() != zb) {
      throw Error(ErrorCode::InvalidArgument, "a plus touch vertex must start its path");
    }
    u = glue(c.arc(za, zb), qb.path);
    v = glue(c.arc(zb, za), qa.path);
  } else {
    if (qa.path.back() != za || qb.path.back() != zb) {
      throw Error(ErrorCode::InvalidArgument, "a minus touch vertex must end its path");
    }
    u = glue(qa.path, c.arc(za, zb));
    v = glue(qb.path, c.arc(zb, za));
  }
  if (!has_distinct_vertices(u.vertices) || !has_distinct_vertices(v.vertices)) {
    throw Error(ErrorCode::VertexCollision, "glued walk repeats a vertex");
  }
  return {std::move(u), std::move(v)};
}

// ---------------------------------------------------------------------------
// Shared core of the no-zero and k-sparse pipelines

enum class IncidenceMode { NoZero, KSparse };

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t x = seed ^ (a * 0x9E3779B97F4A7C15ULL) ^ (b * 0xC2B2AE3D27D4EB4FULL);
  x ^= x >> 31;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 29;
  return x;
}

struct Incidence {
  BipartiteIncidence graph;
  /// (cycle, path) -> the incidence vertex on the cycle
  std::map<std::pair<std::size_t, std::size_t>, Vertex> at;
};

/// Which acyclic-decomposition paths may serve which cycle. NoZero: any path
/// with an end on the cycle, through its start when that lies on the cycle.
/// KSparse: per cycle the more common sign side s among its vertices (plus
/// on ties); the path must end on that side at a vertex of sign s and avoid
/// the zero vertices of the cycle and the blocked vertices, i.e. cycle
/// vertices of sign s with a zero out-neighbour (plus) or in-neighbour (minus).
inline Incidence build_incidence(const Digraph& d, const CycleFamily& cycles, const std::vector<Path>& paths,
                                 const SignTable& signs, IncidenceMode mode) {
  Incidence inc;
  inc.graph = BipartiteIncidence(cycles.size(), paths.size());
  std::vector<std::vector<std::size_t>> cycles_at(d.num_vertices());
  for (std::size_t i = 0; i < cycles.size(); ++i)
    for (Vertex v : cycles[i].vertices) cycles_at[v].push_back(i);

  if (mode == IncidenceMode::NoZero) {
    for (std::size_t j = 0; j < paths.size(); ++j) {
      for (std::size_t i : cycles_at[paths[j].front()]) inc.at.emplace(std::make_pair(i, j), paths[j].front());
      for (std::size_t i : cycles_at[paths[j].back()]) inc.at.emplace(std::make_pair(i, j), paths[j].back());
    }
  } else {
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      const auto& c = cycles[i];
      std::size_t plus = 0, minus = 0;
      for (Vertex v : c.vertices) {
        plus += signs.is_plus(v);
        minus += signs.is_minus(v);
      }
      const bool plus_side = plus >= minus;
      std::unordered_set<Vertex> forbidden;
      for (Vertex v : c.vertices) {
        if (signs.is_zero(v)) {
          forbidden.insert(v);
        } else if (plus_side && signs.is_plus(v)) {
          for (Vertex w : d.out(v))
            if (signs.is_zero(w)) forbidden.insert(v);
        } else if (!plus_side && signs.is_minus(v)) {
          for (Vertex w : d.in(v))
            if (signs.is_zero(w)) forbidden.insert(v);
        }
      }
      for (std::size_t j = 0; j < paths.size(); ++j) {
        const Vertex end = plus_side ? paths[j].front() : paths[j].back();
        if (!c.contains(end)) continue;
        if (plus_side ? !signs.is_plus(end) : !signs.is_minus(end)) continue;
        const bool clear = std::none_of(paths[j].vertices.begin(), paths[j].vertices.end(),
                                        [&](Vertex v) { return forbidden.contains(v); });
        if (clear) inc.at.emplace(std::make_pair(i, j), end);
      }
    }
  }
  for (const auto& [key, v] : inc.at) inc.graph.connect(key.first, key.second);
  return inc;
}

/// Higher means the attempt got further; used to report the most telling failure.
inline int progress(Stage s) {
  switch (s) {
    case Stage::HallInfeasible: return 1;
    case Stage::SignMajorityTooSmall: return 2;
    case Stage::LLLExhausted: return 3;
    default: return 4;
  }
}

inline Outcome finish(const Digraph& d, Decomposition dec, const std::string& method) {
  dec.method = method;
  dec.host_excess = excess(d).excess;
  dec.perfect = dec.family.size() == dec.host_excess;
  const auto report = verify(d, dec);
  if (!report.ok()) {
    nlohmann::json problems = report.problems;
    return Failure{Stage::VerificationFailed, "assembled family failed verification", {{"problems", problems}}};
  }
  dec.verified = true;
  return dec;
}

inline Outcome absorb_pipeline(const Digraph& d, const PipelineConfig& cfg, IncidenceMode mode) {
  const auto report = excess(d);
  const auto& signs = report.signs;
  auto extraction = extract_chordless_maximal(d);
  const auto& cycles = extraction.family;
  const Digraph& a = extraction.remainder;
  const std::string method = mode == IncidenceMode::NoZero ? "no-zero" : "k-sparse";
  if (cycles.empty()) return finish(d, decompose_acyclic(a), method);

  const std::size_t lll_d = std::max<std::size_t>(1, 2 * max_semi_degree(d));
  std::optional<Failure> worst;
  auto note = [&](Failure f) {
    if (!worst || progress(f.stage) > progress(worst->stage)) worst = std::move(f);
  };

  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, cfg.attempts); ++attempt) {
    AcyclicOptions opts;
    if (attempt > 0) opts.seed = mix_seed(cfg.seed, attempt);
    const auto base = decompose_acyclic(a, opts);
    const auto& paths = base.family.paths();
    const auto inc = build_incidence(d, cycles, paths, signs, mode);

    if (cfg.strict) {
      for (std::size_t i = 0; i < cycles.size(); ++i) {
        if (inc.graph.adjacency[i].size() < cfg.cycle_degree_floor) {
          return Failure{Stage::HypothesisUnmet, "cycle has too few incident paths",
                         {{"cycle", cycles[i].vertices},
                          {"incident", inc.graph.adjacency[i].size()},
                          {"floor", cfg.cycle_degree_floor}}};
        }
      }
    }

    for (std::size_t m = std::max<std::size_t>(2, cfg.m); m <= std::max(cfg.m, cfg.max_m); ++m) {
      const auto hall = hall_disjoint_reps(inc.graph, m);
      if (!hall.feasible) {
        nlohmann::json bad = nlohmann::json::array();
        for (auto i : hall.violator) bad.push_back(cycles[i].vertices);
        note(Failure{Stage::HallInfeasible, "no disjoint sets of " + std::to_string(m) + " incident paths",
                     {{"m", m}, {"attempt", attempt}, {"violator_cycles", bad}}});
        break;
      }

      std::vector<SignClass> classes;
      std::optional<std::size_t> thin;
      for (std::size_t i = 0; i < cycles.size(); ++i) {
        std::vector<TangentPath> tangents;
        for (auto j : hall.reps[i])
          tangents.push_back(derive_tangent(paths[j], cycles[i], i, inc.at.at({i, j}), signs));
        classes.push_back(classify_tangents_by_sign(tangents, signs));
        if (classes.back().chosen.size() < 2 && !thin) thin = i;
      }
      if (thin) {
        note(Failure{Stage::SignMajorityTooSmall, "a cycle has fewer than two same-sign tangent paths",
                     {{"m", m}, {"attempt", attempt}, {"cycle", cycles[*thin].vertices}}});
        continue;
      }

      ConflictGraph conflicts;
      std::vector<const TangentPath*> node;
      std::unordered_map<Vertex, std::vector<std::size_t>> by_start, by_end;
      for (const auto& cls : classes) {
        conflicts.groups.emplace_back();
        for (const auto& q : cls.chosen) {
          conflicts.groups.back().push_back(node.size());
          by_start[q.path.front()].push_back(node.size());
          by_end[q.path.back()].push_back(node.size());
          node.push_back(&q);
        }
      }
      conflicts.adjacency.resize(node.size());
      for (const auto* index : {&by_start, &by_end})
        for (const auto& [v, ids] : *index)
          for (std::size_t x = 0; x < ids.size(); ++x)
            for (std::size_t y = x + 1; y < ids.size(); ++y) conflicts.connect(ids[x], ids[y]);

      const auto pick = independent_two_per_group(conflicts, lll_d, mix_seed(cfg.seed, attempt, m), cfg.lll_budget);
      if (!pick.found) {
        note(Failure{Stage::LLLExhausted, "no conflict-free choice of two tangent paths per cycle",
                     {{"m", m}, {"attempt", attempt}, {"resamples", pick.resamples}}});
        continue;
      }

      std::vector<Path> chosen;
      for (const auto& [x, y] : pick.picks) {
        chosen.push_back(node[x]->path);
        chosen.push_back(node[y]->path);
      }
      auto completion = complete_partial(a, chosen, opts);
      Decomposition out;
      for (std::size_t k = chosen.size(); k < completion.family.size(); ++k) out.family.add(completion.family[k]);
      for (std::size_t i = 0; i < cycles.size(); ++i) {
        const auto [x, y] = pick.picks[i];
        auto [u, v] = absorb_cycle(cycles[i], *node[x], *node[y], signs);
        out.family.add(std::move(u));
        out.family.add(std::move(v));
      }
      if (out.family.size() != report.excess) throw std::logic_error("absorption changed the path count");
      return finish(d, std::move(out), method);
    }
  }
  return *worst;
}

}  // namespace detail

/// Every vertex must have nonzero excess.
inline Outcome decompose_no_zero(const Digraph& d, const PipelineConfig& cfg = {}) {
  const auto report = excess(d);
  for (Vertex v = 0; v < d.num_vertices(); ++v) {
    if (report.signs.is_zero(v)) {
      throw Error(ErrorCode::ZeroExcessVertex, "vertex " + std::to_string(v) + " has excess zero");
    }
  }
  return detail::absorb_pipeline(d, cfg, IncidenceMode::NoZero);
}

/// The excess-zero vertices must form a cfg.sparsity_k-sparse set.
inline Outcome decompose_k_sparse(const Digraph& d, const PipelineConfig& cfg = {}) {
  const auto zeros = excess(d).signs.zero_vertices();
  if (zeros.empty()) return detail::absorb_pipeline(d, cfg, IncidenceMode::NoZero);
  const auto sparse = is_k_sparse(d, zeros, cfg.sparsity_k);
  if (!sparse.sparse) {
    const auto [u, v, w] = *sparse.witness;
    throw Error(ErrorCode::NotSparse, "zero vertex " + std::to_string(u) + " has zero vertices " + std::to_string(v) +
                                          " and " + std::to_string(w) + " within distance " +
                                          std::to_string(cfg.sparsity_k));
  }
  return detail::absorb_pipeline(d, cfg, IncidenceMode::KSparse);
}

// ---------------------------------------------------------------------------
// Short cycles and the discrete pipeline

/// All directed cycles of length at most p, each once, rotated to start at
/// its smallest vertex. Depth-bounded DFS from every vertex through larger
/// vertices only.
inline std::vector<Cycle> short_directed_cycles(const Digraph& d, std::size_t p) {
  std::vector<Cycle> out;
  std::vector<Vertex> stack;
  std::vector<char> on(d.num_vertices(), 0);
  auto dfs = [&](auto&& self, Vertex s, Vertex v) -> void {
    for (Vertex w : d.out(v)) {
      if (w == s && stack.size() >= 2) {
        out.push_back(Cycle{stack});
      } else if (w > s && !on[w] && stack.size() < p) {
        on[w] = 1;
        stack.push_back(w);
        self(self, s, w);
        stack.pop_back();
        on[w] = 0;
      }
    }
  };
  for (Vertex s = 0; s < d.num_vertices(); ++s) {
    stack.assign(1, s);
    on[s] = 1;
    dfs(dfs, s, s);
    on[s] = 0;
  }
  return out;
}

struct DirectedDiscreteness {
  bool census_ok = true;
  bool disjoint_ok = true;
  bool distance_ok = true;
  nlohmann::json witness = nlohmann::json::object();
  bool ok() const { return census_ok && disjoint_ok && distance_ok; }
};

/// The directed analogue of (n,d,p)-discreteness for a list of short cycles:
/// few of them, pairwise vertex-disjoint, and cycle vertices pairwise at
/// least `floor` apart in the underlying graph of D minus the cycle edges.
inline DirectedDiscreteness check_directed_discreteness(const Digraph& d, const std::vector<Cycle>& cycles,
                                                        std::size_t cap, std::size_t floor) {
  DirectedDiscreteness r;
  if (cycles.size() > cap) {
    r.census_ok = false;
    r.witness = {{"short_cycles", cycles.size()}, {"cap", cap}};
    return r;
  }
  std::vector<std::size_t> owner(d.num_vertices(), cycles.size());
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (Vertex v : cycles[i].vertices) {
      if (owner[v] != cycles.size()) {
        r.disjoint_ok = false;
        r.witness = {{"cycles", {cycles[owner[v]].vertices, cycles[i].vertices}}, {"shared_vertex", v}};
        return r;
      }
      owner[v] = i;
    }
  }
  if (floor <= 1) return r;
  std::vector<Edge> cyc;
  for (const auto& c : cycles)
    for (const auto& e : c.edges()) cyc.push_back(e);
  const auto d0 = d.without(cyc);
  for (const auto& c : cycles) {
    for (Vertex u : c.vertices) {
      const Vertex src[] = {u};
      const auto dist = underlying_distances(d0, src, floor - 1);
      for (Vertex v = 0; v < d.num_vertices(); ++v) {
        if (v != u && owner[v] != cycles.size() && dist[v] < floor) {
          r.distance_ok = false;
          r.witness = {{"pair", {u, v}}, {"distance", dist[v]}, {"floor", floor}};
          return r;
        }
      }
    }
  }
  return r;
}

/// Consistency proof for orientations of discrete graphs, run as an
/// algorithm: give every short cycle C_i a same-sign pair a_i, b_i, find a
/// distinctive family of plus-minus paths Q_i in D0 = D - C with a_i as one
/// end and far-apart other ends, stretch each Q_i over an arc of C_i to get
/// P_i, and hand F = D - P to the k-sparse pipeline.
inline Outcome decompose_discrete(const Digraph& d, std::size_t p, const PipelineConfig& cfg = {}) {
  const auto report = excess(d);
  const auto& signs = report.signs;
  for (Vertex v = 0; v < d.num_vertices(); ++v) {
    if (signs.is_zero(v)) throw Error(ErrorCode::ZeroExcessVertex, "vertex " + std::to_string(v) + " has excess zero");
  }
  const auto cycles = short_directed_cycles(d, p);
  auto recurse = [&](const Digraph& f) -> Outcome {
    try {
      return decompose_k_sparse(f, cfg);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotSparse) throw;
      return Failure{Stage::SparsityViolated, e.what(), {{"zero_vertices", excess(f).signs.zero_vertices()}}};
    }
  };
  if (cycles.empty()) {
    auto out = recurse(d);
    if (auto* dec = std::get_if<Decomposition>(&out)) dec->method = "discrete";
    return out;
  }

  const std::size_t n = d.num_vertices();
  const auto gate = check_directed_discreteness(d, cycles, cfg.census_cap_for(n), cfg.distance_floor);
  if (!gate.ok()) {
    const char* what = !gate.census_ok ? "too many short cycles"
                       : !gate.disjoint_ok ? "two short cycles share a vertex"
                                           : "two short-cycle vertices are too close";
    return Failure{Stage::DiscretenessViolated, what, gate.witness};
  }

  const std::size_t t = cycles.size();
  std::vector<Vertex> a(t), b(t);
  for (std::size_t i = 0; i < t; ++i) {
    std::vector<Vertex> plus, minus;
    for (Vertex v : cycles[i].vertices) (signs.is_plus(v) ? plus : minus).push_back(v);
    const auto& side = plus.size() >= minus.size() ? plus : minus;
    const auto& other = plus.size() >= minus.size() ? minus : plus;
    const auto& use = side.size() >= 2 ? side : other;
    if (use.size() < 2) {
      return Failure{Stage::PathFamilyNotFound, "short cycle has no two vertices of one sign",
                     {{"cycle", cycles[i].vertices}}};
    }
    a[i] = use[0];
    b[i] = use[1];
  }

  std::vector<Edge> cycle_edges;
  std::vector<char> on_cycles(n, 0);
  for (const auto& c : cycles) {
    for (const auto& e : c.edges()) cycle_edges.push_back(e);
    for (Vertex v : c.vertices) on_cycles[v] = 1;
  }
  const Digraph d0 = d.without(cycle_edges);
  std::vector<std::set<Vertex>> out_res(n), in_res(n);
  for (const auto& e : d0.edges()) {
    out_res[e.tail].insert(e.head);
    in_res[e.head].insert(e.tail);
  }

  const std::size_t k = cfg.sparsity_k;
  const std::size_t theta = cfg.theta_for(n);
  std::vector<char> endpoint(n, 0);
  std::vector<std::optional<Path>> q(t);
  std::size_t soft = 0;

  // One search from a_i in D0 minus the paths chosen so far. Phase 0 wants a
  // far end within theta steps, phase 1 any far end, phase 2 the end that
  // is farthest from the forbidden set.
  auto search = [&](std::size_t i, int phase) -> std::optional<Path> {
    const bool forward = signs.is_plus(a[i]);
    std::vector<std::size_t> dist(n, kInfinity);
    std::vector<Vertex> parent(n, kInfinity);
    std::deque<Vertex> queue{a[i]};
    dist[a[i]] = 0;
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop_front();
      for (Vertex w : forward ? out_res[x] : in_res[x]) {
        if (dist[w] == kInfinity) {
          dist[w] = dist[x] + 1;
          parent[w] = x;
          queue.push_back(w);
        }
      }
    }
    std::vector<Vertex> avoid;
    for (Vertex v = 0; v < n; ++v)
      if ((endpoint[v] || on_cycles[v]) && v != a[i]) avoid.push_back(v);
    const auto near = underlying_distances(d0, avoid, k + 1);

    std::optional<Vertex> best;
    auto better = [&](Vertex x) {
      if (!best) return true;
      if (phase == 2 && near[x] != near[*best]) return near[x] > near[*best];
      return dist[x] < dist[*best];
    };
    for (Vertex x = 0; x < n; ++x) {
      if (x == a[i] || dist[x] == kInfinity || on_cycles[x] || endpoint[x]) continue;
      if (forward ? !signs.is_minus(x) : !signs.is_plus(x)) continue;
      const bool far = near[x] > k;
      if (phase == 0 && (!far || dist[x] > theta)) continue;
      if (phase == 1 && !far) continue;
      if (better(x)) best = x;
    }
    if (!best) return std::nullopt;
    Path path;
    for (Vertex x = *best; x != a[i]; x = parent[x]) path.vertices.push_back(x);
    path.vertices.push_back(a[i]);
    if (forward) std::reverse(path.vertices.begin(), path.vertices.end());
    return path;
  };
  auto commit = [&](std::size_t i, Path path) {
    for (const auto& e : path.edges()) {
      out_res[e.tail].erase(e.head);
      in_res[e.head].erase(e.tail);
    }
    endpoint[path.front()] = endpoint[path.back()] = 1;
    q[i] = std::move(path);
  };

  for (int phase = 0; phase < 3; ++phase) {
    for (std::size_t i = 0; i < t; ++i) {
      if (q[i]) continue;
      if (auto path = search(i, phase)) {
        if (phase == 2) ++soft;
        commit(i, std::move(*path));
      } else if (phase == 2) {
        return Failure{Stage::PathFamilyNotFound, "no plus-minus path from a short cycle to a usable end",
                       {{"cycle", cycles[i].vertices}, {"a", a[i]}}};
      }
    }
  }

  std::vector<Path> stretched;
  for (std::size_t i = 0; i < t; ++i) {
    const auto& c = cycles[i];
    const auto& path = *q[i];
    Path pi;
    if (signs.is_plus(a[i])) {
      std::size_t at = path.vertices.size() - 1;
      while (!c.contains(path.vertices[at])) --at;
      const Vertex ap = path.vertices[at];
      pi = ap != b[i] ? c.arc(b[i], ap) : c.arc(a[i], b[i]);
      pi.vertices.insert(pi.vertices.end(), path.vertices.begin() + static_cast<std::ptrdiff_t>(at) + 1,
                         path.vertices.end());
    } else {
      std::size_t at = 0;
      while (!c.contains(path.vertices[at])) ++at;
      const Vertex ap = path.vertices[at];
      const Path arc = ap != b[i] ? c.arc(ap, b[i]) : c.arc(b[i], a[i]);
      pi.vertices.assign(path.vertices.begin(), path.vertices.begin() + static_cast<std::ptrdiff_t>(at));
      pi.vertices.insert(pi.vertices.end(), arc.vertices.begin(), arc.vertices.end());
    }
    if (!has_distinct_vertices(pi.vertices)) throw std::logic_error("stretched path repeats a vertex");
    stretched.push_back(std::move(pi));
  }
  if (auto why = partial_violation(d, stretched)) throw std::logic_error("stretched paths not partial: " + *why);

  std::vector<Edge> used;
  for (const auto& path : stretched)
    for (const auto& e : path.edges()) used.push_back(e);
  const Digraph f = d.without(used);
  if (!short_directed_cycles(f, p).empty()) throw std::logic_error("a short cycle survived its stretched path");

  auto rest = recurse(f);
  if (auto* fail = std::get_if<Failure>(&rest)) {
    fail->witness["inside"] = "k-sparse remainder";
    return rest;
  }
  Decomposition out;
  for (auto& path : stretched) out.family.add(std::move(path));
  for (const auto& path : std::get<Decomposition>(rest).family) out.family.add(path);
  auto done = detail::finish(d, std::move(out), "discrete");
  if (auto* dec = std::get_if<Decomposition>(&done); dec && soft > 0) dec->method += "+fallback";
  return done;
}

/// Acyclic inputs go to the acyclic decomposition. With zero vertices the
/// k-sparse pipeline runs; otherwise the discrete pipeline with p =
/// cfg.short_cycle_length, and on failure the no-zero pipeline.
inline Outcome decompose_auto(const Digraph& d, const PipelineConfig& cfg = {}) {
  if (is_acyclic(d)) return detail::finish(d, decompose_acyclic(d), "acyclic");
  const auto zeros = excess(d).signs.zero_vertices();
  if (!zeros.empty()) {
    try {
      return decompose_k_sparse(d, cfg);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotSparse) throw;
      return Failure{Stage::SparsityViolated, e.what(), {{"zero_vertices", zeros}}};
    }
  }
  auto first = decompose_discrete(d, cfg.short_cycle_length, cfg);
  if (succeeded(first)) return first;
  auto second = decompose_no_zero(d, cfg);
  return succeeded(second) ? second : first;
}

}  // namespace dipaths
