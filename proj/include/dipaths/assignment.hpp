#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dipaths/cycle_family.hpp"
#include "dipaths/digraph.hpp"
#include "dipaths/rng.hpp"

namespace dipaths {

// ---------------------------------------------------------------------------
// Max flow (Dinic)

class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t n) : graph_(n), level_(n), it_(n) {}

  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t cap) {
    graph_[from].push_back({to, graph_[to].size(), cap});
    graph_[to].push_back({from, graph_[from].size() - 1, 0});
    return graph_[from].size() - 1;
  }

  std::int64_t max_flow(std::size_t s, std::size_t t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (auto f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += f;
    }
    return flow;
  }

  /// Vertices reachable from s in the residual graph (after max_flow).
  std::vector<char> reachable(std::size_t s) const {
    std::vector<char> seen(graph_.size(), 0);
    std::deque<std::size_t> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (const auto& e : graph_[v]) {
        if (e.cap > 0 && !seen[e.to]) {
          seen[e.to] = 1;
          queue.push_back(e.to);
        }
      }
    }
    return seen;
  }

  /// Flow currently on the i-th edge added out of `from`.
  std::int64_t flow_on(std::size_t from, std::size_t index) const {
    const auto& e = graph_[from][index];
    return graph_[e.to][e.rev].cap;
  }

 private:
  struct Arc {
    std::size_t to;
    std::size_t rev;
    std::int64_t cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<std::size_t> queue{s};
    level_[s] = 0;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (const auto& e : graph_[v]) {
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[v] + 1;
          queue.push_back(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(std::size_t v, std::size_t t, std::int64_t pushed) {
    if (v == t) return pushed;
    for (auto& i = it_[v]; i < graph_[v].size(); ++i) {
      auto& e = graph_[v][i];
      if (e.cap > 0 && level_[e.to] == level_[v] + 1) {
        if (auto got = dfs(e.to, t, std::min(pushed, e.cap))) {
          e.cap -= got;
          graph_[e.to][e.rev].cap += got;
          return got;
        }
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> graph_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

// ---------------------------------------------------------------------------
// Disjoint representative sets

struct BipartiteIncidence {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::vector<std::size_t>> adjacency;  // left -> right

  explicit BipartiteIncidence(std::size_t l = 0, std::size_t r = 0) : left(l), right(r), adjacency(l) {}
  void connect(std::size_t a, std::size_t b) { adjacency[a].push_back(b); }
};

struct HallResult {
  bool feasible = false;
  std::vector<std::vector<std::size_t>> reps;  // per left node, sorted
  /// When infeasible: left nodes X with |N(X)| < t|X|.
  std::vector<std::size_t> violator;
};

/// Pairwise disjoint R_a within N(a), |R_a| = t for every left node, by max
/// flow on source -(t)-> left -(1)-> right -(1)-> sink. When the flow falls
/// short, the left nodes reachable from the source in the residual graph
/// form a Hall violator.
inline HallResult hall_disjoint_reps(const BipartiteIncidence& g, std::size_t t) {
  if (t == 0) throw Error(ErrorCode::InvalidArgument, "t must be positive");
  const std::size_t source = g.left + g.right;
  const std::size_t sink = source + 1;
  FlowNetwork net(sink + 1);
  for (std::size_t a = 0; a < g.left; ++a) net.add_edge(source, a, static_cast<std::int64_t>(t));
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> handles(g.left);
  for (std::size_t a = 0; a < g.left; ++a) {
    auto nbrs = g.adjacency[a];
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    for (auto b : nbrs) {
      if (b >= g.right) throw Error(ErrorCode::InvalidArgument, "right index out of range");
      handles[a].push_back({b, net.add_edge(a, g.left + b, 1)});
    }
  }
  for (std::size_t b = 0; b < g.right; ++b) net.add_edge(g.left + b, sink, 1);

  HallResult out;
  const auto flow = net.max_flow(source, sink);
  if (flow == static_cast<std::int64_t>(t * g.left)) {
    out.feasible = true;
    out.reps.resize(g.left);
    for (std::size_t a = 0; a < g.left; ++a)
      for (auto [b, h] : handles[a])
        if (net.flow_on(a, h) > 0) out.reps[a].push_back(b);
    return out;
  }
  const auto seen = net.reachable(source);
  for (std::size_t a = 0; a < g.left; ++a)
    if (seen[a]) out.violator.push_back(a);
  return out;
}

// ---------------------------------------------------------------------------
// Independent selection of two nodes per group

struct ConflictGraph {
  std::vector<std::vector<std::size_t>> groups;     // node ids, pairwise disjoint
  std::vector<std::vector<std::size_t>> adjacency;  // node -> neighbours

  explicit ConflictGraph(std::size_t nodes = 0) : adjacency(nodes) {}

  std::size_t num_nodes() const { return adjacency.size(); }

  void connect(std::size_t a, std::size_t b) {
    if (a == b) return;
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (const auto& l : adjacency) best = std::max(best, l.size());
    return best;
  }
};

struct SelectionResult {
  bool found = false;
  std::vector<std::array<std::size_t, 2>> picks;  // per group
  std::size_t resamples = 0;
  bool exhaustive = false;
  /// Every group has at least 25d nodes and the maximum degree is at most d.
  bool guaranteed_regime = false;
};

/// True when no two chosen nodes are adjacent and each group has two
/// distinct members chosen.
inline bool is_independent_selection(const ConflictGraph& g, const std::vector<std::array<std::size_t, 2>>& picks) {
  if (picks.size() != g.groups.size()) return false;
  std::vector<char> chosen(g.num_nodes(), 0);
  for (std::size_t i = 0; i < picks.size(); ++i) {
    const auto [a, b] = picks[i];
    const auto& grp = g.groups[i];
    if (a == b || std::find(grp.begin(), grp.end(), a) == grp.end() ||
        std::find(grp.begin(), grp.end(), b) == grp.end())
      return false;
    if (chosen[a] || chosen[b]) return false;
    chosen[a] = chosen[b] = 1;
  }
  for (std::size_t v = 0; v < g.num_nodes(); ++v)
    if (chosen[v])
      for (auto w : g.adjacency[v])
        if (chosen[w]) return false;
  return true;
}

namespace detail {

inline bool exhaustive_two_per_group(const ConflictGraph& g, std::vector<std::array<std::size_t, 2>>& picks,
                                     std::vector<char>& chosen, std::size_t group) {
  if (group == g.groups.size()) return true;
  const auto& grp = g.groups[group];
  auto free = [&](std::size_t v) {
    for (auto w : g.adjacency[v])
      if (chosen[w]) return false;
    return true;
  };
  for (std::size_t i = 0; i < grp.size(); ++i) {
    if (!free(grp[i])) continue;
    chosen[grp[i]] = 1;
    for (std::size_t j = i + 1; j < grp.size(); ++j) {
      if (!free(grp[j])) continue;
      chosen[grp[j]] = 1;
      picks[group] = {grp[i], grp[j]};
      if (exhaustive_two_per_group(g, picks, chosen, group + 1)) return true;
      chosen[grp[j]] = 0;
    }
    chosen[grp[i]] = 0;
  }
  return false;
}

}  // namespace detail

/// Two nodes per group, no conflict edge inside the selection. Moser-Tardos
/// resampling: draw two uniform nodes per group, and while some conflict
/// edge has both ends drawn, redraw the groups of its ends. After
/// `budget_per_group * t` redraws, instances with at most 20 nodes are
/// searched exhaustively.
inline SelectionResult independent_two_per_group(const ConflictGraph& g, std::size_t d, std::uint64_t seed,
                                                 std::size_t budget_per_group = 1000) {
  std::vector<std::size_t> group_of(g.num_nodes(), g.groups.size());
  std::size_t total = 0;
  bool regime = g.max_degree() <= d;
  for (std::size_t i = 0; i < g.groups.size(); ++i) {
    if (g.groups[i].size() < 2) {
      throw Error(ErrorCode::GroupTooSmall, "group " + std::to_string(i) + " has fewer than two nodes");
    }
    if (g.groups[i].size() < 25 * d) regime = false;
    for (auto v : g.groups[i]) {
      if (v >= g.num_nodes() || group_of[v] != g.groups.size()) {
        throw Error(ErrorCode::InvalidArgument, "groups must be disjoint sets of nodes");
      }
      group_of[v] = i;
    }
    total += g.groups[i].size();
  }

  SelectionResult out;
  out.guaranteed_regime = regime;
  const std::size_t t = g.groups.size();
  if (t == 0) {
    out.found = true;
    return out;
  }

  Rng rng(seed);
  std::vector<char> chosen(g.num_nodes(), 0);
  out.picks.resize(t);
  auto draw = [&](std::size_t i) {
    const auto& grp = g.groups[i];
    chosen[out.picks[i][0]] = chosen[out.picks[i][1]] = 0;
    const auto a = rng.below(grp.size());
    auto b = rng.below(grp.size() - 1);
    if (b >= a) ++b;
    out.picks[i] = {grp[a], grp[b]};
    chosen[grp[a]] = chosen[grp[b]] = 1;
  };
  for (std::size_t i = 0; i < t; ++i) {
    out.picks[i] = {g.groups[i][0], g.groups[i][1]};
    draw(i);
  }

  auto violated = [&]() -> std::optional<std::pair<std::size_t, std::size_t>> {
    for (std::size_t i = 0; i < t; ++i)
      for (auto v : out.picks[i])
        for (auto w : g.adjacency[v])
          if (chosen[w]) return std::make_pair(v, w);
    return std::nullopt;
  };

  const std::size_t budget = budget_per_group * t;
  while (auto bad = violated()) {
    if (out.resamples == budget) break;
    ++out.resamples;
    const auto gi = group_of[bad->first];
    const auto gj = group_of[bad->second];
    draw(gi);
    if (gj != gi && gj < t) draw(gj);
  }
  if (!violated()) {
    out.found = true;
    return out;
  }

  if (total <= 20) {
    out.exhaustive = true;
    std::fill(chosen.begin(), chosen.end(), 0);
    out.found = detail::exhaustive_two_per_group(g, out.picks, chosen, 0);
    if (!out.found) out.picks.clear();
    return out;
  }
  out.picks.clear();
  return out;
}

// ---------------------------------------------------------------------------
// Sign classes of tangent paths

struct SignClass {
  Sign sign = Sign::Plus;
  std::vector<TangentPath> chosen;
  std::size_t plus_count = 0;
  std::size_t minus_count = 0;
};

/// Splits the tangents of one cycle by the sign of their touch vertex and
/// keeps the larger class (Plus on ties).
inline SignClass classify_tangents_by_sign(const std::vector<TangentPath>& tangents, const SignTable& signs) {
  SignClass plus{Sign::Plus, {}, 0, 0};
  std::vector<TangentPath> minus;
  for (const auto& q : tangents) {
    if (signs.is_plus(q.touch_vertex)) {
      plus.chosen.push_back(q);
    } else if (signs.is_minus(q.touch_vertex)) {
      minus.push_back(q);
    } else {
      throw Error(ErrorCode::ZeroSignTouch, "touch vertex " + std::to_string(q.touch_vertex) + " has excess zero");
    }
  }
  plus.plus_count = plus.chosen.size();
  plus.minus_count = minus.size();
  if (minus.size() > plus.chosen.size()) {
    plus.sign = Sign::Minus;
    plus.chosen = std::move(minus);
  }
  return plus;
}

}  // namespace dipaths
