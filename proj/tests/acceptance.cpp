// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <thread>

#include "support.hpp"

using namespace dipaths;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, double limit_seconds, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < limit_seconds;
  const bool ok = v.pass && in_time;
  if (!ok) ++failures;
  std::printf("criterion %2d: %s  %s  [%.2fs, limit %.0fs]\n", id, ok ? "PASS" : "FAIL", v.detail.c_str(), secs,
              limit_seconds);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::size_t jobs() { return std::max(1U, std::thread::hardware_concurrency()); }

Verdict d0_ground_truth() {
  const auto d0 = gen_D0();
  const auto ex = excess(d0).excess;
  const auto pn = exact_pn(d0).pn;
  return {ex == 2 && pn == 4, fmt("ex(D0)=%zu pn(D0)=%zu", ex, pn)};
}

Verdict counterexample_family() {
  bool ok = true;
  std::string detail;
  for (std::size_t k = 0; k <= 5; ++k) {
    const auto g = gen_Gk(k);
    const auto r = excess(g.digraph);
    const auto delta = underlying_graph(g.digraph).max_degree();
    bool unit = true;
    for (const auto& s : r.signs) unit &= s.excess() == 1;
    const bool row = g.digraph.num_vertices() == 20 * k + 10 && delta == 2 * k + 5 && unit &&
                     r.excess == 10 * k + 5 && g.pn_lower_bound == 12 * k + 7 &&
                     g.pn_lower_bound - r.excess == 2 * k + 2;
    ok &= row;
    detail += fmt("k=%zu:|V|=%zu,D=%zu,ex=%zu,bound=%zu%s ", k, g.digraph.num_vertices(), delta, r.excess,
                  g.pn_lower_bound, row ? "" : "(!)");
  }
  return {ok, detail};
}

Verdict acyclic_suite() {
  Rng rng(3001);
  std::size_t good = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testing::random_dag(rng, 2 + rng.below(29), rng.below(61));
    const auto dec = decompose_acyclic(a);
    const auto report = verify(a, dec);
    good += report.ok() && report.endpoint_counts && dec.size() == testing::oracle_excess(a);
  }
  return {good == 200, fmt("%zu/200 DAGs perfect with exact endpoint counts", good)};
}

Verdict oracle_agreement() {
  Rng rng(4001);
  std::vector<Graph> graphs;
  while (graphs.size() < 20) {
    const std::size_t n = 3 + rng.below(5);
    const std::size_t m = std::min<std::size_t>(n - 1 + rng.below(4), 7);
    if (m < n - 1) continue;
    graphs.push_back(testing::random_connected_graph(rng, n, m));
  }
  graphs.push_back(Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  std::size_t orientations = 0, successes = 0, mismatches = 0;
  for (const auto& g : graphs) {
    for (std::uint64_t mask = 0; mask < (1ULL << g.num_edges()); ++mask) {
      const auto d = orientation_from_mask(g, mask);
      ++orientations;
      const auto pn = exact_pn(d).pn;
      const auto o = decompose_auto(d);
      if (const auto* dec = std::get_if<Decomposition>(&o)) {
        ++successes;
        if (dec->size() != pn || !verify(d, *dec).ok()) ++mismatches;
      }
    }
  }
  const auto k4 = strong_consistency_scan(graphs.back());
  return {mismatches == 0 && k4.strongly_consistent && successes > 0,
          fmt("%zu orientations, %zu pipeline successes, %zu mismatches; K4 strongly consistent=%s", orientations,
              successes, mismatches, k4.strongly_consistent ? "true" : "false")};
}

Verdict chordless_family() {
  Rng rng(5001);
  std::size_t good = 0, cycles = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = testing::random_digraph(rng, 2 + rng.below(39), rng.below(160));
    const auto x = extract_chordless_maximal(d);
    bool ok = testing::oracle_girth(x.remainder) == kInfinity;
    std::set<Edge> seen;
    for (const auto& c : x.family.cycles()) {
      ok &= is_cycle_in(d, c);
      for (const auto& e : c.edges()) ok &= seen.insert(e).second;
    }
    for (const auto& e : x.remainder.edges()) ok &= seen.insert(e).second;
    ok &= seen.size() == d.num_edges();
    for (const auto& c : x.family.cycles())
      for (Vertex a : c.vertices)
        for (Vertex b : c.vertices)
          if (a != b) ok &= !x.remainder.has_edge(a, b);
    good += ok;
    cycles += x.family.size();
  }
  return {good == 100, fmt("%zu/100 digraphs pass (%zu cycles extracted)", good, cycles)};
}

Verdict pm_sd_bound() {
  Rng rng(6001);
  std::size_t vertices = 0, violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = trial % 2 == 0 ? 3 : 5;
    const std::size_t n = 2 * (10 + rng.below(91));
    const auto dg = orient_random(sample_regular(n, d, rng.next()), rng.next());
    const auto signs = excess(dg).signs;
    if (!signs.zero_vertices().empty()) return {false, "odd-regular orientation produced a zero vertex"};
    for (Vertex v = 0; v < n; ++v) {
      const double sd = static_cast<double>(sign_distance(dg, v, signs));
      const double bound = std::pow(1.0 + 1.0 / (2.0 * d), sd / 6.0) / static_cast<double>(d);
      ++vertices;
      if (static_cast<double>(pm_set(dg, v, signs).size()) < bound) ++violations;
    }
  }
  return {violations == 0, fmt("%zu vertices checked, %zu violations", vertices, violations)};
}

Verdict sparse_observation() {
  Rng rng(7001);
  std::size_t checked = 0, violations = 0;
  while (checked < 100) {
    const std::size_t g = 3 + rng.below(30);
    const std::size_t extra = rng.below(10);
    const std::size_t n = g + extra;
    std::set<Edge> edges;
    for (Vertex v = 0; v < g; ++v) edges.insert({v, (v + 1) % g});
    for (std::size_t i = 0, m = rng.below(2 * n); i < m; ++i) {
      const auto u = rng.below(n);
      const auto v = rng.below(n);
      if (u != v) edges.insert({u, v});
    }
    const Digraph d(n, {edges.begin(), edges.end()});
    const std::size_t k = 2 + rng.below(g - 1 > 2 ? g - 3 : 1);
    if (k >= g) continue;
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    rng.shuffle(order);
    std::vector<Vertex> s;
    for (Vertex v : order) {
      s.push_back(v);
      if (!is_k_sparse(d, s, k).sparse) s.pop_back();
    }
    std::size_t on = 0;
    for (Vertex v : s) on += v < g;
    ++checked;
    if (!(static_cast<double>(on) < 2.0 * static_cast<double>(g) / static_cast<double>(k))) ++violations;
  }
  return {violations == 0, fmt("%zu (cycle, S, k) triples, %zu violations", checked, violations)};
}

Verdict poisson_census() {
  const auto census = cycle_census(5000, 3, 4, 300, 8001, jobs());
  const double y3 = census.mean(3);
  const double y4 = census.mean(4);
  const bool ok = std::abs(y3 - 4.0 / 3.0) <= 0.25 && std::abs(y4 - 2.0) <= 0.35;
  return {ok, fmt("mean Y3=%.3f (4/3+-0.25), mean Y4=%.3f (2+-0.35), %zu samples", y3, y4, census.samples)};
}

Verdict end_to_end() {
  bool ok = true;
  std::string detail;
  for (std::size_t n : {50, 100, 200}) {
    std::size_t success = 0, bad = 0, undiagnosed = 0, discrete_only = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
      const auto g = sample_regular(n, 3, Rng::substream(9001 + n, s).next());
      const auto d = orient_random(g, Rng::substream(9002 + n, s).next());
      const auto o = decompose_auto(d);
      if (const auto* dec = std::get_if<Decomposition>(&o)) {
        ++success;
        if (!verify(d, *dec).ok() || dec->size() != excess(d).excess) ++bad;
        discrete_only += dec->method.starts_with("discrete");
      } else if (std::get<Failure>(o).detail.empty()) {
        ++undiagnosed;
      }
    }
    ok &= success >= 90 && bad == 0 && undiagnosed == 0;
    detail += fmt("n=%zu: %zu%% success (%zu via discrete alone), %zu bad; ", n, success, discrete_only, bad);
  }
  return {ok, detail};
}

Verdict lll_selector() {
  Rng rng(10001);
  std::size_t found = 0, independent = 0, regime = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + rng.below(3);
    const std::size_t t = 2 + rng.below(5);
    ConflictGraph g;
    std::size_t nodes = 0;
    for (std::size_t i = 0; i < t; ++i) {
      const std::size_t size = 25 * d + rng.below(5 * d + 1);
      g.groups.emplace_back();
      for (std::size_t j = 0; j < size; ++j) g.groups.back().push_back(nodes++);
    }
    g.adjacency.resize(nodes);
    for (std::size_t e = 0; e < nodes * d; ++e) {
      const auto a = rng.below(nodes);
      const auto b = rng.below(nodes);
      if (a == b || g.adjacency[a].size() >= d || g.adjacency[b].size() >= d) continue;
      if (std::find(g.adjacency[a].begin(), g.adjacency[a].end(), b) != g.adjacency[a].end()) continue;
      g.connect(a, b);
    }
    const auto r = independent_two_per_group(g, d, rng.next());
    regime += r.guaranteed_regime;
    if (r.found) {
      ++found;
      independent += is_independent_selection(g, r.picks);
    }
  }
  return {regime == 100 && found >= 99 && independent == found,
          fmt("%zu/100 found, %zu independent, %zu in regime", found, independent, regime)};
}

Verdict absorption_identity() {
  Rng rng(11001);
  std::size_t good = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t g = 2 + rng.below(9);
    Vertex next = static_cast<Vertex>(g);
    Cycle c;
    for (Vertex v = 0; v < g; ++v) c.vertices.push_back(v);
    rng.shuffle(c.vertices);
    const auto ia = rng.below(g);
    auto ib = rng.below(g - 1);
    if (ib >= ia) ++ib;
    const Vertex za = c.vertices[ia], zb = c.vertices[ib];

    auto tail = [&](Vertex z, const std::vector<Vertex>& reusable) {
      Path p{{z}};
      const std::size_t len = 1 + rng.below(4);
      for (std::size_t i = 0; i < len; ++i) {
        Vertex w = next;
        if (!reusable.empty() && rng.below(3) == 0) w = reusable[rng.below(reusable.size())];
        if (p.contains(w)) w = next;
        if (w == next) ++next;
        p.vertices.push_back(w);
      }
      return p;
    };
    Path qa = tail(za, {});
    std::vector<Vertex> off(qa.vertices.begin() + 1, qa.vertices.end());
    Path qb = tail(zb, off);

    std::vector<Edge> edges = c.edges();
    const bool plus = rng.coin();
    for (auto* q : {&qa, &qb}) {
      if (!plus) std::reverse(q->vertices.begin(), q->vertices.end());
      for (const auto& e : q->edges()) edges.push_back(e);
    }
    std::vector<Edge> all = edges;
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
      --trial;
      continue;
    }
    std::vector<Edge> cyc = c.edges();
    const Digraph d(next, all);
    const auto signs = excess(d).signs;
    const auto [u, v] = absorb_cycle(c, {qa, 0, za}, {qb, 0, zb}, signs);

    std::vector<Edge> got = u.edges();
    for (const auto& e : v.edges()) got.push_back(e);
    std::sort(got.begin(), got.end());
    const bool partition = got == all;
    const bool simple = is_path_in(d, u) && is_path_in(d, v);
    const bool pm = is_plus_minus(u, signs) && is_plus_minus(v, signs);
    good += partition && simple && pm;
  }
  return {good == 500, fmt("%zu/500 instances partition the union into two simple plus-minus paths", good)};
}

}  // namespace

int main() {
  run(1, 10, d0_ground_truth);
  run(2, 1, counterexample_family);
  run(3, 5, acyclic_suite);
  run(4, 300, oracle_agreement);
  run(5, 30, chordless_family);
  run(6, 60, pm_sd_bound);
  run(7, 5, sparse_observation);
  run(8, 600, poisson_census);
  run(9, 900, end_to_end);
  run(10, 30, lll_selector);
  run(11, 5, absorption_identity);
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
