#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace dipaths;
using testing::oracle_excess;

TEST_CASE("excess of small digraphs") {
  Digraph cycle(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  CHECK(excess(cycle).excess == 0);

  auto d0 = gen_D0();
  auto r = excess(d0);
  CHECK(r.excess == 2);
  CHECK(r.signs.is_plus(0));
  CHECK(r.signs.is_minus(1));
  CHECK(r.signs.is_plus(2));
  CHECK(r.signs.is_minus(3));
  CHECK(r.signs.is_zero(4));
  CHECK(r.signs[0].ex_plus == 1);
  CHECK(r.signs[1].ex_minus == 1);

  Digraph tt(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(excess(tt).excess == 2);
}

TEST_CASE("digraph rejects loops and repeated arcs") {
  CHECK_THROWS_AS(Digraph(2, {{0, 0}}), Error);
  CHECK_THROWS_AS(Digraph(2, {{0, 1}, {0, 1}}), Error);
  CHECK_THROWS_AS(Digraph(2, {{0, 2}}), Error);
  CHECK_NOTHROW(Digraph(2, {{0, 1}, {1, 0}}));
}

TEST_CASE("adjacency lists agree with the edge list") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto d = testing::random_digraph(rng, 12, 30);
    std::size_t outs = 0, ins = 0;
    for (Vertex v = 0; v < d.num_vertices(); ++v) {
      for (Vertex w : d.out(v)) CHECK(d.has_edge(v, w));
      for (Vertex w : d.in(v)) CHECK(d.has_edge(w, v));
      outs += d.out_degree(v);
      ins += d.in_degree(v);
    }
    CHECK(outs == d.num_edges());
    CHECK(ins == d.num_edges());
  }
}

TEST_CASE("girth") {
  Digraph dag(4, {{0, 1}, {1, 2}, {0, 3}, {3, 2}});
  CHECK(girth(dag) == kInfinity);
  Digraph pair(2, {{0, 1}, {1, 0}});
  CHECK(girth(pair) == 2);
  std::vector<Edge> e;
  for (Vertex v = 0; v < 7; ++v) e.push_back({v, (v + 1) % 7});
  e.push_back({0, 3});
  CHECK(girth(Digraph(7, e)) == 5);
}

TEST_CASE("girth matches a matrix-closure oracle") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto d = testing::random_digraph(rng, 2 + rng.below(9), rng.below(20));
    INFO(serialize(d));
    CHECK(girth(d) == testing::oracle_girth(d));
    CHECK((girth(d) == kInfinity) == topological_order(d).has_value());
  }
}

TEST_CASE("underlying distance") {
  Digraph d(4, {{0, 1}, {2, 1}});
  CHECK(underlying_distance(d, 0, 0) == 0);
  CHECK(underlying_distance(d, 1, 0) == 1);
  CHECK(underlying_distance(d, 0, 2) == 2);
  CHECK(underlying_distance(d, 0, 3) == kInfinity);

  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = testing::random_digraph(rng, 10, rng.below(25));
    auto oracle = testing::oracle_distances(g);
    for (Vertex u = 0; u < 10; ++u)
      for (Vertex v = 0; v < 10; ++v) CHECK(underlying_distance(g, u, v) == oracle[u][v]);
  }
}

TEST_CASE("k-sparse sets") {
  Digraph path(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const Vertex single[] = {2};
  CHECK(is_k_sparse(path, single, 3).sparse);
  const Vertex adjacent[] = {0, 1};
  CHECK(is_k_sparse(path, adjacent, 5).sparse);
  const Vertex three[] = {1, 2, 3};
  auto r = is_k_sparse(path, three, 2);
  CHECK_FALSE(r.sparse);
  REQUIRE(r.witness);
  auto [u, v, w] = *r.witness;
  CHECK(underlying_distance(path, u, v) <= 2);
  CHECK(underlying_distance(path, u, w) <= 2);
}

TEST_CASE("k-sparse is monotone in the set and in k") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    auto d = testing::random_digraph(rng, 15, 20);
    std::vector<Vertex> s;
    for (Vertex v = 0; v < 15; ++v)
      if (rng.below(4) == 0) s.push_back(v);
    const std::size_t k = 1 + rng.below(4);
    if (!is_k_sparse(d, s, k).sparse) continue;
    std::vector<Vertex> sub;
    for (Vertex v : s)
      if (rng.coin()) sub.push_back(v);
    CHECK(is_k_sparse(d, sub, k).sparse);
    CHECK(is_k_sparse(d, s, k - 1).sparse);
  }
}

TEST_CASE("sign table invariants on random digraphs") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    auto d = testing::random_digraph(rng, 2 + rng.below(12), rng.below(40));
    auto r = excess(d);
    std::size_t plus = 0, minus = 0;
    for (Vertex v = 0; v < d.num_vertices(); ++v) {
      const auto& s = r.signs[v];
      CHECK((s.ex_plus == 0 || s.ex_minus == 0));
      plus += s.ex_plus;
      minus += s.ex_minus;
      CHECK((s.sign == Sign::Plus) == (s.ex_plus > 0));
      CHECK((s.sign == Sign::Minus) == (s.ex_minus > 0));
    }
    CHECK(plus == minus);
    CHECK(plus == r.excess);
    CHECK(r.excess == oracle_excess(d));
  }
}

TEST_CASE("removing a cycle keeps the excess") {
  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    auto d = testing::random_digraph(rng, 10, 25);
    auto fam = extract_chordless_maximal(d).family;
    if (fam.empty()) continue;
    const auto c = fam[0].edges();
    CHECK(excess(d.without(c)).excess == excess(d).excess);
  }
}
