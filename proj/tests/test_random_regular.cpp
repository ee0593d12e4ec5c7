#include <catch_amalgamated.hpp>

#include <map>
#include <set>

#include "support.hpp"

using namespace dipaths;

TEST_CASE("configuration model basics") {
  auto one = sample_regular(2, 1, 5);
  CHECK(one.edges() == std::vector<Edge>{{0, 1}});
  CHECK_THROWS_AS(sample_regular(3, 1, 1), Error);

  auto g = sample_regular(1000, 3, 7);
  CHECK(g.is_simple());
  for (Vertex v = 0; v < 1000; ++v) CHECK(g.degree(v) == 3);

  auto multi = sample_regular(10, 4, 7, false);
  for (Vertex v = 0; v < 10; ++v) CHECK(multi.degree(v) == 4);
}

TEST_CASE("matchings on four vertices are uniform") {
  std::map<std::vector<Edge>, int> seen;
  for (std::uint64_t s = 0; s < 3000; ++s) ++seen[sample_regular(4, 1, s).edges()];
  REQUIRE(seen.size() == 3);
  double chi2 = 0;
  for (const auto& [m, count] : seen) chi2 += (count - 1000.0) * (count - 1000.0) / 1000.0;
  // 99.9% quantile of chi-square with 2 degrees of freedom
  CHECK(chi2 < 13.8);
}

TEST_CASE("undirected cycle enumeration") {
  Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  auto c = cycle_counts(k4, 4);
  CHECK(c[3] == 4);
  CHECK(c[4] == 3);
  Graph tree(4, {{0, 1}, {1, 2}, {1, 3}});
  CHECK(undirected_cycles(tree, 8).empty());
  // Petersen graph: girth 5, twelve 5-cycles
  Graph pet(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                 {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8}});
  auto pc = cycle_counts(pet, 6);
  CHECK(pc[3] == 0);
  CHECK(pc[4] == 0);
  CHECK(pc[5] == 12);
  CHECK(pc[6] == 10);
}

TEST_CASE("census bookkeeping") {
  CHECK(poisson_cycle_mean(3, 3) == Catch::Approx(4.0 / 3.0));
  CHECK(poisson_cycle_mean(2, 3) == Catch::Approx(1.0 / 6.0));
  auto flat = cycle_census(20, 1, 5, 10, 3);
  for (std::size_t i = 3; i <= 5; ++i) CHECK(flat.mean(i) == 0.0);
  auto a = cycle_census(200, 3, 5, 12, 9, 1);
  auto b = cycle_census(200, 3, 5, 12, 9, 4);
  CHECK(a.counts == b.counts);
  CHECK(a.to_json()["3"]["samples"] == 12);
}

TEST_CASE("discreteness check") {
  Graph forest(5, {{0, 1}, {1, 2}, {3, 4}});
  CHECK(check_discrete(forest, 6, 0, 100).verdict());

  Graph bow(5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}});
  auto r = check_discrete(bow, 3, 5, 1);
  CHECK_FALSE(r.disjoint_ok);
  CHECK(r.witness["disjoint"]["shared_vertex"] == 0);

  // triangles 0-1-2 and 4-5-6 joined by the path 2 - 3 - 4
  Graph joined(7, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 6}});
  auto j = check_discrete(joined, 3, 5, 5);
  CHECK(j.disjoint_ok);
  CHECK_FALSE(j.distance_ok);
  CHECK(j.witness["distance"]["distance"] == 2);
  CHECK(check_discrete(joined, 3, 1, 1).census_ok == false);
}

TEST_CASE("random orientations") {
  Graph e(2, {{0, 1}});
  std::set<std::vector<Edge>> seen;
  for (std::uint64_t s = 0; s < 64; ++s) seen.insert(orient_random(e, s).edges());
  CHECK(seen.size() == 2);
  CHECK(orient_random(Graph(3), 1).num_edges() == 0);

  Rng rng(307);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = orient_random(sample_regular(50, 3, rng.next()), rng.next());
    CHECK(excess(d).signs.zero_vertices().empty());
  }
}

TEST_CASE("D0 and the counterexample family") {
  auto d0 = gen_D0();
  CHECK(d0.num_vertices() == 5);
  CHECK(d0.num_edges() == 8);
  auto s = excess(d0).signs;
  CHECK((s.is_plus(0) && s.is_plus(2) && s.is_minus(1) && s.is_minus(3) && s.is_zero(4)));

  for (std::size_t k = 0; k <= 5; ++k) {
    auto g = gen_Gk(k);
    CHECK(g.digraph.num_vertices() == 20 * k + 10);
    CHECK(g.digraph.num_edges() == 8 * (4 * k + 2) + 4 * k + 1);
    CHECK(underlying_graph(g.digraph).max_degree() == 2 * k + 5);
    auto r = excess(g.digraph);
    CHECK(r.excess == 10 * k + 5);
    for (const auto& v : r.signs) CHECK(v.excess() == 1);
    CHECK(g.pn_lower_bound == 12 * k + 7);
  }
  CHECK(exact_pn(gen_Gk(0).digraph).pn >= 7);
}

TEST_CASE("PM and SD") {
  // 0 -> 1 -> 2 with 0 plus, 2 minus, 1 zero
  Digraph d(4, {{0, 1}, {1, 2}, {3, 2}});
  auto s = excess(d).signs;
  CHECK(sign_distance(d, 0, s) == 2);
  CHECK(pm_set(d, 0, s) == std::vector<Vertex>{2});
  CHECK(pm_set(d, 2, s) == std::vector<Vertex>{0, 3});
  CHECK(sign_distance(d, 2, s) == 1);
  CHECK(pm_set(d, 1, s).empty());
}
