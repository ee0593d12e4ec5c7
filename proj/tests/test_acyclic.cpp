#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace dipaths;

namespace {
void check_perfect(const Digraph& a, const Decomposition& dec) {
  INFO(serialize(a));
  const auto report = verify(a, dec);
  CHECK(report.ok());
  CHECK(dec.size() == testing::oracle_excess(a));
  CHECK(dec.perfect);
  const auto signs = excess(a).signs;
  for (const auto& p : dec.family) {
    CHECK(signs.is_plus(p.front()));
    CHECK(signs.is_minus(p.back()));
  }
}
}  // namespace

TEST_CASE("acyclic decomposition of tiny inputs") {
  auto one = decompose_acyclic(Digraph(2, {{0, 1}}));
  REQUIRE(one.size() == 1);
  CHECK(one.family[0].vertices == std::vector<Vertex>{0, 1});

  auto tt = decompose_acyclic(Digraph(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(tt.size() == 2);
  check_perfect(Digraph(3, {{0, 1}, {1, 2}, {0, 2}}), tt);

  auto empty = decompose_acyclic(Digraph(4));
  CHECK(empty.size() == 0);
  CHECK(empty.perfect);
}

TEST_CASE("acyclic decomposition rejects cycles") {
  CHECK_THROWS_AS(decompose_acyclic(Digraph(2, {{0, 1}, {1, 0}})), Error);
}

TEST_CASE("acyclic decomposition is perfect on random DAGs") {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = testing::random_dag(rng, 2 + rng.below(29), rng.below(61));
    AcyclicOptions opts;
    opts.check_removals = true;
    check_perfect(a, decompose_acyclic(a, opts));
    opts.seed = rng.next();
    check_perfect(a, decompose_acyclic(a, opts));
  }
}

TEST_CASE("acyclic decomposition agrees with the subset-DP oracle") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = testing::random_dag(rng, 2 + rng.below(6), rng.below(12));
    CHECK(decompose_acyclic(a).size() == testing::oracle_pn(a));
  }
}

TEST_CASE("deterministic mode is reproducible and seeded mode per seed") {
  Rng rng(9);
  auto a = testing::random_dag(rng, 20, 45);
  CHECK(decompose_acyclic(a).family.paths() == decompose_acyclic(a).family.paths());
  AcyclicOptions opts;
  opts.seed = 1234;
  CHECK(decompose_acyclic(a, opts).family.paths() == decompose_acyclic(a, opts).family.paths());
}

TEST_CASE("complete_partial") {
  Digraph two(4, {{0, 1}, {2, 3}});
  auto dec = complete_partial(two, {Path{{2, 3}}});
  REQUIRE(dec.size() == 2);
  CHECK(dec.family[0].vertices == std::vector<Vertex>{2, 3});
  check_perfect(two, dec);

  Digraph path(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(complete_partial(path, {Path{{0, 1}}}), Error);
  CHECK(complete_partial(path, {}).family.paths() == decompose_acyclic(path).family.paths());
  CHECK_THROWS_AS(complete_partial(two, {Path{{0, 1}}, Path{{0, 1}}}), Error);
}

TEST_CASE("complete_partial keeps every path of a random partial family") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = testing::random_dag(rng, 3 + rng.below(20), rng.below(50));
    AcyclicOptions opts;
    opts.seed = rng.next();
    auto full = decompose_acyclic(a, opts).family.paths();
    std::vector<Path> q;
    for (const auto& p : full)
      if (rng.coin()) q.push_back(p);
    auto dec = complete_partial(a, q);
    check_perfect(a, dec);
    for (std::size_t i = 0; i < q.size(); ++i) CHECK(dec.family[i] == q[i]);
  }
}
