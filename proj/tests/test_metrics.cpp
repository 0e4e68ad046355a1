#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "spg/generators.hpp"
#include "spg/metrics.hpp"
#include "support.hpp"

using namespace spg;

TEST_CASE("distances on the 2-cube") {
  Spg s = gen_hypercube(2);
  CHECK(distance(s, 0, 0) == 0);
  CHECK(distance(s, 0, 1) == 1);
  CHECK(distance(s, 0, 3) == 2);
  CHECK(distance(s, 3, 0) == 2);
  CHECK(distances_from(s, 0) == std::vector<int>{0, 1, 1, 2});
  CHECK(eccentricity(s, 0) == 2);
  CHECK(eccentricity(s, 1) == 2);
  CHECK(diameter(s) == 2);
}

TEST_CASE("hypercube diameters match the dimension") {
  for (int d = 1; d <= 6; ++d) {
    Spg s = gen_hypercube(d);
    CHECK(diameter(s) == d);
    CHECK(distance(s, 0, static_cast<ClassId>((1u << d) - 1)) == d);
  }
}

TEST_CASE("distance handles sparse class ids") {
  Spg s = build_spg(2, 3, {{4, {DSet{1, 2}}}, {9, {DSet{1, 3}}}}, {{4, 9}})
              .spg.value();
  CHECK(distance(s, 4, 9) == 1);
  CHECK(distances_from(s, 9) == std::vector<int>{1, 0});
  CHECK(diameter(s) == 1);
}

TEST_CASE("unknown class ids are rejected") {
  Spg s = gen_hypercube(2);
  CHECK_THROWS_AS(distance(s, 0, 9), InvalidArgument);
  CHECK_THROWS_AS(distance(s, 9, 0), InvalidArgument);
  CHECK_THROWS_AS(distances_from(s, -1), InvalidArgument);
  CHECK_THROWS_AS(eccentricity(s, 4), InvalidArgument);
  CHECK_THROWS_AS(symbol_ball(s, 17, 1), InvalidArgument);
}

TEST_CASE("bfs distances agree with a Floyd-Warshall oracle") {
  std::mt19937_64 rng(3);
  for (auto [d, n] : {std::pair{1, 5}, {2, 4}, {2, 5}, {2, 6}, {3, 6}, {3, 7}}) {
    for (int trial = 0; trial < 5; ++trial) {
      Spg s = support::random_dr_spg(rng, d, n);
      auto oracle = support::fw_distances(s);
      const int k = static_cast<int>(s.classes.size());
      int widest = 0;
      for (int i = 0; i < k; ++i) {
        ClassId u = s.classes[static_cast<std::size_t>(i)].id;
        auto dist = distances_from(s, u);
        REQUIRE(static_cast<int>(dist.size()) == k);
        int ecc = 0;
        for (int j = 0; j < k; ++j) {
          CHECK(dist[static_cast<std::size_t>(j)] ==
                oracle[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
          ecc = std::max(ecc, dist[static_cast<std::size_t>(j)]);
        }
        CHECK(eccentricity(s, u) == ecc);
        widest = std::max(widest, ecc);
      }
      CHECK(diameter(s) == widest);
    }
  }
}

TEST_CASE("symbol_ball collects symbols within the radius") {
  Spg s = gen_hypercube(3);
  CHECK(symbol_ball(s, 0, 0) == std::vector<Symbol>{1, 2, 3});
  CHECK(symbol_ball(s, 0, 1) == std::vector<Symbol>{1, 2, 3, 4, 5, 6});
  CHECK(symbol_ball(s, 0, 3) == s.support());
  CHECK_THROWS_AS(symbol_ball(s, 0, -1), InvalidArgument);

  Spg p = support::make(1, 3, {{{1}}, {{2}}, {{3}}}, {{0, 1}, {1, 2}});
  CHECK(symbol_ball(p, 0, 1) == std::vector<Symbol>{1, 2});
  CHECK(symbol_ball(p, 2, 1) == std::vector<Symbol>{2, 3});
}
