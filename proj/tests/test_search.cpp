#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "spg/metrics.hpp"
#include "spg/properties.hpp"
#include "spg/search.hpp"
#include "support.hpp"

using namespace spg;

namespace {

// Tiny brute force over every (family, partition, edge set) candidate on
// (d=2, n=3), using only the public building blocks. Partitions are walked
// as restricted growth strings, edges as bitmasks over block pairs.
struct BruteCounts {
  uint64_t connected = 0;
  uint64_t valid = 0;
  int max_diameter = -1;
};

BruteCounts brute_force_23() {
  const std::vector<DSet> universe = {DSet{1, 2}, DSet{1, 3}, DSet{2, 3}};
  BruteCounts counts;

  for (uint32_t fam = 1; fam < 8; ++fam) {
    std::vector<DSet> members;
    for (int i = 0; i < 3; ++i)
      if (fam & (1u << i)) members.push_back(universe[static_cast<std::size_t>(i)]);
    const int m = static_cast<int>(members.size());

    std::vector<int> rgs(static_cast<std::size_t>(m), 0);
    for (;;) {
      const int k = *std::max_element(rgs.begin(), rgs.end()) + 1;
      const int pairs = k * (k - 1) / 2;
      for (uint32_t emask = 0; emask < (1u << pairs); ++emask) {
        std::vector<Edge> edges;
        int bit = 0;
        for (int a = 0; a < k; ++a)
          for (int b = a + 1; b < k; ++b, ++bit)
            if (emask & (1u << bit)) edges.emplace_back(a, b);

        std::vector<VertexClass> classes(static_cast<std::size_t>(k));
        for (int c = 0; c < k; ++c) classes[static_cast<std::size_t>(c)].id = c;
        for (int i = 0; i < m; ++i)
          classes[static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)])]
              .dsets.push_back(members[static_cast<std::size_t>(i)]);

        auto built = build_spg(2, 3, classes, edges);
        if (!built.ok()) continue;  // only disconnection can fail here
        ++counts.connected;
        if (!check_dimension_reduction(*built.spg).holds) continue;
        ++counts.valid;
        counts.max_diameter = std::max(counts.max_diameter, diameter(*built.spg));
      }

      // Next restricted growth string.
      int i = m - 1;
      for (; i > 0; --i) {
        int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
        if (rgs[static_cast<std::size_t>(i)] < cap) break;
      }
      if (i == 0) break;
      ++rgs[static_cast<std::size_t>(i)];
      std::fill(rgs.begin() + i + 1, rgs.end(), 0);
    }
  }
  return counts;
}

}  // namespace

TEST_CASE("labeled connected graph counts") {
  const uint64_t expected[] = {1, 1, 4, 38, 728, 26704, 1866256, 251548592};
  for (int k = 1; k <= 8; ++k)
    CHECK(detail::connected_graph_count(k) == expected[k - 1]);
}

TEST_CASE("exhaustive search on one-dimensional families") {
  const uint64_t explored[] = {1, 4, 17, 118, 1679, 49076, 2855413};
  for (int n = 1; n <= 7; ++n) {
    auto r = sigma_exact(1, n);
    CHECK(r.d == 1);
    CHECK(r.n == n);
    CHECK(r.value == n - 1);
    CHECK(r.exhaustive);
    CHECK(r.explored == explored[n - 1]);
    CHECK(r.explored == estimate_exact_candidates(1, n));
    // The witness must actually be a graph of that diameter.
    auto rebuilt = build_spg(r.witness.d, r.witness.n, r.witness.classes,
                             r.witness.edges);
    REQUIRE(rebuilt.ok());
    CHECK(check_dimension_reduction(*rebuilt.spg).holds);
    CHECK(diameter(*rebuilt.spg) == r.value);
    CHECK(static_cast<int>(r.witness.support().size()) == r.witness_n_eff);
  }
}

TEST_CASE("exhaustive search on two-dimensional families") {
  auto r22 = sigma_exact(2, 2);
  CHECK(r22.value == 0);
  CHECK(r22.explored == 1);
  CHECK(r22.exhaustive);

  auto r = sigma_exact(2, 3);
  CHECK(r.value == 1);
  CHECK(r.explored == 17);
  CHECK(r.exhaustive);
  Spg expected23 = support::make(2, 3, {{{1, 2}}, {{1, 3}}}, {{0, 1}});
  CHECK(r.witness == expected23);
  CHECK(r.witness_n_eff == 3);

  r = sigma_exact(2, 4);
  CHECK(r.value == 3);
  CHECK(r.explored == 49076);
  CHECK(r.exhaustive);
  Spg expected24 = support::make(
      2, 4, {{{1, 2}}, {{1, 3}, {2, 4}}, {{1, 4}, {2, 3}}, {{3, 4}}},
      {{0, 2}, {1, 2}, {1, 3}});
  CHECK(r.witness == expected24);
  CHECK(r.witness_n_eff == 4);
  CHECK(diameter(r.witness) == 3);
  // The search domain only demands dimension reduction; this witness indeed
  // fails the other historical properties.
  CHECK(check_dimension_reduction(r.witness).holds);
  CHECK_FALSE(check_adjacency(r.witness).holds);
}

TEST_CASE("a brute-force recount confirms the (2,3) numbers") {
  auto counts = brute_force_23();
  CHECK(counts.connected == 17);
  CHECK(counts.valid == 14);
  CHECK(counts.max_diameter == 1);
}

TEST_CASE("enumeration visits every valid graph") {
  uint64_t count23 = 0;
  int max23 = -1;
  auto explored23 = for_each_valid_spg(2, 3, 1'000'000, [&](const Spg& s, int dia) {
    ++count23;
    max23 = std::max(max23, dia);
    CHECK(diameter(s) == dia);
    CHECK(check_dimension_reduction(s).holds);
  });
  CHECK(count23 == 14);
  CHECK(max23 == 1);
  CHECK(explored23 == 17);

  uint64_t count24 = 0;
  int max24 = -1;
  auto explored24 = for_each_valid_spg(2, 4, 1'000'000, [&](const Spg&, int dia) {
    ++count24;
    max24 = std::max(max24, dia);
  });
  CHECK(count24 == 5990);
  CHECK(max24 == 3);
  CHECK(explored24 == 49076);

  CHECK_THROWS_AS(for_each_valid_spg(2, 5, 1'000'000, [](const Spg&, int) {}),
                  ResourceLimit);
}

TEST_CASE("candidate estimates and resource caps") {
  CHECK(estimate_exact_candidates(2, 4) == 49076);
  CHECK(estimate_exact_candidates(1, 7) == 2855413);
  CHECK(estimate_exact_candidates(2, 5) == 38457343712464ull);

  CHECK_THROWS_AS(sigma_exact(2, 5), ResourceLimit);
  CHECK_THROWS_AS(sigma_exact(1, 8), ResourceLimit);

  ExactOptions tight;
  tight.candidate_cap = 100;
  CHECK_THROWS_AS(sigma_exact(1, 4, tight), ResourceLimit);

  CHECK_THROWS_AS(sigma_exact(0, 1), InvalidArgument);
  CHECK_THROWS_AS(sigma_exact(3, 2), InvalidArgument);
  ExactOptions bad;
  bad.workers = 0;
  CHECK_THROWS_AS(sigma_exact(1, 3, bad), InvalidArgument);
}

TEST_CASE("worker count does not change the exhaustive result") {
  ExactOptions three;
  three.workers = 3;
  auto lone = sigma_exact(2, 4);
  auto split = sigma_exact(2, 4, three);
  CHECK(lone.value == split.value);
  CHECK(lone.witness == split.witness);
  CHECK(lone.explored == split.explored);
  CHECK(lone.exhaustive == split.exhaustive);
}

TEST_CASE("relabeling preserves validity and diameter of a witness") {
  auto r = sigma_exact(2, 4);
  std::mt19937_64 rng(13);
  std::vector<Symbol> perm = {1, 2, 3, 4};
  for (int trial = 0; trial < 6; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    Spg t = relabel_symbols(r.witness, perm);
    CHECK(check_dimension_reduction(t).holds);
    CHECK(diameter(t) == r.value);
  }
}

TEST_CASE("randomized search returns validated witnesses") {
  auto r = sigma_search(2, 4, 10'000, 0);
  CHECK(r.value == 3);  // reaches the exhaustive optimum
  CHECK_FALSE(r.exhaustive);
  CHECK(r.explored == 10'000);
  auto rebuilt = build_spg(r.witness.d, r.witness.n, r.witness.classes,
                           r.witness.edges);
  REQUIRE(rebuilt.ok());
  CHECK(check_dimension_reduction(*rebuilt.spg).holds);
  CHECK(diameter(*rebuilt.spg) == r.value);
  CHECK(static_cast<int>(r.witness.support().size()) == r.witness_n_eff);
}

TEST_CASE("randomized search never beats the exhaustive optimum") {
  for (auto [d, n] : {std::pair{1, 4}, {1, 5}, {2, 3}, {2, 4}}) {
    auto exact = sigma_exact(d, n);
    auto searched = sigma_search(d, n, 2'000, 7);
    CHECK(searched.value <= exact.value);
    CHECK(diameter(searched.witness) == searched.value);
  }
}

TEST_CASE("warm starts make easy optima immediate") {
  // The line graph is among the deterministic starts for d = 1.
  auto r = sigma_search(1, 5, 50, 3);
  CHECK(r.value == 4);
  // The hypercube start already has diameter 3.
  auto h = sigma_search(3, 6, 1'000, 42);
  CHECK(h.value >= 3);
}

TEST_CASE("randomized search is deterministic per seed") {
  auto a = sigma_search(2, 4, 3'000, 11);
  auto b = sigma_search(2, 4, 3'000, 11);
  CHECK(a.value == b.value);
  CHECK(a.witness == b.witness);
  CHECK(a.explored == b.explored);

  SearchOptions two;
  two.workers = 2;
  auto pair = sigma_search(2, 4, 3'000, 11, two);
  auto second = sigma_search(2, 4, 3'000, 12);
  CHECK(pair.explored == 6'000);
  CHECK(pair.value == std::max(a.value, second.value));
}

TEST_CASE("randomized search rejects bad arguments") {
  CHECK_THROWS_AS(sigma_search(0, 1, 100, 0), InvalidArgument);
  CHECK_THROWS_AS(sigma_search(2, 1, 100, 0), InvalidArgument);
  CHECK_THROWS_AS(sigma_search(2, 4, 0, 0), InvalidArgument);
  SearchOptions bad;
  bad.workers = 0;
  CHECK_THROWS_AS(sigma_search(2, 4, 100, 0, bad), InvalidArgument);
}
