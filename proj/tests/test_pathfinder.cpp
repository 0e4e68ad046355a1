#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "spg/generators.hpp"
#include "spg/metrics.hpp"
#include "spg/pathfinder.hpp"
#include "support.hpp"

using namespace spg;

namespace {

// All 3-subsets of {1..5} as singleton classes, edges between sets meeting
// in two symbols. Ten classes, so the recursion cannot stop at the size base
// case, and five symbols force the shared-symbol move.
Spg johnson53(bool cut_off_class_9 = false) {
  std::vector<VertexClass> classes;
  std::vector<DSet> sets;
  for (Symbol a = 1; a <= 5; ++a)
    for (Symbol b = a + 1; b <= 5; ++b)
      for (Symbol c = b + 1; c <= 5; ++c) sets.push_back(DSet{a, b, c});
  for (std::size_t i = 0; i < sets.size(); ++i)
    classes.push_back({static_cast<ClassId>(i), {sets[i]}});
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (sets[i].intersection_size(sets[j]) != 2) continue;
      // Optionally isolate class 9 = {345} from the other holders of
      // symbol 3, leaving it reachable only through 3-free classes.
      if (cut_off_class_9 && j == 9 && sets[i].contains(3)) continue;
      edges.emplace_back(static_cast<ClassId>(i), static_cast<ClassId>(j));
    }
  auto built = build_spg(3, 5, std::move(classes), std::move(edges));
  REQUIRE(built.ok());
  return *built.spg;
}

void check_verifies(const Spg& g, const PathResult& r) {
  REQUIRE(r.ok());
  auto v = verify_certificate(g, r.certified->path, r.certified->cert);
  INFO(v.reason);
  CHECK(v.ok);
}

}  // namespace

TEST_CASE("trivial endpoints certify an empty walk") {
  Spg s = gen_hypercube(2);
  auto r = certified_path(s, 2, 2);
  REQUIRE(r.ok());
  CHECK(r.certified->path.ids == std::vector<ClassId>{2});
  CHECK(r.certified->path.length() == 0);
  CHECK(r.certified->cert.root.kind == CertCase::BaseTrivial);
  CHECK(to_text(r.certified->cert) == "base_trivial 2 4 - - - 0\n");
  check_verifies(s, r);
}

TEST_CASE("low dimension goes through plain search") {
  Spg s = gen_hypercube(2);
  auto r = certified_path(s, 0, 3);
  REQUIRE(r.ok());
  CHECK(r.certified->path.ids == std::vector<ClassId>{0, 1, 3});
  CHECK(r.certified->cert.root.kind == CertCase::BaseBfs);
  CHECK(r.certified->cert.root.segment_lengths == std::vector<int>{2});
  check_verifies(s, r);

  Spg cube = gen_hypercube(3);  // eight classes: still the size base case
  r = certified_path(cube, 0, 7);
  REQUIRE(r.ok());
  CHECK(r.certified->path.ids == std::vector<ClassId>{0, 1, 3, 7});
  CHECK(to_text(r.certified->cert) == "base_bfs 3 6 - - - 3\n");
  check_verifies(cube, r);
}

TEST_CASE("wide graphs use the shared-symbol pigeonhole") {
  Spg s = gen_hypercube(4);
  auto r = certified_path(s, 0, 15);
  REQUIRE(r.ok());
  const CertNode& root = r.certified->cert.root;
  CHECK(root.kind == CertCase::Pigeonhole);
  CHECK(root.d == 4);
  CHECK(root.n_eff == 8);
  CHECK(root.chosen_symbol == Symbol{1});
  CHECK(root.radii == std::pair{0, 0});
  CHECK(root.segment_lengths == std::vector<int>{0, 3, 1});
  REQUIRE(root.child.size() == 1);
  CHECK(root.child[0].kind == CertCase::BaseBfs);
  CHECK(root.child[0].d == 3);
  CHECK(root.child[0].n_eff == 6);
  CHECK(r.certified->path.ids == std::vector<ClassId>{0, 2, 6, 14, 15});
  CHECK(r.certified->path.length() == distance(s, 0, 15));
  CHECK(to_text(r.certified->cert) ==
        "pigeonhole 4 8 1 0 0 0,3,1\n"
        "  base_bfs 3 6 - - - 3\n");
  check_verifies(s, r);
}

TEST_CASE("few symbols force a facet move") {
  Spg s = johnson53();
  auto r = certified_path(s, 0, 9);  // {123} to {345}
  REQUIRE(r.ok());
  const CertNode& root = r.certified->cert.root;
  CHECK(root.kind == CertCase::FacetMove);
  CHECK(root.d == 3);
  CHECK(root.n_eff == 5);
  CHECK(root.chosen_symbol == Symbol{3});
  CHECK(root.segment_lengths == std::vector<int>{2});
  REQUIRE(root.child.size() == 1);
  CHECK(root.child[0].kind == CertCase::BaseBfs);
  CHECK(root.child[0].d == 2);
  CHECK(root.child[0].n_eff == 4);
  CHECK(r.certified->path.ids == std::vector<ClassId>{0, 3, 9});
  check_verifies(s, r);
}

TEST_CASE("a disconnected restriction reports where it got stuck") {
  Spg s = johnson53(true);
  auto r = certified_path(s, 0, 9);
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.stuck.has_value());
  CHECK(r.stuck->f == std::vector<Symbol>{3});
  CHECK(r.stuck->component_a == std::vector<ClassId>{0, 3, 4, 6, 7});
  CHECK(r.stuck->component_b == std::vector<ClassId>{9});
}

TEST_CASE("verification rejects tampered certificates") {
  Spg s = gen_hypercube(4);
  auto r = certified_path(s, 0, 15);
  REQUIRE(r.ok());
  const Path& path = r.certified->path;
  const PathCertificate& cert = r.certified->cert;
  REQUIRE(verify_certificate(s, path, cert).ok);

  SECTION("mutated chosen symbol") {
    auto bad = cert;
    bad.root.chosen_symbol = 2;
    CHECK_FALSE(verify_certificate(s, path, bad).ok);
  }
  SECTION("path through a non-edge") {
    auto bad_path = path;
    bad_path.ids[1] = 3;  // 0-3 differ in two coordinates
    CHECK_FALSE(verify_certificate(s, bad_path, cert).ok);
  }
  SECTION("path id outside the graph") {
    auto bad_path = path;
    bad_path.ids[1] = 99;
    CHECK_FALSE(verify_certificate(s, bad_path, cert).ok);
  }
  SECTION("wrong case at the root") {
    auto bad = cert;
    bad.root.kind = CertCase::FacetMove;
    CHECK_FALSE(verify_certificate(s, path, bad).ok);
    bad.root.kind = CertCase::BaseBfs;  // outside the base thresholds
    CHECK_FALSE(verify_certificate(s, path, bad).ok);
  }
  SECTION("wrong case below the root") {
    auto bad = cert;
    bad.root.child[0].kind = CertCase::BaseTrivial;
    CHECK_FALSE(verify_certificate(s, path, bad).ok);
  }
  SECTION("segment lengths that do not add up") {
    auto bad = cert;
    bad.root.segment_lengths = {0, 3, 0};
    CHECK_FALSE(verify_certificate(s, path, bad).ok);
  }
  SECTION("wrong effective symbol count") {
    auto bad = cert;
    bad.root.n_eff = 7;
    auto v = verify_certificate(s, path, bad);
    CHECK_FALSE(v.ok);
    CHECK(v.reason == "certificate n_eff does not match the derived graph");
  }
  SECTION("certificate replayed against a different graph") {
    CHECK_FALSE(verify_certificate(gen_hypercube(3), path, cert).ok);
  }
}

TEST_CASE("verification rejects a non-shortest base path") {
  Spg s = gen_hypercube(3);
  Path detour{{0, 1, 3, 2}};
  CertNode node;
  node.kind = CertCase::BaseBfs;
  node.d = 3;
  node.n_eff = 6;
  node.segment_lengths = {3};
  auto v = verify_certificate(s, detour, PathCertificate{node});
  CHECK_FALSE(v.ok);
  CHECK(v.reason == "path is not a shortest path");
}

TEST_CASE("certificates round-trip through text") {
  Spg s = gen_hypercube(4);
  auto r = certified_path(s, 0, 15);
  REQUIRE(r.ok());
  auto parsed = parse_certificate_text(to_text(r.certified->cert));
  REQUIRE(parsed.ok());
  CHECK(*parsed.cert == r.certified->cert);

  auto j = certified_path(johnson53(), 0, 9);
  REQUIRE(j.ok());
  parsed = parse_certificate_text(to_text(j.certified->cert));
  REQUIRE(parsed.ok());
  CHECK(*parsed.cert == j.certified->cert);
}

TEST_CASE("certificate parser rejects corrupt text") {
  auto p = parse_certificate_text("zigzag 3 6 - - - 3\n");
  CHECK_FALSE(p.ok());
  CHECK(p.error == "unknown certificate case 'zigzag'");

  p = parse_certificate_text(" base_bfs 3 6 - - - 3\n");
  CHECK(p.error == "odd indentation");

  p = parse_certificate_text("base_bfs 3 6 - - -\n");
  CHECK(p.error == "expected 7 fields per certificate line");

  p = parse_certificate_text("base_bfs x 6 - - - 3\n");
  CHECK(p.error == "bad d or n_eff field");

  p = parse_certificate_text("base_bfs 3 6 - 0 - 3\n");
  CHECK(p.error == "radii must both be present or absent");

  p = parse_certificate_text("base_bfs 3 6 - - - 3,\n");
  CHECK(p.error == "bad segment length");

  p = parse_certificate_text("base_bfs 3 6 - - - 3\nbase_bfs 3 6 - - - 3\n");
  CHECK(p.error == "multiple certificate roots");

  p = parse_certificate_text("pigeonhole 4 8 1 0 0 0,3,1\n    base_bfs 3 6 - - - 3\n");
  CHECK(p.error == "certificate nodes must form a single chain");

  p = parse_certificate_text("\n");
  CHECK(p.error == "empty certificate");
}

TEST_CASE("dimension one walks the line") {
  Spg s = support::make(1, 5, {{{1}}, {{2}}, {{3}}, {{4}}, {{5}}},
                        {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  auto r = certified_path(s, 0, 4);
  REQUIRE(r.ok());
  // Length meets the bound (n_eff - d)^(1 + log2 d) = 4 exactly.
  CHECK(r.certified->path.length() == 4);
  CHECK(r.certified->cert.root.kind == CertCase::BaseBfs);
  check_verifies(s, r);
}

TEST_CASE("simplices certify length-one paths in every dimension") {
  for (int d = 1; d <= 8; ++d) {
    Spg s = gen_simplex(d);
    for (ClassId u = 0; u <= d; ++u)
      for (ClassId v = 0; v <= d; ++v) {
        auto r = certified_path(s, u, v);
        REQUIRE(r.ok());
        CHECK(r.certified->path.length() == (u == v ? 0 : 1));
        auto check = verify_certificate(s, r.certified->path, r.certified->cert);
        INFO(check.reason);
        CHECK(check.ok);
      }
  }
}

TEST_CASE("certified paths stay within the bound on random graphs") {
  std::mt19937_64 rng(23);
  for (auto [d, n] : {std::pair{2, 5}, {3, 6}, {3, 7}, {4, 8}}) {
    for (int trial = 0; trial < 3; ++trial) {
      Spg s = support::random_dr_spg(rng, d, n);
      const int n_eff = static_cast<int>(s.support().size());
      const double bound = n_eff <= d
                               ? 0.0
                               : std::pow(static_cast<double>(n_eff - d),
                                          1 + std::log2(static_cast<double>(d)));
      for (const auto& cu : s.classes)
        for (const auto& cv : s.classes) {
          auto r = certified_path(s, cu.id, cv.id);
          REQUIRE(r.ok());
          CHECK(r.certified->path.length() >= distance(s, cu.id, cv.id));
          CHECK(static_cast<double>(r.certified->path.length()) <=
                bound + 1e-9 * std::max(1.0, bound));
          auto check = verify_certificate(s, r.certified->path, r.certified->cert);
          INFO(check.reason);
          CHECK(check.ok);
        }
    }
  }
}

TEST_CASE("construction is deterministic") {
  Spg s = gen_hypercube(4);
  auto a = certified_path(s, 3, 12);
  auto b = certified_path(s, 3, 12);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(a.certified->path == b.certified->path);
  CHECK(a.certified->cert == b.certified->cert);
}

TEST_CASE("unknown endpoints are rejected") {
  Spg s = gen_hypercube(2);
  CHECK_THROWS_AS(certified_path(s, 0, 9), InvalidArgument);
  CHECK_THROWS_AS(certified_path(s, -1, 0), InvalidArgument);
}
