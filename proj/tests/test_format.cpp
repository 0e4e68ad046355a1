#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "spg/format.hpp"
#include "support.hpp"

using namespace spg;

namespace {

Spg square() {
  return support::make(2, 4, {{{1, 2}}, {{2, 3}}, {{1, 4}}, {{3, 4}}},
                       {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

bool has_error_on_line(const ParseResult& r, int line) {
  for (const auto& e : r.errors)
    if (e.line == line) return true;
  return false;
}

std::string first_error(const ParseResult& r) {
  REQUIRE_FALSE(r.errors.empty());
  return r.errors[0].message;
}

}  // namespace

TEST_CASE("to_spg_text emits the canonical layout") {
  CHECK(to_spg_text(square()) ==
        "spg 2 4\n"
        "vertex 0: 1,2\n"
        "vertex 1: 2,3\n"
        "vertex 2: 1,4\n"
        "vertex 3: 3,4\n"
        "edge 0 1\n"
        "edge 0 2\n"
        "edge 1 3\n"
        "edge 2 3\n");

  Spg multi = support::make(2, 4, {{{1, 2}, {1, 3}}, {{1, 4}}}, {{0, 1}});
  CHECK(to_spg_text(multi) ==
        "spg 2 4\n"
        "vertex 0: 1,2; 1,3\n"
        "vertex 1: 1,4\n"
        "edge 0 1\n");
}

TEST_CASE("parse_spg_text round-trips the writer") {
  Spg s = square();
  auto parsed = parse_spg_text(to_spg_text(s));
  REQUIRE(parsed.ok());
  CHECK(*parsed.build.spg == s);

  Spg multi = support::make(2, 5, {{{1, 2}, {2, 5}}, {{1, 3}, {3, 4}}}, {{0, 1}});
  parsed = parse_spg_text(to_spg_text(multi));
  REQUIRE(parsed.ok());
  CHECK(*parsed.build.spg == multi);
}

TEST_CASE("parse_spg_text tolerates comments, blanks, and loose spacing") {
  auto parsed = parse_spg_text(
      "# a 2-of-3 path\n"
      "\n"
      "spg 2 3\n"
      "vertex 0:  1,2   # the left end\n"
      "  vertex 1: 1,3\n"
      "\n"
      "edge  0   1\n");
  REQUIRE(parsed.ok());
  CHECK(*parsed.build.spg ==
        support::make(2, 3, {{{1, 2}}, {{1, 3}}}, {{0, 1}}));
}

TEST_CASE("parse_spg_text accepts a final line without a newline") {
  auto parsed = parse_spg_text("spg 1 2\nvertex 0: 1\nvertex 1: 2\nedge 0 1");
  REQUIRE(parsed.ok());
  CHECK(parsed.build.spg->edges.size() == 1);
}

TEST_CASE("parse_spg_text reports malformed headers") {
  auto parsed = parse_spg_text("spg two 3\n");
  REQUIRE_FALSE(parsed.ok());
  CHECK(has_error_on_line(parsed, 1));
  CHECK(first_error(parsed) == "expected 'spg <d> <n>'");

  parsed = parse_spg_text("spg 2 3\nspg 2 3\n");
  REQUIRE_FALSE(parsed.ok());
  CHECK(first_error(parsed) == "duplicate 'spg' header");

  parsed = parse_spg_text("vertex 0: 1,2\nspg 2 3\n");
  REQUIRE_FALSE(parsed.ok());
  CHECK(first_error(parsed) == "first directive must be 'spg <d> <n>'");

  parsed = parse_spg_text("");
  REQUIRE_FALSE(parsed.ok());
  CHECK(first_error(parsed) == "missing 'spg <d> <n>' header");

  parsed = parse_spg_text("# only a comment\n");
  REQUIRE_FALSE(parsed.ok());
  CHECK(first_error(parsed) == "missing 'spg <d> <n>' header");
}

TEST_CASE("parse_spg_text reports malformed vertex lines") {
  auto bad = [](std::string_view body) {
    return parse_spg_text("spg 2 4\n" + std::string(body) + "\nvertex 9: 1,2\n");
  };

  auto parsed = bad("vertex 0 1,2");
  REQUIRE_FALSE(parsed.ok());
  CHECK(first_error(parsed) == "expected 'vertex <id>: <d-sets>'");

  parsed = bad("vertex -1: 1,2");
  CHECK(first_error(parsed) == "expected a nonnegative vertex id before ':'");

  parsed = bad("vertex x: 1,2");
  CHECK(first_error(parsed) == "expected a nonnegative vertex id before ':'");

  parsed = parse_spg_text("spg 2 4\nvertex 0: 1,2\nvertex 0: 3,4\n");
  CHECK(first_error(parsed) == "duplicate vertex id 0");

  parsed = bad("vertex 0: 1,2; ; 3,4");
  CHECK(first_error(parsed) == "empty d-set in vertex 0");

  parsed = bad("vertex 0: 1,zz");
  CHECK(first_error(parsed) == "bad symbol 'zz' in vertex 0");

  parsed = bad("vertex 0: 1,2,3");
  CHECK(first_error(parsed) == "d-set of size 3 in vertex 0, expected 2");

  parsed = bad("vertex 0: 2,2");
  CHECK(first_error(parsed) == "repeated symbol in a d-set of vertex 0");
}

TEST_CASE("parse_spg_text reports malformed edge and unknown lines") {
  auto parsed = parse_spg_text("spg 2 3\nvertex 0: 1,2\nedge 0\n");
  REQUIRE_FALSE(parsed.ok());
  CHECK(first_error(parsed) == "expected 'edge <a> <b>'");

  parsed = parse_spg_text("spg 2 3\nvertex 0: 1,2\nedge 0 one\n");
  CHECK(first_error(parsed) == "expected 'edge <a> <b>'");

  parsed = parse_spg_text("spg 2 3\nnode 0: 1,2\n");
  CHECK(first_error(parsed) == "unknown directive 'node'");
}

TEST_CASE("parse_spg_text collects every error with its line number") {
  auto parsed = parse_spg_text(
      "spg 2 4\n"
      "vertex 0: 1,2\n"
      "vertex 1: 1,2,3\n"
      "edge zero 1\n"
      "mystery\n");
  REQUIRE(parsed.errors.size() == 3);
  CHECK(has_error_on_line(parsed, 3));
  CHECK(has_error_on_line(parsed, 4));
  CHECK(has_error_on_line(parsed, 5));
}

TEST_CASE("parse_spg_text hands structural problems to the builder") {
  // Clean syntax, disconnected graph: no parse errors, build violations.
  auto parsed = parse_spg_text(
      "spg 2 4\nvertex 0: 1,2\nvertex 1: 3,4\n");
  CHECK(parsed.errors.empty());
  CHECK_FALSE(parsed.ok());
  REQUIRE(parsed.build.violations.size() == 1);
  CHECK(parsed.build.violations[0].kind == ViolationKind::Disconnected);
}

TEST_CASE("parse_spg_text reads from a stream") {
  std::istringstream in(to_spg_text(square()));
  auto parsed = parse_spg_text(in);
  REQUIRE(parsed.ok());
  CHECK(*parsed.build.spg == square());
}
