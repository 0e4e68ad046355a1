#pragma once

// Reference instances: the hypercube and simplex families, plus construction
// from a simple polytope's vertex-facet incidence list.

#include "spg/format.hpp"

namespace spg {

// Spg of the d-dimensional hypercube: n = 2d symbols in opposite-facet pairs
// (i, i+d); class b (a d-bit mask) picks i+d when bit i-1 is set, else i.
// Edges join masks differing in one bit. Diameter d.
inline Spg gen_hypercube(int d) {
  if (d < 1) throw InvalidArgument("gen_hypercube requires d >= 1");
  if (d > 16) throw ResourceLimit("gen_hypercube supports d <= 16");
  std::vector<VertexClass> classes;
  classes.reserve(1u << d);
  for (uint32_t b = 0; b < (1u << d); ++b) {
    std::vector<Symbol> symbols;
    symbols.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      symbols.push_back(b & (1u << i) ? i + 1 + d : i + 1);
    classes.push_back({static_cast<ClassId>(b), {DSet{symbols}}});
  }
  std::vector<Edge> edges;
  for (uint32_t b = 0; b < (1u << d); ++b)
    for (int i = 0; i < d; ++i)
      if (!(b & (1u << i)))
        edges.emplace_back(static_cast<ClassId>(b), static_cast<ClassId>(b | (1u << i)));
  auto built = build_spg(d, 2 * d, std::move(classes), std::move(edges));
  assert(built.ok());
  return *built.spg;
}

// Spg of the d-simplex: n = d+1 symbols, class i holds the one d-set missing
// symbol i+1, every pair of classes joined. Diameter 1.
inline Spg gen_simplex(int d) {
  if (d < 1) throw InvalidArgument("gen_simplex requires d >= 1");
  if (d > 2000) throw ResourceLimit("gen_simplex supports d <= 2000");
  std::vector<VertexClass> classes;
  classes.reserve(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    std::vector<Symbol> symbols;
    symbols.reserve(static_cast<std::size_t>(d));
    for (Symbol s = 1; s <= d + 1; ++s)
      if (s != i + 1) symbols.push_back(s);
    classes.push_back({i, {DSet{symbols}}});
  }
  std::vector<Edge> edges;
  for (int i = 0; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) edges.emplace_back(i, j);
  auto built = build_spg(d, d + 1, std::move(classes), std::move(edges));
  assert(built.ok());
  return *built.spg;
}

// Vertex-facet incidence of a simple polytope:
//
//   incidence <vertices> <facets> <d>
//   f1 f2 ... fd        one line per vertex, facet indices 1-based
//
struct IncidenceData {
  int vertices = 0, facets = 0, d = 0;
  std::vector<std::vector<int>> rows;
};

struct IncidenceParse {
  std::vector<ParseError> errors;
  IncidenceData data;
  bool ok() const { return errors.empty(); }
};

inline IncidenceParse parse_incidence_text(std::string_view text) {
  IncidenceParse result;
  auto fail = [&result](int line, std::string msg) {
    result.errors.push_back({line, std::move(msg)});
  };

  bool header_seen = false;
  int line_no = 0;
  std::string_view rest = text;
  while (!rest.empty()) {
    std::size_t nl = rest.find('\n');
    std::string_view line = nl == std::string_view::npos ? rest : rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    auto toks = detail::split_ws(line);
    if (!header_seen) {
      int v = 0, f = 0, d = 0;
      if (toks.size() != 4 || toks[0] != "incidence" ||
          !detail::parse_int(toks[1], v) || !detail::parse_int(toks[2], f) ||
          !detail::parse_int(toks[3], d) || v < 1 || f < 1 || d < 1) {
        fail(line_no, "expected 'incidence <vertices> <facets> <d>'");
        return result;
      }
      result.data.vertices = v;
      result.data.facets = f;
      result.data.d = d;
      header_seen = true;
      continue;
    }

    std::vector<int> row;
    bool row_ok = true;
    for (auto tok : toks) {
      int x = 0;
      if (!detail::parse_int(tok, x)) {
        fail(line_no, "bad facet index '" + std::string(tok) + "'");
        row_ok = false;
        break;
      }
      if (x < 1 || x > result.data.facets) {
        fail(line_no, "facet index " + std::to_string(x) + " outside 1.." +
                          std::to_string(result.data.facets));
        row_ok = false;
        break;
      }
      row.push_back(x);
    }
    if (!row_ok) continue;
    if (static_cast<int>(row.size()) != result.data.d) {
      fail(line_no, "vertex line lists " + std::to_string(row.size()) +
                        " facets, expected " + std::to_string(result.data.d));
      continue;
    }
    result.data.rows.push_back(std::move(row));
  }

  if (!header_seen) {
    fail(1, "missing 'incidence <vertices> <facets> <d>' header");
    return result;
  }
  if (static_cast<int>(result.data.rows.size()) != result.data.vertices)
    fail(line_no, "expected " + std::to_string(result.data.vertices) +
                      " vertex lines, found " + std::to_string(result.data.rows.size()));
  return result;
}

enum class IncidenceError { None, NotSimple, DuplicateVertex };

struct FromIncidenceResult {
  std::optional<Spg> spg;
  IncidenceError error = IncidenceError::None;
  std::string message;
  int vertex_a = -1, vertex_b = -1;  // offending rows, 0-based
  std::vector<Violation> violations; // from build_spg (e.g. disconnected)
  bool ok() const { return spg.has_value(); }
};

// Polytope vertices become singleton classes (ids = row order); edges join
// vertices sharing d-1 facets. Facets are the symbols, so n = facet count.
inline FromIncidenceResult from_incidence(const IncidenceData& data) {
  FromIncidenceResult result;
  std::vector<DSet> sets;
  sets.reserve(data.rows.size());
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    DSet ds{std::vector<Symbol>(data.rows[i].begin(), data.rows[i].end())};
    if (ds.has_duplicates()) {
      result.error = IncidenceError::NotSimple;
      result.vertex_a = static_cast<int>(i);
      result.message = "vertex " + std::to_string(i) + " repeats a facet";
      return result;
    }
    sets.push_back(std::move(ds));
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (sets[i] == sets[j]) {
        result.error = IncidenceError::DuplicateVertex;
        result.vertex_a = static_cast<int>(i);
        result.vertex_b = static_cast<int>(j);
        result.message = "vertices " + std::to_string(i) + " and " +
                         std::to_string(j) + " lie on the same facet set";
        return result;
      }
    }
  }

  std::vector<VertexClass> classes;
  classes.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    classes.push_back({static_cast<ClassId>(i), {sets[i]}});
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (sets[i].intersection_size(sets[j]) == data.d - 1)
        edges.emplace_back(static_cast<ClassId>(i), static_cast<ClassId>(j));

  auto built = build_spg(data.d, data.facets, std::move(classes), std::move(edges));
  if (!built.ok()) {
    result.violations = std::move(built.violations);
    result.message = "incidence data does not define a valid graph";
    return result;
  }
  result.spg = std::move(built.spg);
  return result;
}

}  // namespace spg
