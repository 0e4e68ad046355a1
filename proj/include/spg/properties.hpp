#pragma once

// The four structural properties. Each check returns the lexicographically
// smallest witness when it fails: candidate symbol sets F are compared as
// sorted sequences ({1} < {1,3} < {2}), d-set pairs and class pairs likewise.

#include <array>
#include <bit>
#include <variant>

#include "spg/core.hpp"

namespace spg {

enum class Property {
  DimensionReduction,
  Adjacency,
  StrongAdjacency,
  EndpointCount,
};

inline const char* property_name(Property p) {
  switch (p) {
    case Property::DimensionReduction: return "dimension_reduction";
    case Property::Adjacency: return "adjacency";
    case Property::StrongAdjacency: return "strong_adjacency";
    case Property::EndpointCount: return "endpoint_count";
  }
  return "unknown";
}

// Restriction to F falls apart: the surviving classes split into components.
struct DrWitness {
  std::vector<Symbol> f;
  std::vector<ClassId> component_a, component_b;
};

// Two d-sets meeting in d-1 symbols whose classes are distinct and not joined.
struct AdjacencyWitness {
  DSet a, b;
  ClassId class_a = 0, class_b = 0;
};

// An edge (or, in the literal all-pairs reading, a class pair) with no
// d-sets meeting in d-1 symbols across it.
struct EdgeWitness {
  ClassId a = 0, b = 0;
  bool vertex_pair = false;
};

// A (d-1)-set contained in d-sets of more than two classes.
struct EndpointWitness {
  std::vector<Symbol> f;
  std::vector<ClassId> ids;
};

using PropertyWitness =
    std::variant<DrWitness, AdjacencyWitness, EdgeWitness, EndpointWitness>;

struct PropertyReport {
  Property property{};
  bool holds = true;
  std::optional<PropertyWitness> witness;
};

namespace detail {

// Subsets of family members with the given size bounds, deduplicated and in
// lexicographic order.
inline std::vector<std::vector<Symbol>> candidate_symbol_sets(const Spg& s,
                                                              int min_size,
                                                              int max_size) {
  std::set<std::vector<Symbol>> out;
  for (const auto& c : s.classes) {
    for (const auto& a : c.dsets) {
      const auto& sy = a.symbols();
      int m = static_cast<int>(sy.size());
      for (uint64_t mask = 0; mask < (1ull << m); ++mask) {
        int size = std::popcount(mask);
        if (size < min_size || size > max_size) continue;
        std::vector<Symbol> f;
        f.reserve(static_cast<std::size_t>(size));
        for (int i = 0; i < m; ++i)
          if (mask & (1ull << i)) f.push_back(sy[static_cast<std::size_t>(i)]);
        out.insert(std::move(f));
      }
    }
  }
  return {out.begin(), out.end()};
}

inline std::vector<std::vector<ClassId>> restriction_components(
    const RestrictedGraph& g) {
  std::map<ClassId, int> index;
  for (std::size_t i = 0; i < g.classes.size(); ++i)
    index[g.classes[i].id] = static_cast<int>(i);
  std::vector<std::pair<int, int>> idx_edges;
  idx_edges.reserve(g.edges.size());
  for (auto [a, b] : g.edges) idx_edges.emplace_back(index[a], index[b]);
  auto comps = components(static_cast<int>(g.classes.size()), idx_edges);
  std::vector<std::vector<ClassId>> out;
  out.reserve(comps.size());
  for (const auto& comp : comps) {
    std::vector<ClassId> ids;
    ids.reserve(comp.size());
    for (int i : comp) ids.push_back(g.classes[static_cast<std::size_t>(i)].id);
    out.push_back(std::move(ids));
  }
  return out;
}

}  // namespace detail

// Every nonempty restriction G_F with |F| <= d stays connected. Empty
// restrictions are vacuous. F ranges over subsets of family members, which
// covers every F with a nonempty restriction.
inline PropertyReport check_dimension_reduction(const Spg& s) {
  PropertyReport report{Property::DimensionReduction, true, {}};
  for (const auto& f : detail::candidate_symbol_sets(s, 0, s.d)) {
    auto g = restrict(s, f);
    if (g.classes.empty()) continue;
    auto comps = detail::restriction_components(g);
    if (comps.size() > 1) {
      report.holds = false;
      report.witness = DrWitness{f, comps[0], comps[1]};
      return report;
    }
  }
  return report;
}

// d-sets meeting in d-1 symbols sit in the same class or in joined classes.
inline PropertyReport check_adjacency(const Spg& s) {
  PropertyReport report{Property::Adjacency, true, {}};
  auto members = s.sorted_members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (members[i].first.intersection_size(members[j].first) != s.d - 1) continue;
      ClassId ca = members[i].second, cb = members[j].second;
      if (ca == cb || s.has_edge(ca, cb)) continue;
      report.holds = false;
      report.witness =
          AdjacencyWitness{members[i].first, members[j].first, ca, cb};
      return report;
    }
  }
  return report;
}

// Adjacency plus the converse direction. By default every edge must be
// justified by d-sets meeting in d-1 symbols; the literal_all_pairs flag
// demands that of every class pair instead (a strictly stronger reading that
// already fails for hypercubes of dimension 2 and up).
inline PropertyReport check_strong_adjacency(const Spg& s,
                                             bool literal_all_pairs = false) {
  PropertyReport report{Property::StrongAdjacency, true, {}};
  auto base = check_adjacency(s);
  if (!base.holds) {
    report.holds = false;
    report.witness = base.witness;
    return report;
  }
  auto justified = [&s](const VertexClass& va, const VertexClass& vb) {
    for (const auto& a : va.dsets)
      for (const auto& b : vb.dsets)
        if (a.intersection_size(b) == s.d - 1) return true;
    return false;
  };
  if (literal_all_pairs) {
    for (std::size_t i = 0; i < s.classes.size(); ++i) {
      for (std::size_t j = i + 1; j < s.classes.size(); ++j) {
        if (justified(s.classes[i], s.classes[j])) continue;
        report.holds = false;
        report.witness = EdgeWitness{s.classes[i].id, s.classes[j].id, true};
        return report;
      }
    }
  } else {
    for (auto [a, b] : s.edges) {
      if (justified(*s.find_class(a), *s.find_class(b))) continue;
      report.holds = false;
      report.witness = EdgeWitness{a, b, false};
      return report;
    }
  }
  return report;
}

// No (d-1)-set is contained in d-sets of more than two classes. For d = 1
// the only candidate is the empty set, so any three classes fail this.
inline PropertyReport check_endpoint_count(const Spg& s) {
  PropertyReport report{Property::EndpointCount, true, {}};
  for (const auto& f : detail::candidate_symbol_sets(s, s.d - 1, s.d - 1)) {
    std::vector<ClassId> holders;
    for (const auto& c : s.classes) {
      bool holds_f = std::any_of(c.dsets.begin(), c.dsets.end(),
                                 [&f](const DSet& a) { return a.contains_all(f); });
      if (holds_f) holders.push_back(c.id);
    }
    if (holders.size() > 2) {
      report.holds = false;
      report.witness = EndpointWitness{f, holders};
      return report;
    }
  }
  return report;
}

inline std::array<PropertyReport, 4> check_all_properties(
    const Spg& s, bool literal_all_pairs = false) {
  return {check_dimension_reduction(s), check_adjacency(s),
          check_strong_adjacency(s, literal_all_pairs), check_endpoint_count(s)};
}

}  // namespace spg
