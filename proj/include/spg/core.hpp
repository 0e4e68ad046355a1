#pragma once

// Subset partition graphs. Vertices ("classes") partition a family of d-sets
// drawn from the symbols 1..n; the graph must be connected. Construction goes
// through build_spg, which either returns a validated Spg or the complete
// list of violations. restrict() and reduce_dimension() implement the two
// structural operations everything else is built on.

#include <cassert>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spg/util.hpp"

namespace spg {

// A set of symbols, stored sorted. Size against the ambient d is checked by
// build_spg, so a DSet may hold any number of symbols until then.
class DSet {
 public:
  DSet() = default;
  explicit DSet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    std::sort(symbols_.begin(), symbols_.end());
  }
  DSet(std::initializer_list<Symbol> symbols)
      : DSet(std::vector<Symbol>(symbols)) {}

  const std::vector<Symbol>& symbols() const { return symbols_; }
  int size() const { return static_cast<int>(symbols_.size()); }

  bool contains(Symbol s) const {
    return std::binary_search(symbols_.begin(), symbols_.end(), s);
  }
  // True when every symbol of f (sorted) occurs in this set.
  bool contains_all(const std::vector<Symbol>& f) const {
    return std::includes(symbols_.begin(), symbols_.end(), f.begin(), f.end());
  }
  bool has_duplicates() const {
    return std::adjacent_find(symbols_.begin(), symbols_.end()) != symbols_.end();
  }
  int intersection_size(const DSet& other) const {
    int count = 0;
    auto it = other.symbols_.begin();
    for (Symbol s : symbols_) {
      while (it != other.symbols_.end() && *it < s) ++it;
      if (it != other.symbols_.end() && *it == s) ++count;
    }
    return count;
  }
  std::vector<Symbol> intersection(const DSet& other) const {
    std::vector<Symbol> out;
    std::set_intersection(symbols_.begin(), symbols_.end(),
                          other.symbols_.begin(), other.symbols_.end(),
                          std::back_inserter(out));
    return out;
  }

  auto operator<=>(const DSet&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

struct VertexClass {
  ClassId id = 0;
  std::vector<DSet> dsets;  // sorted, duplicate-free after build_spg

  auto operator<=>(const VertexClass&) const = default;
};

using Edge = std::pair<ClassId, ClassId>;

struct Spg {
  int d = 0;
  int n = 0;
  std::vector<VertexClass> classes;  // sorted by id, ids unique
  std::vector<Edge> edges;           // normalized a < b, sorted, unique

  bool operator==(const Spg&) const = default;

  // Index into classes, or -1 when the id is absent.
  int class_index(ClassId id) const {
    auto it = std::lower_bound(
        classes.begin(), classes.end(), id,
        [](const VertexClass& c, ClassId v) { return c.id < v; });
    if (it == classes.end() || it->id != id) return -1;
    return static_cast<int>(it - classes.begin());
  }
  const VertexClass* find_class(ClassId id) const {
    int i = class_index(id);
    return i < 0 ? nullptr : &classes[i];
  }
  bool has_edge(ClassId a, ClassId b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges.begin(), edges.end(), Edge{a, b});
  }

  std::size_t family_size() const {
    std::size_t total = 0;
    for (const auto& c : classes) total += c.dsets.size();
    return total;
  }
  // Distinct symbols actually used, sorted ascending.
  std::vector<Symbol> support() const {
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& c : classes)
      for (const auto& a : c.dsets)
        for (Symbol s : a.symbols()) seen[static_cast<std::size_t>(s)] = 1;
    std::vector<Symbol> out;
    for (Symbol s = 1; s <= n; ++s)
      if (seen[static_cast<std::size_t>(s)]) out.push_back(s);
    return out;
  }
  // All (d-set, owning class) pairs, sorted by d-set.
  std::vector<std::pair<DSet, ClassId>> sorted_members() const {
    std::vector<std::pair<DSet, ClassId>> out;
    out.reserve(family_size());
    for (const auto& c : classes)
      for (const auto& a : c.dsets) out.emplace_back(a, c.id);
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

// Connected components over vertices 0..count-1; each component sorted,
// components ordered by smallest vertex.
inline std::vector<std::vector<int>> components(
    int count, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(static_cast<std::size_t>(count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
  }
  std::map<int, std::vector<int>> by_root;
  for (int v = 0; v < count; ++v) by_root[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  out.reserve(by_root.size());
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  return out;
}

}  // namespace detail

enum class ViolationKind {
  InvalidParams,       // d < 1, n < d, or no classes at all
  WrongArity,          // a d-set whose size differs from d (or repeats a symbol)
  SymbolOutOfRange,    // a symbol outside 1..n
  EmptyClass,          // a class with no d-sets
  DuplicateClassId,    // two classes share an id
  OverlappingClasses,  // a d-set assigned to two classes
  BadEdge,             // self-loop or endpoint that is not a class id
  Disconnected,        // the class graph is not connected
};

inline const char* violation_kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::InvalidParams: return "invalid_params";
    case ViolationKind::WrongArity: return "wrong_arity";
    case ViolationKind::SymbolOutOfRange: return "symbol_out_of_range";
    case ViolationKind::EmptyClass: return "empty_class";
    case ViolationKind::DuplicateClassId: return "duplicate_class_id";
    case ViolationKind::OverlappingClasses: return "overlapping_classes";
    case ViolationKind::BadEdge: return "bad_edge";
    case ViolationKind::Disconnected: return "disconnected";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::string message;
  // Structured witness; which fields are meaningful depends on kind.
  DSet dset;                      // WrongArity, SymbolOutOfRange, OverlappingClasses
  std::vector<ClassId> ids;      // involved classes / first component
  std::vector<ClassId> ids_b;    // second component for Disconnected
  Edge edge{-1, -1};             // BadEdge
};

struct BuildResult {
  std::optional<Spg> spg;
  std::vector<Violation> violations;
  bool ok() const { return spg.has_value(); }
};

// Validates and normalizes. Returns either a well-formed Spg or the complete
// list of violations; never throws on bad data.
inline BuildResult build_spg(int d, int n, std::vector<VertexClass> classes,
                             std::vector<Edge> edges) {
  BuildResult result;
  auto add = [&result](Violation v) { result.violations.push_back(std::move(v)); };

  if (d < 1 || n < d) {
    Violation v{};
    v.kind = ViolationKind::InvalidParams;
    v.message = "require 1 <= d <= n, got d=" + std::to_string(d) +
                " n=" + std::to_string(n);
    add(std::move(v));
  }
  if (classes.empty()) {
    Violation v{};
    v.kind = ViolationKind::InvalidParams;
    v.message = "at least one class required";
    add(std::move(v));
  }

  std::sort(classes.begin(), classes.end(),
            [](const VertexClass& a, const VertexClass& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < classes.size(); ++i) {
    if (classes[i].id == classes[i - 1].id &&
        (i == 1 || classes[i - 1].id != classes[i - 2].id)) {
      Violation v{};
      v.kind = ViolationKind::DuplicateClassId;
      v.message = "class id " + std::to_string(classes[i].id) + " appears twice";
      v.ids = {classes[i].id};
      add(std::move(v));
    }
  }

  for (auto& c : classes) {
    std::sort(c.dsets.begin(), c.dsets.end());
    c.dsets.erase(std::unique(c.dsets.begin(), c.dsets.end()), c.dsets.end());
    if (c.dsets.empty()) {
      Violation v{};
      v.kind = ViolationKind::EmptyClass;
      v.message = "class " + std::to_string(c.id) + " has no d-sets";
      v.ids = {c.id};
      add(std::move(v));
      continue;
    }
    for (const auto& a : c.dsets) {
      if (a.size() != d || a.has_duplicates()) {
        Violation v{};
        v.kind = ViolationKind::WrongArity;
        v.message = "class " + std::to_string(c.id) + " holds a set of " +
                    std::to_string(a.size()) + " symbols, expected " + std::to_string(d);
        v.dset = a;
        v.ids = {c.id};
        add(std::move(v));
      }
      for (Symbol s : a.symbols()) {
        if (s < 1 || s > n) {
          Violation v{};
          v.kind = ViolationKind::SymbolOutOfRange;
          v.message = "symbol " + std::to_string(s) + " outside 1.." + std::to_string(n) +
                      " in class " + std::to_string(c.id);
          v.dset = a;
          v.ids = {c.id};
          add(std::move(v));
          break;
        }
      }
    }
  }

  {
    std::map<DSet, ClassId> owner;
    std::set<DSet> reported;
    for (const auto& c : classes) {
      for (const auto& a : c.dsets) {
        auto [it, inserted] = owner.emplace(a, c.id);
        if (!inserted && it->second != c.id && reported.insert(a).second) {
          Violation v{};
          v.kind = ViolationKind::OverlappingClasses;
          v.message = "a d-set belongs to classes " + std::to_string(it->second) +
                      " and " + std::to_string(c.id);
          v.dset = a;
          v.ids = {it->second, c.id};
          add(std::move(v));
        }
      }
    }
  }

  std::vector<Edge> good_edges;
  for (auto [a, b] : edges) {
    if (a > b) std::swap(a, b);
    bool known_a = std::any_of(classes.begin(), classes.end(),
                               [a](const VertexClass& c) { return c.id == a; });
    bool known_b = std::any_of(classes.begin(), classes.end(),
                               [b](const VertexClass& c) { return c.id == b; });
    if (a == b || !known_a || !known_b) {
      Violation v{};
      v.kind = ViolationKind::BadEdge;
      v.message = a == b ? "self-loop on class " + std::to_string(a)
                         : "edge " + std::to_string(a) + "-" + std::to_string(b) +
                               " references an unknown class";
      v.edge = {a, b};
      add(std::move(v));
    } else {
      good_edges.emplace_back(a, b);
    }
  }
  std::sort(good_edges.begin(), good_edges.end());
  good_edges.erase(std::unique(good_edges.begin(), good_edges.end()), good_edges.end());

  if (!classes.empty()) {
    std::map<ClassId, int> index;
    for (std::size_t i = 0; i < classes.size(); ++i)
      index[classes[i].id] = static_cast<int>(i);
    std::vector<std::pair<int, int>> idx_edges;
    idx_edges.reserve(good_edges.size());
    for (auto [a, b] : good_edges) idx_edges.emplace_back(index[a], index[b]);
    auto comps = detail::components(static_cast<int>(classes.size()), idx_edges);
    if (comps.size() > 1) {
      Violation v{};
      v.kind = ViolationKind::Disconnected;
      v.message = "class graph splits into " + std::to_string(comps.size()) +
                  " components";
      for (int i : comps[0]) v.ids.push_back(classes[static_cast<std::size_t>(i)].id);
      for (int i : comps[1]) v.ids_b.push_back(classes[static_cast<std::size_t>(i)].id);
      add(std::move(v));
    }
  }

  if (result.violations.empty()) {
    result.spg = Spg{d, n, std::move(classes), std::move(good_edges)};
  }
  return result;
}

// Restriction to a symbol set F: keep the d-sets containing all of F, keep
// the classes with at least one survivor, keep the edges between survivors.
// Classes keep their ids; origin records F (union over chained restrictions).
struct RestrictedGraph {
  int d = 0;
  int n = 0;
  std::vector<Symbol> origin;  // sorted, duplicate-free
  std::vector<VertexClass> classes;
  std::vector<Edge> edges;

  bool operator==(const RestrictedGraph&) const = default;
  bool empty() const { return classes.empty(); }
};

namespace detail {

inline RestrictedGraph restrict_impl(int d, int n, std::vector<Symbol> origin,
                                     const std::vector<VertexClass>& classes,
                                     const std::vector<Edge>& edges,
                                     const std::vector<Symbol>& f) {
  for (Symbol s : f)
    if (s < 1 || s > n)
      throw InvalidArgument("restriction symbol " + std::to_string(s) +
                            " outside 1.." + std::to_string(n));
  std::vector<Symbol> fs(f);
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());

  RestrictedGraph out;
  out.d = d;
  out.n = n;
  origin.insert(origin.end(), fs.begin(), fs.end());
  std::sort(origin.begin(), origin.end());
  origin.erase(std::unique(origin.begin(), origin.end()), origin.end());
  out.origin = std::move(origin);

  for (const auto& c : classes) {
    VertexClass survivor{c.id, {}};
    for (const auto& a : c.dsets)
      if (a.contains_all(out.origin)) survivor.dsets.push_back(a);
    if (!survivor.dsets.empty()) out.classes.push_back(std::move(survivor));
  }
  std::set<ClassId> alive;
  for (const auto& c : out.classes) alive.insert(c.id);
  for (auto e : edges)
    if (alive.count(e.first) && alive.count(e.second)) out.edges.push_back(e);
  return out;
}

}  // namespace detail

inline RestrictedGraph restrict(const Spg& s, const std::vector<Symbol>& f) {
  return detail::restrict_impl(s.d, s.n, {}, s.classes, s.edges, f);
}

inline RestrictedGraph restrict(const RestrictedGraph& g, const std::vector<Symbol>& f) {
  return detail::restrict_impl(g.d, g.n, g.origin, g.classes, g.edges, f);
}

enum class ReduceError {
  None,
  EmptyRestriction,         // no class survived the restriction
  DimensionUnderflow,       // |F| >= d leaves nothing to reduce to
  DisconnectedRestriction,  // survivors split into several components
};

struct ReduceResult {
  std::optional<Spg> spg;
  // new_to_old[i] is the original symbol renamed to i+1.
  std::vector<Symbol> new_to_old;
  ReduceError error = ReduceError::None;
  // For DisconnectedRestriction: two of the components, by class id.
  std::vector<ClassId> component_a, component_b;
  bool ok() const { return spg.has_value(); }
};

// Turns a restriction to F into a proper Spg of dimension d-|F|: strips F
// from every surviving d-set and relabels the remaining symbol range
// 1..n minus F onto 1..n-|F| preserving order. Class ids are kept.
inline ReduceResult reduce_dimension(const RestrictedGraph& g) {
  ReduceResult out;
  if (g.classes.empty()) {
    out.error = ReduceError::EmptyRestriction;
    return out;
  }
  int new_d = g.d - static_cast<int>(g.origin.size());
  if (new_d < 1) {
    out.error = ReduceError::DimensionUnderflow;
    return out;
  }

  std::map<ClassId, int> index;
  for (std::size_t i = 0; i < g.classes.size(); ++i)
    index[g.classes[i].id] = static_cast<int>(i);
  std::vector<std::pair<int, int>> idx_edges;
  for (auto [a, b] : g.edges) idx_edges.emplace_back(index[a], index[b]);
  auto comps = detail::components(static_cast<int>(g.classes.size()), idx_edges);
  if (comps.size() > 1) {
    out.error = ReduceError::DisconnectedRestriction;
    for (int i : comps[0]) out.component_a.push_back(g.classes[static_cast<std::size_t>(i)].id);
    for (int i : comps[1]) out.component_b.push_back(g.classes[static_cast<std::size_t>(i)].id);
    return out;
  }

  std::vector<Symbol> old_to_new(static_cast<std::size_t>(g.n) + 1, 0);
  for (Symbol s : g.origin) old_to_new[static_cast<std::size_t>(s)] = -1;
  Symbol next = 1;
  for (Symbol s = 1; s <= g.n; ++s) {
    if (old_to_new[static_cast<std::size_t>(s)] == 0) {
      old_to_new[static_cast<std::size_t>(s)] = next++;
      out.new_to_old.push_back(s);
    }
  }

  std::vector<VertexClass> classes;
  classes.reserve(g.classes.size());
  for (const auto& c : g.classes) {
    VertexClass nc{c.id, {}};
    for (const auto& a : c.dsets) {
      std::vector<Symbol> reduced;
      reduced.reserve(static_cast<std::size_t>(new_d));
      for (Symbol s : a.symbols()) {
        Symbol m = old_to_new[static_cast<std::size_t>(s)];
        if (m > 0) reduced.push_back(m);
      }
      nc.dsets.emplace_back(std::move(reduced));
    }
    classes.push_back(std::move(nc));
  }

  auto built = build_spg(new_d, g.n - static_cast<int>(g.origin.size()),
                         std::move(classes), g.edges);
  assert(built.ok());
  out.spg = std::move(built.spg);
  return out;
}

// Applies a symbol permutation: perm[old-1] = new, perm must permute 1..n.
inline Spg relabel_symbols(const Spg& s, const std::vector<Symbol>& perm) {
  if (static_cast<int>(perm.size()) != s.n)
    throw InvalidArgument("permutation size does not match n");
  std::vector<char> seen(static_cast<std::size_t>(s.n) + 1, 0);
  for (Symbol p : perm) {
    if (p < 1 || p > s.n || seen[static_cast<std::size_t>(p)])
      throw InvalidArgument("not a permutation of 1..n");
    seen[static_cast<std::size_t>(p)] = 1;
  }
  std::vector<VertexClass> classes;
  classes.reserve(s.classes.size());
  for (const auto& c : s.classes) {
    VertexClass nc{c.id, {}};
    for (const auto& a : c.dsets) {
      std::vector<Symbol> mapped;
      mapped.reserve(a.symbols().size());
      for (Symbol x : a.symbols()) mapped.push_back(perm[static_cast<std::size_t>(x) - 1]);
      nc.dsets.emplace_back(std::move(mapped));
    }
    classes.push_back(std::move(nc));
  }
  auto built = build_spg(s.d, s.n, std::move(classes), s.edges);
  assert(built.ok());
  return *built.spg;
}

namespace detail {

// Encoding with ids normalized away: classes sorted by their d-set lists and
// renumbered in that order.
inline std::string normalized_encoding(const Spg& s) {
  std::vector<std::pair<std::vector<DSet>, ClassId>> keyed;
  keyed.reserve(s.classes.size());
  for (const auto& c : s.classes) {
    auto ds = c.dsets;
    std::sort(ds.begin(), ds.end());
    keyed.emplace_back(std::move(ds), c.id);
  }
  std::sort(keyed.begin(), keyed.end());
  std::map<ClassId, int> renum;
  for (std::size_t i = 0; i < keyed.size(); ++i)
    renum[keyed[i].second] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : s.edges) {
    int x = renum[a], y = renum[b];
    if (x > y) std::swap(x, y);
    edges.emplace_back(x, y);
  }
  std::sort(edges.begin(), edges.end());

  std::ostringstream os;
  os << s.d << ' ' << s.n << '\n';
  for (const auto& [ds, id] : keyed) {
    os << 'c';
    for (const auto& a : ds) {
      os << ' ';
      const auto& sy = a.symbols();
      for (std::size_t i = 0; i < sy.size(); ++i) os << (i ? "," : "") << sy[i];
    }
    os << '\n';
  }
  for (auto [a, b] : edges) os << 'e' << ' ' << a << ' ' << b << '\n';
  return os.str();
}

}  // namespace detail

// Minimum normalized encoding over all symbol relabelings; two graphs are
// equal up to relabeling iff their encodings match. Factorial in n.
inline std::string canonical_encoding(const Spg& s) {
  if (s.n > 8)
    throw InvalidArgument("canonical_encoding is factorial in n; n <= 8 required");
  std::vector<Symbol> perm(static_cast<std::size_t>(s.n));
  std::iota(perm.begin(), perm.end(), 1);
  std::string best;
  do {
    // Lightweight relabel: permute symbols without re-running validation.
    Spg t;
    t.d = s.d;
    t.n = s.n;
    t.edges = s.edges;
    t.classes.reserve(s.classes.size());
    for (const auto& c : s.classes) {
      VertexClass nc{c.id, {}};
      for (const auto& a : c.dsets) {
        std::vector<Symbol> mapped;
        mapped.reserve(a.symbols().size());
        for (Symbol x : a.symbols())
          mapped.push_back(perm[static_cast<std::size_t>(x) - 1]);
        nc.dsets.emplace_back(std::move(mapped));
      }
      t.classes.push_back(std::move(nc));
    }
    std::string enc = detail::normalized_encoding(t);
    if (best.empty() || enc < best) best = std::move(enc);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace spg
