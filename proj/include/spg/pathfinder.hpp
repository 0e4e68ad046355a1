#pragma once

// Certified path construction. Between any two classes of a graph with
// dimension reduction, a path is built whose length realizes the
// quasi-polynomial bound (n_eff - d)^(1 + log2 d), n_eff counting the symbols
// actually used. Each recursion step is recorded in a certificate tree that
// an independent verifier replays against the graph alone.
//
// Cases, tried in order:
//   BaseTrivial  u == v.
//   BaseBfs      d <= 2 or at most 8 classes: lexicographically smallest
//                shortest path.
//   FacetMove    n_eff < 2d: any two d-sets meet, restrict to the smallest
//                common symbol of the endpoints' smallest d-sets and recurse
//                one dimension down; the path lifts unchanged.
//   Pigeonhole   n_eff >= 2d: grow balls around u and v until each covers
//                more than floor(n_eff/2) symbols, pick the smallest shared
//                symbol s, walk to the nearest classes holding s, and
//                recurse one dimension down between those.
//
// When a restriction needed by the recursion is disconnected, construction
// stops and reports that F: the input violates dimension reduction.
//
// On graphs violating dimension reduction the recursion either reports such
// an F or still returns a path; in the latter case the certificate's final
// bound check can fail during verification. Graphs with dimension reduction
// never hit either situation.

#include <charconv>
#include <span>

#include "spg/bounds.hpp"
#include "spg/format.hpp"
#include "spg/metrics.hpp"

namespace spg {

struct Path {
  std::vector<ClassId> ids;
  int length() const { return ids.empty() ? 0 : static_cast<int>(ids.size()) - 1; }
  bool operator==(const Path&) const = default;
};

enum class CertCase { BaseTrivial, BaseBfs, FacetMove, Pigeonhole };

inline const char* cert_case_name(CertCase c) {
  switch (c) {
    case CertCase::BaseTrivial: return "base_trivial";
    case CertCase::BaseBfs: return "base_bfs";
    case CertCase::FacetMove: return "facet_move";
    case CertCase::Pigeonhole: return "pigeonhole";
  }
  return "unknown";
}

struct CertNode {
  CertCase kind = CertCase::BaseTrivial;
  int d = 0;
  int n_eff = 0;
  std::optional<Symbol> chosen_symbol;        // FacetMove, Pigeonhole
  std::optional<std::pair<int, int>> radii;   // Pigeonhole: r_u, r_v (>= -1)
  std::vector<int> segment_lengths;           // 1 entry, or 3 for Pigeonhole
  std::vector<CertNode> child;                // at most one

  bool operator==(const CertNode&) const = default;
};

struct PathCertificate {
  CertNode root;
  bool operator==(const PathCertificate&) const = default;
};

struct CertifiedPath {
  Path path;
  PathCertificate cert;
};

// A restriction the recursion needed turned out disconnected; f is given in
// the symbols of the original input graph, components by class id.
struct StuckInfo {
  std::vector<Symbol> f;
  std::vector<ClassId> component_a, component_b;
};

struct PathResult {
  std::optional<CertifiedPath> certified;
  std::optional<StuckInfo> stuck;
  bool ok() const { return certified.has_value(); }
};

namespace detail {

// Lexicographically smallest shortest path: BFS distances from the target,
// then greedy descent picking the smallest class id at each step.
inline Path lex_shortest_path(const Spg& g, const Adjacency& adj, ClassId u, ClassId v) {
  int src = g.class_index(u), dst = g.class_index(v);
  assert(src >= 0 && dst >= 0);
  auto dist = bfs_distances(adj, dst);
  assert(dist[static_cast<std::size_t>(src)] >= 0);
  Path path;
  path.ids.push_back(u);
  int cur = src;
  while (cur != dst) {
    int want = dist[static_cast<std::size_t>(cur)] - 1;
    int next = -1;
    for (auto it = adj.nbr_begin(cur); it != adj.nbr_end(cur); ++it) {
      if (dist[static_cast<std::size_t>(*it)] == want) {
        next = *it;  // neighbors ascend, first hit is the smallest id
        break;
      }
    }
    assert(next >= 0);
    path.ids.push_back(g.classes[static_cast<std::size_t>(next)].id);
    cur = next;
  }
  return path;
}

// Symbols used within distance <= r of the source distances in dist.
inline std::vector<char> ball_symbol_flags(const Spg& g, const std::vector<int>& dist,
                                           int r) {
  std::vector<char> seen(static_cast<std::size_t>(g.n) + 1, 0);
  for (std::size_t i = 0; i < g.classes.size(); ++i) {
    if (dist[i] < 0 || dist[i] > r) continue;
    for (const auto& a : g.classes[i].dsets)
      for (Symbol s : a.symbols()) seen[static_cast<std::size_t>(s)] = 1;
  }
  return seen;
}

inline int count_flags(const std::vector<char>& flags) {
  int c = 0;
  for (char f : flags) c += f;
  return c;
}

// Largest r with |ball(r)| <= half; -1 when even the source class exceeds it.
inline int ball_radius_within(const Spg& g, const std::vector<int>& dist, int half) {
  int max_dist = *std::max_element(dist.begin(), dist.end());
  int r = -1;
  for (int radius = 0; radius <= max_dist; ++radius) {
    if (count_flags(ball_symbol_flags(g, dist, radius)) <= half)
      r = radius;
    else
      break;
  }
  return r;
}

struct BuildContext {
  // Composed map from the current level's symbols to the original ones.
  std::vector<Symbol> to_original;
};

struct BuildOutcome {
  Path path;
  CertNode node;
  std::optional<StuckInfo> stuck;
};

inline StuckInfo stuck_from_reduce(const ReduceResult& red, Symbol s,
                                   const BuildContext& ctx) {
  StuckInfo info;
  info.f = {ctx.to_original[static_cast<std::size_t>(s) - 1]};
  info.component_a = red.component_a;
  info.component_b = red.component_b;
  return info;
}

inline BuildOutcome build_certified(const Spg& g, ClassId u, ClassId v,
                                    const BuildContext& ctx) {
  BuildOutcome out;
  const int k = static_cast<int>(g.classes.size());
  const int n_eff = static_cast<int>(g.support().size());
  out.node.d = g.d;
  out.node.n_eff = n_eff;

  if (u == v) {
    out.node.kind = CertCase::BaseTrivial;
    out.node.segment_lengths = {0};
    out.path.ids = {u};
    return out;
  }

  if (g.d <= 2 || k <= 8) {
    auto adj = Adjacency::build(g);
    out.node.kind = CertCase::BaseBfs;
    out.path = lex_shortest_path(g, adj, u, v);
    out.node.segment_lengths = {out.path.length()};
    return out;
  }

  auto recurse_through = [&](Symbol s, ClassId cu, ClassId cv)
      -> std::optional<BuildOutcome> {
    auto red = reduce_dimension(restrict(g, {s}));
    if (!red.ok()) {
      out.stuck = stuck_from_reduce(red, s, ctx);
      return std::nullopt;
    }
    BuildContext sub_ctx;
    sub_ctx.to_original.reserve(red.new_to_old.size());
    for (Symbol old_sym : red.new_to_old)
      sub_ctx.to_original.push_back(
          ctx.to_original[static_cast<std::size_t>(old_sym) - 1]);
    return build_certified(*red.spg, cu, cv, sub_ctx);
  };

  if (n_eff < 2 * g.d) {
    // Any two d-sets over fewer than 2d symbols intersect.
    const DSet& a = g.find_class(u)->dsets.front();
    const DSet& b = g.find_class(v)->dsets.front();
    auto common = a.intersection(b);
    assert(!common.empty());
    Symbol s = common.front();

    auto sub = recurse_through(s, u, v);
    if (!sub) return out;
    if (sub->stuck) {
      out.stuck = std::move(sub->stuck);
      return out;
    }
    out.node.kind = CertCase::FacetMove;
    out.node.chosen_symbol = s;
    out.node.segment_lengths = {sub->path.length()};
    out.node.child.push_back(std::move(sub->node));
    out.path = std::move(sub->path);  // reduced edges embed in g, ids kept
    return out;
  }

  // Pigeonhole: balls past floor(n_eff/2) symbols must share one.
  const int half = n_eff / 2;
  auto adj = Adjacency::build(g);
  auto du = bfs_distances(adj, g.class_index(u));
  auto dv = bfs_distances(adj, g.class_index(v));
  int r_u = ball_radius_within(g, du, half);
  int r_v = ball_radius_within(g, dv, half);
  auto flags_u = ball_symbol_flags(g, du, r_u + 1);
  auto flags_v = ball_symbol_flags(g, dv, r_v + 1);

  Symbol s = 0;
  for (Symbol sym = 1; sym <= g.n; ++sym) {
    if (flags_u[static_cast<std::size_t>(sym)] && flags_v[static_cast<std::size_t>(sym)]) {
      s = sym;
      break;
    }
  }
  assert(s > 0);

  auto nearest_holder = [&g, s](const std::vector<int>& dist, int radius) {
    ClassId best = -1;
    int best_dist = radius + 1;
    for (std::size_t i = 0; i < g.classes.size(); ++i) {
      if (dist[i] < 0 || dist[i] > radius) continue;
      bool holds = std::any_of(
          g.classes[i].dsets.begin(), g.classes[i].dsets.end(),
          [s](const DSet& ds) { return ds.contains(s); });
      if (!holds) continue;
      if (best < 0 || dist[i] < best_dist) {  // ids ascend with the index
        best_dist = dist[i];
        best = g.classes[i].id;
      }
    }
    assert(best >= 0);
    return best;
  };
  ClassId w_u = nearest_holder(du, r_u + 1);
  ClassId w_v = nearest_holder(dv, r_v + 1);

  auto sub = recurse_through(s, w_u, w_v);
  if (!sub) return out;
  if (sub->stuck) {
    out.stuck = std::move(sub->stuck);
    return out;
  }

  Path seg_u = lex_shortest_path(g, adj, u, w_u);
  Path seg_v = lex_shortest_path(g, adj, w_v, v);
  out.node.kind = CertCase::Pigeonhole;
  out.node.chosen_symbol = s;
  out.node.radii = {{r_u, r_v}};
  out.node.segment_lengths = {seg_u.length(), sub->path.length(), seg_v.length()};
  out.node.child.push_back(std::move(sub->node));
  out.path.ids = std::move(seg_u.ids);
  out.path.ids.insert(out.path.ids.end(), sub->path.ids.begin() + 1,
                      sub->path.ids.end());
  out.path.ids.insert(out.path.ids.end(), seg_v.ids.begin() + 1, seg_v.ids.end());
  return out;
}

}  // namespace detail

inline PathResult certified_path(const Spg& g, ClassId u, ClassId v) {
  detail::require_class(g, u);
  detail::require_class(g, v);
  detail::BuildContext ctx;
  ctx.to_original.resize(static_cast<std::size_t>(g.n));
  std::iota(ctx.to_original.begin(), ctx.to_original.end(), 1);

  auto outcome = detail::build_certified(g, u, v, ctx);
  PathResult result;
  if (outcome.stuck) {
    result.stuck = std::move(outcome.stuck);
    return result;
  }
  result.certified = CertifiedPath{std::move(outcome.path),
                                   PathCertificate{std::move(outcome.node)}};
  return result;
}

struct VerifyResult {
  bool ok = true;
  std::string reason;
};

namespace detail {

inline std::optional<std::string> verify_node(const Spg& g,
                                              std::span<const ClassId> path,
                                              const CertNode& node) {
  if (path.empty()) return "empty path segment";
  for (ClassId id : path)
    if (g.class_index(id) < 0)
      return "path id " + std::to_string(id) + " missing from the derived graph";
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!g.has_edge(path[i], path[i + 1]))
      return "step " + std::to_string(path[i]) + "-" + std::to_string(path[i + 1]) +
             " is not an edge";
  if (node.d != g.d) return "certificate d does not match the derived graph";
  const int n_eff = static_cast<int>(g.support().size());
  if (node.n_eff != n_eff) return "certificate n_eff does not match the derived graph";
  const int len = static_cast<int>(path.size()) - 1;

  auto need_symbol = [&]() -> std::optional<std::string> {
    if (!node.chosen_symbol) return "missing chosen symbol";
    Symbol s = *node.chosen_symbol;
    if (s < 1 || s > g.n) return "chosen symbol outside the symbol range";
    return std::nullopt;
  };
  auto derive = [&g](Symbol s) { return reduce_dimension(restrict(g, {s})); };

  switch (node.kind) {
    case CertCase::BaseTrivial: {
      if (path.size() != 1) return "trivial case with a non-trivial path";
      if (node.segment_lengths != std::vector<int>{0})
        return "trivial case with nonzero segment length";
      if (!node.child.empty()) return "trivial case with a child";
      return std::nullopt;
    }
    case CertCase::BaseBfs: {
      if (g.d > 2 && g.classes.size() > 8)
        return "base case claimed outside its thresholds";
      if (node.segment_lengths != std::vector<int>{len})
        return "segment length does not match the path";
      if (!node.child.empty()) return "base case with a child";
      if (len != distance(g, path.front(), path.back()))
        return "path is not a shortest path";
      return std::nullopt;
    }
    case CertCase::FacetMove: {
      if (node.n_eff >= 2 * node.d) return "facet move claimed with n_eff >= 2d";
      if (auto bad = need_symbol()) return bad;
      if (node.segment_lengths != std::vector<int>{len})
        return "segment length does not match the path";
      if (node.child.size() != 1) return "facet move needs exactly one child";
      auto red = derive(*node.chosen_symbol);
      if (!red.ok()) return "restriction to the chosen symbol does not reduce";
      return verify_node(*red.spg, path, node.child.front());
    }
    case CertCase::Pigeonhole: {
      if (node.n_eff < 2 * node.d) return "pigeonhole claimed with n_eff < 2d";
      if (auto bad = need_symbol()) return bad;
      if (!node.radii) return "missing ball radii";
      auto [r_u, r_v] = *node.radii;
      if (r_u < -1 || r_v < -1) return "invalid ball radius";
      if (node.segment_lengths.size() != 3) return "pigeonhole needs three segments";
      const int l1 = node.segment_lengths[0];
      const int l2 = node.segment_lengths[1];
      const int l3 = node.segment_lengths[2];
      if (l1 < 0 || l2 < 0 || l3 < 0 || l1 + l2 + l3 != len)
        return "segment lengths do not add up to the path length";
      if (l1 > r_u + 1 || l3 > r_v + 1) return "segment exceeds its ball radius";

      const int half = n_eff / 2;
      auto adj = Adjacency::build(g);
      auto du = bfs_distances(adj, g.class_index(path.front()));
      auto dv = bfs_distances(adj, g.class_index(path.back()));
      auto flags_u = ball_symbol_flags(g, du, r_u + 1);
      auto flags_v = ball_symbol_flags(g, dv, r_v + 1);
      if (count_flags(flags_u) <= half)
        return "ball around the start does not exceed half the symbols";
      if (count_flags(flags_v) <= half)
        return "ball around the end does not exceed half the symbols";
      Symbol s = *node.chosen_symbol;
      if (!flags_u[static_cast<std::size_t>(s)] || !flags_v[static_cast<std::size_t>(s)])
        return "chosen symbol lies outside a ball";

      if (node.child.size() != 1) return "pigeonhole needs exactly one child";
      auto red = derive(s);
      if (!red.ok()) return "restriction to the chosen symbol does not reduce";
      return verify_node(*red.spg, path.subspan(static_cast<std::size_t>(l1),
                                                static_cast<std::size_t>(l2) + 1),
                         node.child.front());
    }
  }
  return "unknown certificate case";
}

}  // namespace detail

// Replays the certificate against the graph and path alone: derived graphs
// are rebuilt from the chosen symbols, every structural claim is rechecked,
// and the total length must meet the bound for the recomputed n_eff.
inline VerifyResult verify_certificate(const Spg& g, const Path& path,
                                       const PathCertificate& cert) {
  VerifyResult r;
  auto bad = detail::verify_node(g, std::span<const ClassId>(path.ids), cert.root);
  if (bad) {
    r.ok = false;
    r.reason = *bad;
    return r;
  }
  const int n_eff = static_cast<int>(g.support().size());
  const double bound =
      detail::pow_or_zero<double>(n_eff - g.d, 1 + std::log2(static_cast<double>(g.d)));
  if (static_cast<double>(path.length()) > bound + 1e-9 * std::max(1.0, bound)) {
    r.ok = false;
    r.reason = "path length exceeds the certified bound";
  }
  return r;
}

// Text form, one node per line, children indented two spaces:
//   <case> <d> <n_eff> <symbol|-> <r_u|-> <r_v|-> <l1[,l2,l3]>
namespace detail {

inline void cert_node_to_text(const CertNode& node, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(2 * depth), ' ');
  out += cert_case_name(node.kind);
  out += ' ';
  out += std::to_string(node.d);
  out += ' ';
  out += std::to_string(node.n_eff);
  out += ' ';
  out += node.chosen_symbol ? std::to_string(*node.chosen_symbol) : "-";
  out += ' ';
  out += node.radii ? std::to_string(node.radii->first) : "-";
  out += ' ';
  out += node.radii ? std::to_string(node.radii->second) : "-";
  out += ' ';
  for (std::size_t i = 0; i < node.segment_lengths.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(node.segment_lengths[i]);
  }
  out += '\n';
  for (const auto& c : node.child) cert_node_to_text(c, depth + 1, out);
}

}  // namespace detail

inline std::string to_text(const PathCertificate& cert) {
  std::string out;
  detail::cert_node_to_text(cert.root, 0, out);
  return out;
}

struct CertParse {
  std::optional<PathCertificate> cert;
  std::string error;
  int line = 0;
  bool ok() const { return cert.has_value(); }
};

inline CertParse parse_certificate_text(std::string_view text) {
  CertParse result;
  std::vector<CertNode*> stack;
  PathCertificate cert;
  bool have_root = false;

  int line_no = 0;
  std::string_view rest = text;
  auto fail = [&result](int line, std::string msg) {
    result.error = std::move(msg);
    result.line = line;
  };

  while (!rest.empty()) {
    std::size_t nl = rest.find('\n');
    std::string_view line = nl == std::string_view::npos ? rest : rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string_view::npos)
      continue;

    std::size_t indent = 0;
    while (indent < line.size() && line[indent] == ' ') ++indent;
    if (indent % 2 != 0) {
      fail(line_no, "odd indentation");
      return result;
    }
    std::size_t depth = indent / 2;

    auto toks = [&line, indent] {
      std::vector<std::string_view> out;
      std::string_view body = line.substr(indent);
      std::size_t i = 0;
      while (i < body.size()) {
        while (i < body.size() && body[i] == ' ') ++i;
        std::size_t j = i;
        while (j < body.size() && body[j] != ' ' && body[j] != '\r') ++j;
        if (j > i) out.push_back(body.substr(i, j - i));
        i = j;
      }
      return out;
    }();
    if (toks.size() != 7) {
      fail(line_no, "expected 7 fields per certificate line");
      return result;
    }

    CertNode node;
    if (toks[0] == "base_trivial") node.kind = CertCase::BaseTrivial;
    else if (toks[0] == "base_bfs") node.kind = CertCase::BaseBfs;
    else if (toks[0] == "facet_move") node.kind = CertCase::FacetMove;
    else if (toks[0] == "pigeonhole") node.kind = CertCase::Pigeonhole;
    else {
      fail(line_no, "unknown certificate case '" + std::string(toks[0]) + "'");
      return result;
    }

    auto parse_field = [&](std::string_view tok, int& value) {
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      return ec == std::errc() && p == tok.data() + tok.size();
    };
    if (!parse_field(toks[1], node.d) || !parse_field(toks[2], node.n_eff)) {
      fail(line_no, "bad d or n_eff field");
      return result;
    }
    if (toks[3] != "-") {
      int s = 0;
      if (!parse_field(toks[3], s)) {
        fail(line_no, "bad symbol field");
        return result;
      }
      node.chosen_symbol = s;
    }
    if ((toks[4] == "-") != (toks[5] == "-")) {
      fail(line_no, "radii must both be present or absent");
      return result;
    }
    if (toks[4] != "-") {
      int a = 0, b = 0;
      if (!parse_field(toks[4], a) || !parse_field(toks[5], b)) {
        fail(line_no, "bad radius field");
        return result;
      }
      node.radii = {{a, b}};
    }
    for (std::string_view piece : detail::split_on(toks[6], ',')) {
      int l = 0;
      if (!parse_field(piece, l)) {
        fail(line_no, "bad segment length");
        return result;
      }
      node.segment_lengths.push_back(l);
    }

    if (depth == 0) {
      if (have_root) {
        fail(line_no, "multiple certificate roots");
        return result;
      }
      cert.root = std::move(node);
      have_root = true;
      stack = {&cert.root};
    } else {
      if (depth != stack.size()) {
        fail(line_no, "certificate nodes must form a single chain");
        return result;
      }
      CertNode* parent = stack.back();
      if (!parent->child.empty()) {
        fail(line_no, "node already has a child");
        return result;
      }
      parent->child.push_back(std::move(node));
      stack.push_back(&parent->child.back());
    }
  }

  if (!have_root) {
    fail(line_no ? line_no : 1, "empty certificate");
    return result;
  }
  result.cert = std::move(cert);
  return result;
}

}  // namespace spg
