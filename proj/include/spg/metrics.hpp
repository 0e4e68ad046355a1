#pragma once

// Graph metrics on the class graph: BFS distances, eccentricity, diameter,
// and the symbol ball (union of supports within a radius).

#include <queue>

#include "spg/core.hpp"

namespace spg {
namespace detail {

// Compact adjacency over class indices (positions in Spg::classes, which are
// sorted by id, so index order and id order agree).
struct Adjacency {
  int count = 0;
  std::vector<int> offsets;    // size count+1
  std::vector<int> neighbors;  // each bucket sorted ascending

  static Adjacency build(const Spg& s) {
    Adjacency adj;
    adj.count = static_cast<int>(s.classes.size());
    std::vector<std::vector<int>> buckets(static_cast<std::size_t>(adj.count));
    for (auto [a, b] : s.edges) {
      int ia = s.class_index(a), ib = s.class_index(b);
      buckets[static_cast<std::size_t>(ia)].push_back(ib);
      buckets[static_cast<std::size_t>(ib)].push_back(ia);
    }
    adj.offsets.push_back(0);
    for (auto& bucket : buckets) {
      std::sort(bucket.begin(), bucket.end());
      adj.neighbors.insert(adj.neighbors.end(), bucket.begin(), bucket.end());
      adj.offsets.push_back(static_cast<int>(adj.neighbors.size()));
    }
    return adj;
  }

  auto nbr_begin(int v) const { return neighbors.begin() + offsets[static_cast<std::size_t>(v)]; }
  auto nbr_end(int v) const { return neighbors.begin() + offsets[static_cast<std::size_t>(v) + 1]; }
};

inline std::vector<int> bfs_distances(const Adjacency& adj, int src) {
  std::vector<int> dist(static_cast<std::size_t>(adj.count), -1);
  std::queue<int> q;
  dist[static_cast<std::size_t>(src)] = 0;
  q.push(src);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (auto it = adj.nbr_begin(v); it != adj.nbr_end(v); ++it) {
      if (dist[static_cast<std::size_t>(*it)] < 0) {
        dist[static_cast<std::size_t>(*it)] = dist[static_cast<std::size_t>(v)] + 1;
        q.push(*it);
      }
    }
  }
  return dist;
}

inline int require_class(const Spg& s, ClassId id) {
  int idx = s.class_index(id);
  if (idx < 0) throw InvalidArgument("unknown class id " + std::to_string(id));
  return idx;
}

}  // namespace detail

// Distances from u to every class, indexed like Spg::classes.
inline std::vector<int> distances_from(const Spg& s, ClassId u) {
  int src = detail::require_class(s, u);
  return detail::bfs_distances(detail::Adjacency::build(s), src);
}

inline int distance(const Spg& s, ClassId u, ClassId v) {
  int dst = detail::require_class(s, v);
  return distances_from(s, u)[static_cast<std::size_t>(dst)];
}

inline int eccentricity(const Spg& s, ClassId u) {
  auto dist = distances_from(s, u);
  return *std::max_element(dist.begin(), dist.end());
}

inline int diameter(const Spg& s) {
  auto adj = detail::Adjacency::build(s);
  int best = 0;
  for (int v = 0; v < adj.count; ++v) {
    auto dist = detail::bfs_distances(adj, v);
    best = std::max(best, *std::max_element(dist.begin(), dist.end()));
  }
  return best;
}

// Symbols appearing in some class at distance <= r from u, sorted.
inline std::vector<Symbol> symbol_ball(const Spg& s, ClassId u, int r) {
  if (r < 0) throw InvalidArgument("negative ball radius");
  int src = detail::require_class(s, u);
  auto dist = detail::bfs_distances(detail::Adjacency::build(s), src);
  std::vector<char> seen(static_cast<std::size_t>(s.n) + 1, 0);
  for (std::size_t i = 0; i < s.classes.size(); ++i) {
    if (dist[i] < 0 || dist[i] > r) continue;
    for (const auto& a : s.classes[i].dsets)
      for (Symbol sym : a.symbols()) seen[static_cast<std::size_t>(sym)] = 1;
  }
  std::vector<Symbol> out;
  for (Symbol sym = 1; sym <= s.n; ++sym)
    if (seen[static_cast<std::size_t>(sym)]) out.push_back(sym);
  return out;
}

}  // namespace spg
