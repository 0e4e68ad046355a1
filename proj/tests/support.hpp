#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "spg/core.hpp"
#include "spg/search.hpp"

namespace support {

// Builds an Spg with class ids 0..k-1 in list order; throws if invalid so a
// bad fixture fails loudly instead of crashing later.
inline spg::Spg make(int d, int n, std::vector<std::vector<spg::DSet>> classes,
                     std::vector<spg::Edge> edges) {
  std::vector<spg::VertexClass> vcs;
  vcs.reserve(classes.size());
  spg::ClassId next = 0;
  for (auto& dsets : classes) vcs.push_back({next++, std::move(dsets)});
  auto built = spg::build_spg(d, n, std::move(vcs), std::move(edges));
  if (!built.ok()) {
    std::string msg = "fixture rejected:";
    for (const auto& v : built.violations) msg += " [" + v.message + "]";
    throw std::runtime_error(msg);
  }
  return *built.spg;
}

// Same inputs, but the fixture is expected to be invalid.
inline std::vector<spg::Violation> violations_of(
    int d, int n, std::vector<std::vector<spg::DSet>> classes,
    std::vector<spg::Edge> edges) {
  std::vector<spg::VertexClass> vcs;
  vcs.reserve(classes.size());
  spg::ClassId next = 0;
  for (auto& dsets : classes) vcs.push_back({next++, std::move(dsets)});
  auto built = spg::build_spg(d, n, std::move(vcs), std::move(edges));
  if (built.ok()) throw std::runtime_error("fixture unexpectedly valid");
  return built.violations;
}

// All-pairs distances by Floyd-Warshall, indexed by class position. An
// independent check on the BFS-based metrics.
inline std::vector<std::vector<int>> fw_distances(const spg::Spg& s) {
  const int k = static_cast<int>(s.classes.size());
  const int inf = 1 << 28;
  std::vector<std::vector<int>> dist(
      static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), inf));
  for (int i = 0; i < k; ++i) dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
  for (auto [a, b] : s.edges) {
    int i = s.class_index(a), j = s.class_index(b);
    dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 1;
  }
  for (int m = 0; m < k; ++m)
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        int via = dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] +
                  dist[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
        if (via < dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
          dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = via;
      }
  return dist;
}

// Random graph that satisfies dimension reduction by construction.
inline spg::Spg random_dr_spg(std::mt19937_64& rng, int d, int n) {
  auto st = spg::detail::random_state(rng, d, n);
  auto built = spg::build_spg(d, n, st.classes, st.edges);
  if (!built.ok()) throw std::runtime_error("random state rejected");
  return *built.spg;
}

}  // namespace support
