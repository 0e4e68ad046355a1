#pragma once

// Extremal diameter search.
//
// sigma_exact enumerates, in lexicographic order, every family of d-sets
// over 1..n, every partition of the family (restricted growth strings), and
// every connected graph on the partition classes; candidates passing the
// dimension reduction check are scored by diameter. explored counts the
// candidates reaching that check, i.e. connected graphs; no symmetry pruning
// is applied, so the count matches the closed-form candidate estimate.
//
// sigma_search runs a seeded hill climb over the same state space with six
// moves (add/remove a d-set, split/merge classes, add/remove an edge). An
// invalid candidate gets one repair attempt: the lexicographically smallest
// edge joining the disconnected restriction is added, then the state is
// rechecked. Warm starts and the restart cycle are deterministic in the
// seed, so equal seeds give byte-equal results.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <thread>
#include <vector>

#include "spg/generators.hpp"
#include "spg/metrics.hpp"
#include "spg/properties.hpp"

namespace spg {

struct SigmaResult {
  int d = 0, n = 0;
  int value = 0;
  Spg witness;
  int witness_n_eff = 0;   // symbols the witness actually uses
  bool exhaustive = false;
  uint64_t explored = 0;
};

struct ExactOptions {
  int workers = 1;
  uint64_t candidate_cap = 200'000'000;
};

struct SearchOptions {
  int workers = 1;
};

namespace detail {

// Labeled connected graphs on k vertices: 1, 1, 4, 38, 728, 26704, ...
// via conn(k) = 2^C(k,2) - sum_{j<k} C(k-1,j-1) conn(j) 2^C(k-j,2).
inline uint64_t connected_graph_count(int k) {
  static const std::vector<uint64_t> counts = [] {
    std::vector<uint64_t> c{0};  // index 0 unused
    std::vector<unsigned __int128> exact{0};
    const unsigned __int128 u64max = kSaturated;
    for (int k = 1; k <= 24; ++k) {
      if (k >= 12) {  // conn(12) already exceeds 2^64
        c.push_back(kSaturated);
        exact.push_back(u64max + 1);
        continue;
      }
      auto choose = [](int a, int b) {
        unsigned __int128 r = 1;
        for (int i = 1; i <= b; ++i) r = r * static_cast<unsigned>(a - b + i) / static_cast<unsigned>(i);
        return r;
      };
      unsigned __int128 total = static_cast<unsigned __int128>(1)
                                << (k * (k - 1) / 2);
      for (int j = 1; j < k; ++j)
        total -= choose(k - 1, j - 1) * exact[static_cast<std::size_t>(j)] *
                 (static_cast<unsigned __int128>(1) << ((k - j) * (k - j - 1) / 2));
      exact.push_back(total);
      c.push_back(total > u64max ? kSaturated : static_cast<uint64_t>(total));
    }
    return c;
  }();
  if (k < 1) return 0;
  if (k >= static_cast<int>(counts.size())) return kSaturated;
  return counts[static_cast<std::size_t>(k)];
}

inline uint64_t binom_sat(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  uint64_t r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    unsigned __int128 t = static_cast<unsigned __int128>(r) * (n - k + i);
    t /= i;  // divides exactly: running product of binomials
    if (t > kSaturated) return kSaturated;
    r = static_cast<uint64_t>(t);
  }
  return r;
}

// Stirling numbers of the second kind, saturating.
inline uint64_t stirling2_sat(int m, int k) {
  static constexpr int kMaxM = 64;
  static const auto table = [] {
    auto t = std::vector<std::vector<uint64_t>>(
        kMaxM + 1, std::vector<uint64_t>(kMaxM + 1, 0));
    t[0][0] = 1;
    for (int m = 1; m <= kMaxM; ++m)
      for (int k = 1; k <= m; ++k)
        t[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] =
            sat_add(sat_mul(static_cast<uint64_t>(k),
                            t[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(k)]),
                    t[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(k - 1)]);
    return t;
  }();
  if (m < 0 || k < 0 || k > m) return 0;
  if (m > kMaxM) return kSaturated;
  return table[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
}

// All d-subsets of 1..n in lexicographic order, as sorted vectors and masks.
struct DsetUniverse {
  int d = 0, n = 0;
  std::vector<uint64_t> masks;
  std::vector<std::vector<Symbol>> symbols;
};

inline DsetUniverse build_universe(int d, int n) {
  DsetUniverse u;
  u.d = d;
  u.n = n;
  std::vector<int> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), 1);
  while (true) {
    uint64_t mask = 0;
    std::vector<Symbol> syms;
    syms.reserve(static_cast<std::size_t>(d));
    for (int s : idx) {
      mask |= 1ull << (s - 1);
      syms.push_back(s);
    }
    u.masks.push_back(mask);
    u.symbols.push_back(std::move(syms));
    int j = d - 1;
    while (j >= 0 && idx[static_cast<std::size_t>(j)] == n - (d - 1 - j)) --j;
    if (j < 0) break;
    ++idx[static_cast<std::size_t>(j)];
    for (int t = j + 1; t < d; ++t)
      idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
  }
  return u;
}

// Edge bit t of a k-vertex graph mask is pair (i,j), i < j, in lex order.
inline std::vector<std::pair<int, int>> pair_table(int k) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  return pairs;
}

inline bool mask_connected(int k, uint32_t emask,
                           const std::vector<std::pair<int, int>>& pairs) {
  if (k <= 1) return true;
  std::array<uint32_t, 32> nb{};
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    if (emask & (1u << t)) {
      auto [i, j] = pairs[t];
      nb[static_cast<std::size_t>(i)] |= 1u << j;
      nb[static_cast<std::size_t>(j)] |= 1u << i;
    }
  }
  uint32_t seen = 1, frontier = 1;
  const uint32_t all = (1u << k) - 1;
  while (frontier) {
    uint32_t next = 0;
    uint32_t f = frontier;
    while (f) {
      int v = std::countr_zero(f);
      f &= f - 1;
      next |= nb[static_cast<std::size_t>(v)];
    }
    frontier = next & ~seen;
    seen |= next;
    if (seen == all) return true;
  }
  return false;
}

// Connected graph masks for each k <= 7, built once on demand.
struct ConnCache {
  std::array<std::vector<uint32_t>, 8> lists;

  const std::vector<uint32_t>& ensure(int k) {
    assert(k >= 1 && k <= 7);
    auto& list = lists[static_cast<std::size_t>(k)];
    if (list.empty() && k >= 1) {
      auto pairs = pair_table(k);
      const uint32_t total = 1u << pairs.size();
      list.reserve(static_cast<std::size_t>(connected_graph_count(k)));
      for (uint32_t emask = 0; emask < total; ++emask)
        if (mask_connected(k, emask, pairs)) list.push_back(emask);
    }
    return list;
  }
};

// Unique survivor-class masks over all nonempty F drawn from family members;
// only masks with at least two survivors constrain connectivity.
inline std::vector<uint32_t> survivor_masks(const std::vector<uint64_t>& member_masks,
                                            const std::vector<int>& cell_of, int k) {
  std::vector<uint64_t> fs;
  for (uint64_t m : member_masks) {
    for (uint64_t sub = m; sub; sub = (sub - 1) & m) fs.push_back(sub);
  }
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());

  std::vector<uint32_t> out;
  for (uint64_t f : fs) {
    uint32_t surv = 0;
    for (std::size_t i = 0; i < member_masks.size(); ++i)
      if ((member_masks[i] & f) == f) surv |= 1u << cell_of[i];
    if (std::popcount(surv) >= 2) out.push_back(surv);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  (void)k;
  return out;
}

struct MaskGraph {
  int k = 0;
  std::array<uint32_t, 32> nb{};

  void load(int k_in, uint32_t emask, const std::vector<std::pair<int, int>>& pairs) {
    k = k_in;
    nb.fill(0);
    for (std::size_t t = 0; t < pairs.size(); ++t) {
      if (emask & (1u << t)) {
        auto [i, j] = pairs[t];
        nb[static_cast<std::size_t>(i)] |= 1u << j;
        nb[static_cast<std::size_t>(j)] |= 1u << i;
      }
    }
  }

  bool connected_within(uint32_t surv) const {
    uint32_t start = surv & (~surv + 1);
    uint32_t seen = start, frontier = start;
    while (frontier) {
      uint32_t next = 0;
      uint32_t f = frontier;
      while (f) {
        int v = std::countr_zero(f);
        f &= f - 1;
        next |= nb[static_cast<std::size_t>(v)];
      }
      frontier = next & surv & ~seen;
      seen |= frontier;
      if (seen == surv) return true;
    }
    return seen == surv;
  }

  int diameter() const {
    const uint32_t all = (1u << k) - 1;
    int best = 0;
    for (int s = 0; s < k; ++s) {
      uint32_t seen = 1u << s, frontier = seen;
      int depth = 0;
      while (seen != all) {
        uint32_t next = 0;
        uint32_t f = frontier;
        while (f) {
          int v = std::countr_zero(f);
          f &= f - 1;
          next |= nb[static_cast<std::size_t>(v)];
        }
        frontier = next & ~seen;
        seen |= frontier;
        ++depth;
      }
      best = std::max(best, depth);
    }
    return best;
  }
};

// Iterates candidates whose family mask fm satisfies fm % stride == offset.
// on_valid(fm, rgs, emask, diameter, materialize) for candidates passing the
// dimension reduction check; returns the number of candidates checked.
template <class OnValid>
uint64_t scan_candidates(const DsetUniverse& uni, ConnCache& conn, uint64_t stride,
                         uint64_t offset, OnValid&& on_valid) {
  const int M = static_cast<int>(uni.masks.size());
  uint64_t explored = 0;
  std::vector<int> members;
  std::vector<uint64_t> member_masks;

  for (uint64_t fm = 1; fm < (1ull << M); ++fm) {
    if (fm % stride != offset) continue;
    members.clear();
    member_masks.clear();
    for (int i = 0; i < M; ++i)
      if (fm & (1ull << i)) {
        members.push_back(i);
        member_masks.push_back(uni.masks[static_cast<std::size_t>(i)]);
      }
    const int m = static_cast<int>(members.size());

    std::vector<int> rgs(static_cast<std::size_t>(m), 0);
    while (true) {
      const int k = 1 + *std::max_element(rgs.begin(), rgs.end());
      auto survs = survivor_masks(member_masks, rgs, k);
      auto pairs = pair_table(k);
      MaskGraph graph;

      auto try_emask = [&](uint32_t emask) {
        ++explored;
        graph.load(k, emask, pairs);
        for (uint32_t surv : survs)
          if (!graph.connected_within(surv)) return;
        int dia = graph.diameter();
        auto materialize = [&]() {
          std::vector<VertexClass> classes(static_cast<std::size_t>(k));
          for (int c = 0; c < k; ++c) classes[static_cast<std::size_t>(c)].id = c;
          for (int i = 0; i < m; ++i)
            classes[static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)])]
                .dsets.emplace_back(
                    uni.symbols[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])]);
          std::vector<Edge> edges;
          for (std::size_t t = 0; t < pairs.size(); ++t)
            if (emask & (1u << t)) edges.emplace_back(pairs[t].first, pairs[t].second);
          auto built = build_spg(uni.d, uni.n, std::move(classes), std::move(edges));
          assert(built.ok());
          return *built.spg;
        };
        on_valid(fm, rgs, emask, dia, materialize);
      };

      if (k <= 7) {
        for (uint32_t emask : conn.ensure(k)) try_emask(emask);
      } else {
        const uint64_t total = 1ull << pairs.size();
        for (uint64_t emask = 0; emask < total; ++emask)
          if (mask_connected(k, static_cast<uint32_t>(emask), pairs))
            try_emask(static_cast<uint32_t>(emask));
      }

      // next restricted growth string
      int j = m - 1;
      while (j >= 1) {
        int prefix_max = 0;
        for (int t = 0; t < j; ++t) prefix_max = std::max(prefix_max, rgs[static_cast<std::size_t>(t)]);
        if (rgs[static_cast<std::size_t>(j)] <= prefix_max) {
          ++rgs[static_cast<std::size_t>(j)];
          std::fill(rgs.begin() + j + 1, rgs.end(), 0);
          break;
        }
        --j;
      }
      if (j < 1) break;
    }
  }
  return explored;
}

}  // namespace detail

// Closed-form candidate count: families x partitions x connected graphs.
// Saturates at 2^64-1.
inline uint64_t estimate_exact_candidates(int d, int n) {
  if (d < 1 || n < d) throw InvalidArgument("estimate requires 1 <= d <= n");
  uint64_t M = detail::binom_sat(static_cast<uint64_t>(n), static_cast<uint64_t>(d));
  if (M > 62) return kSaturated;
  uint64_t total = 0;
  for (uint64_t m = 1; m <= M; ++m) {
    uint64_t inner = 0;
    for (uint64_t k = 1; k <= m; ++k)
      inner = sat_add(inner, sat_mul(detail::stirling2_sat(static_cast<int>(m), static_cast<int>(k)),
                                     detail::connected_graph_count(static_cast<int>(k))));
    total = sat_add(total, sat_mul(detail::binom_sat(M, m), inner));
  }
  return total;
}

namespace detail {

struct ExactBest {
  int value = -1;
  uint64_t fm = 0;
  std::vector<int> rgs;
  uint32_t emask = 0;
  std::optional<Spg> witness;

  bool better_than(const ExactBest& other) const {
    if (value != other.value) return value > other.value;
    if (other.value < 0) return true;
    if (fm != other.fm) return fm < other.fm;
    if (rgs != other.rgs) return rgs < other.rgs;
    return emask < other.emask;
  }
};

}  // namespace detail

// Exhaustive sigma over every subset partition graph shape on (d, n).
// Throws ResourceLimit when the candidate count exceeds options.candidate_cap.
inline SigmaResult sigma_exact(int d, int n, const ExactOptions& options = {}) {
  if (d < 1 || n < d) throw InvalidArgument("sigma_exact requires 1 <= d <= n");
  if (options.workers < 1) throw InvalidArgument("workers must be positive");
  uint64_t estimate = estimate_exact_candidates(d, n);
  if (estimate > options.candidate_cap)
    throw ResourceLimit("sigma_exact would examine " +
                        (estimate == kSaturated ? std::string("over 2^64")
                                                : std::to_string(estimate)) +
                        " candidates, cap is " + std::to_string(options.candidate_cap));

  auto universe = detail::build_universe(d, n);
  const int M = static_cast<int>(universe.masks.size());
  detail::ConnCache conn;
  for (int k = 1; k <= std::min(M, 7); ++k) conn.ensure(k);

  const int workers =
      std::min<int>(options.workers, std::max(1, (1 << std::min(M, 20)) - 1));
  std::vector<detail::ExactBest> bests(static_cast<std::size_t>(workers));
  std::vector<uint64_t> counts(static_cast<std::size_t>(workers), 0);

  auto run_worker = [&](int w) {
    detail::ExactBest best;
    counts[static_cast<std::size_t>(w)] = detail::scan_candidates(
        universe, conn, static_cast<uint64_t>(workers), static_cast<uint64_t>(w),
        [&best](uint64_t fm, const std::vector<int>& rgs, uint32_t emask, int dia,
                auto&& materialize) {
          if (dia > best.value) {
            best.value = dia;
            best.fm = fm;
            best.rgs = rgs;
            best.emask = emask;
            best.witness = materialize();
          }
        });
    bests[static_cast<std::size_t>(w)] = std::move(best);
  };

  if (workers == 1) {
    run_worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) threads.emplace_back(run_worker, w);
    for (auto& t : threads) t.join();
  }

  // Workers partition the family masks; merging by (value, candidate order)
  // reproduces the single-threaded outcome.
  detail::ExactBest overall;
  for (auto& b : bests)
    if (b.witness && b.better_than(overall)) overall = std::move(b);

  SigmaResult result;
  result.d = d;
  result.n = n;
  result.exhaustive = true;
  result.explored = 0;
  for (uint64_t c : counts) result.explored += c;
  assert(overall.witness);
  result.value = overall.value;
  result.witness = std::move(*overall.witness);
  result.witness_n_eff = static_cast<int>(result.witness.support().size());
  return result;
}

// Single-threaded sweep over every valid candidate, in enumeration order.
// fn(const Spg&, int diameter). Returns the explored-candidate count.
template <class Fn>
uint64_t for_each_valid_spg(int d, int n, uint64_t candidate_cap, Fn&& fn) {
  if (d < 1 || n < d) throw InvalidArgument("for_each_valid_spg requires 1 <= d <= n");
  uint64_t estimate = estimate_exact_candidates(d, n);
  if (estimate > candidate_cap)
    throw ResourceLimit("enumeration exceeds the candidate cap");
  auto universe = detail::build_universe(d, n);
  detail::ConnCache conn;
  return detail::scan_candidates(
      universe, conn, 1, 0,
      [&fn](uint64_t, const std::vector<int>&, uint32_t, int dia, auto&& materialize) {
        fn(materialize(), dia);
      });
}

namespace detail {

struct LocalState {
  std::vector<VertexClass> classes;  // ids dense 0..k-1
  std::vector<Edge> edges;
};

inline void normalize_state(LocalState& st) {
  std::erase_if(st.classes, [](const VertexClass& c) { return c.dsets.empty(); });
  std::map<ClassId, ClassId> remap;
  for (std::size_t i = 0; i < st.classes.size(); ++i) {
    remap[st.classes[i].id] = static_cast<ClassId>(i);
    st.classes[i].id = static_cast<ClassId>(i);
    std::sort(st.classes[i].dsets.begin(), st.classes[i].dsets.end());
  }
  std::vector<Edge> edges;
  for (auto [a, b] : st.edges) {
    auto ia = remap.find(a), ib = remap.find(b);
    if (ia == remap.end() || ib == remap.end() || ia->second == ib->second) continue;
    edges.emplace_back(std::min(ia->second, ib->second),
                       std::max(ia->second, ib->second));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  st.edges = std::move(edges);
}

// The lexicographically smallest edge joining two id sets.
inline Edge smallest_joining_edge(const std::vector<ClassId>& a,
                                  const std::vector<ClassId>& b) {
  Edge best{-1, -1};
  for (ClassId x : a) {
    for (ClassId y : b) {
      Edge e{std::min(x, y), std::max(x, y)};
      if (best.first < 0 || e < best) best = e;
    }
  }
  return best;
}

struct Evaluated {
  Spg spg;
  int diameter = 0;
};

// Validity = build_spg + dimension reduction, with one repair attempt: the
// smallest edge joining the first disconnected restriction found.
inline std::optional<Evaluated> evaluate_state(int d, int n, LocalState st) {
  normalize_state(st);
  bool repaired = false;
  while (true) {
    auto built = build_spg(d, n, st.classes, st.edges);
    if (!built.ok()) {
      if (repaired || built.violations.size() != 1 ||
          built.violations[0].kind != ViolationKind::Disconnected)
        return std::nullopt;
      repaired = true;
      st.edges.push_back(
          smallest_joining_edge(built.violations[0].ids, built.violations[0].ids_b));
      std::sort(st.edges.begin(), st.edges.end());
      continue;
    }
    auto dr = check_dimension_reduction(*built.spg);
    if (!dr.holds) {
      if (repaired) return std::nullopt;
      repaired = true;
      const auto& w = std::get<DrWitness>(*dr.witness);
      st.edges.push_back(smallest_joining_edge(w.component_a, w.component_b));
      std::sort(st.edges.begin(), st.edges.end());
      continue;
    }
    return Evaluated{*built.spg, diameter(*built.spg)};
  }
}

inline LocalState state_from_spg(const Spg& s) {
  return LocalState{s.classes, s.edges};
}

// Deterministic warm starts: one-class, then hypercube / simplex / singleton
// path when they fit inside 1..n.
inline std::vector<LocalState> warm_starts(int d, int n) {
  std::vector<LocalState> starts;
  {
    std::vector<Symbol> first(static_cast<std::size_t>(d));
    std::iota(first.begin(), first.end(), 1);
    starts.push_back({{{0, {DSet{first}}}}, {}});
  }
  if (n >= 2 * d && d <= 16) starts.push_back(state_from_spg(gen_hypercube(d)));
  if (n >= d + 1 && d <= 2000) starts.push_back(state_from_spg(gen_simplex(d)));
  if (d == 1) {
    LocalState path;
    for (Symbol s = 1; s <= n; ++s) {
      path.classes.push_back({s - 1, {DSet{{s}}}});
      if (s > 1) path.edges.emplace_back(s - 2, s - 1);
    }
    starts.push_back(std::move(path));
  }
  return starts;
}

template <class Rng>
DSet random_dset(Rng& rng, int d, int n) {
  // Floyd's sampling: uniform d-subset of 1..n.
  std::vector<Symbol> chosen;
  for (int j = n - d + 1; j <= n; ++j) {
    Symbol t = 1 + static_cast<Symbol>(rng_below(rng, static_cast<uint64_t>(j)));
    if (std::find(chosen.begin(), chosen.end(), t) != chosen.end())
      chosen.push_back(j);
    else
      chosen.push_back(t);
  }
  return DSet{chosen};
}

template <class Rng>
LocalState random_state(Rng& rng, int d, int n) {
  uint64_t universe = binom_sat(static_cast<uint64_t>(n), static_cast<uint64_t>(d));
  uint64_t target = std::min<uint64_t>(universe, static_cast<uint64_t>(2 * d + 2));
  std::set<DSet> family;
  int attempts = 0;
  while (family.size() < target && attempts < 64 * static_cast<int>(target)) {
    family.insert(random_dset(rng, d, n));
    ++attempts;
  }
  LocalState st;
  ClassId next = 0;
  for (const auto& ds : family) st.classes.push_back({next++, {ds}});
  for (ClassId i = 1; i < next; ++i) {
    ClassId parent = static_cast<ClassId>(rng_below(rng, static_cast<uint64_t>(i)));
    st.edges.emplace_back(parent, i);
  }
  // Greedy repair until dimension reduction holds; the complete graph always
  // satisfies it, so this terminates.
  for (;;) {
    auto built = build_spg(d, n, st.classes, st.edges);
    assert(built.ok());
    auto dr = check_dimension_reduction(*built.spg);
    if (dr.holds) break;
    const auto& w = std::get<DrWitness>(*dr.witness);
    st.edges.push_back(smallest_joining_edge(w.component_a, w.component_b));
    std::sort(st.edges.begin(), st.edges.end());
  }
  return st;
}

template <class Rng>
LocalState propose_move(Rng& rng, const LocalState& current, int d, int n) {
  LocalState st = current;
  const int k = static_cast<int>(st.classes.size());
  switch (rng_below(rng, 6)) {
    case 0: {  // add a d-set to an existing or new class
      DSet ds = random_dset(rng, d, n);
      bool present = std::any_of(st.classes.begin(), st.classes.end(),
                                 [&ds](const VertexClass& c) {
                                   return std::binary_search(c.dsets.begin(),
                                                             c.dsets.end(), ds);
                                 });
      for (int tries = 0; present && tries < 8; ++tries) {
        ds = random_dset(rng, d, n);
        present = std::any_of(st.classes.begin(), st.classes.end(),
                              [&ds](const VertexClass& c) {
                                return std::binary_search(c.dsets.begin(),
                                                          c.dsets.end(), ds);
                              });
      }
      if (present) break;
      ClassId target = static_cast<ClassId>(rng_below(rng, static_cast<uint64_t>(k) + 1));
      if (target == k)
        st.classes.push_back({k, {ds}});
      else
        st.classes[static_cast<std::size_t>(target)].dsets.push_back(ds);
      break;
    }
    case 1: {  // remove a d-set
      std::size_t total = 0;
      for (const auto& c : st.classes) total += c.dsets.size();
      if (total <= 1) break;
      auto pick = rng_below(rng, total);
      for (auto& c : st.classes) {
        if (pick < c.dsets.size()) {
          c.dsets.erase(c.dsets.begin() + static_cast<long>(pick));
          break;
        }
        pick -= c.dsets.size();
      }
      break;
    }
    case 2: {  // split a class
      std::vector<int> splittable;
      for (int i = 0; i < k; ++i)
        if (st.classes[static_cast<std::size_t>(i)].dsets.size() >= 2)
          splittable.push_back(i);
      if (splittable.empty()) break;
      int c = splittable[rng_below(rng, splittable.size())];
      auto& dsets = st.classes[static_cast<std::size_t>(c)].dsets;
      const std::size_t sz = dsets.size();
      std::vector<DSet> moved;
      if (sz > 20) {
        auto pick = rng_below(rng, sz);
        moved.push_back(dsets[pick]);
        dsets.erase(dsets.begin() + static_cast<long>(pick));
      } else {
        uint64_t mask = 1 + rng_below(rng, (1ull << sz) - 2);
        std::vector<DSet> kept;
        for (std::size_t i = 0; i < sz; ++i)
          (mask & (1ull << i) ? moved : kept).push_back(dsets[i]);
        dsets = std::move(kept);
      }
      st.classes.push_back({k, std::move(moved)});
      st.edges.emplace_back(c, k);  // keep the halves adjacent
      break;
    }
    case 3: {  // merge two classes
      if (k < 2) break;
      auto a = rng_below(rng, static_cast<uint64_t>(k));
      auto b = rng_below(rng, static_cast<uint64_t>(k) - 1);
      if (b >= a) ++b;
      auto& ca = st.classes[a];
      auto& cb = st.classes[b];
      ca.dsets.insert(ca.dsets.end(), cb.dsets.begin(), cb.dsets.end());
      for (auto& [x, y] : st.edges) {
        if (x == static_cast<ClassId>(b)) x = static_cast<ClassId>(a);
        if (y == static_cast<ClassId>(b)) y = static_cast<ClassId>(a);
      }
      cb.dsets.clear();
      break;
    }
    case 4: {  // add an edge
      std::vector<Edge> missing;
      for (ClassId i = 0; i < k; ++i)
        for (ClassId j = i + 1; j < k; ++j)
          if (!std::binary_search(st.edges.begin(), st.edges.end(), Edge{i, j}))
            missing.emplace_back(i, j);
      if (missing.empty()) break;
      st.edges.push_back(missing[rng_below(rng, missing.size())]);
      break;
    }
    case 5: {  // remove an edge
      if (st.edges.empty()) break;
      st.edges.erase(st.edges.begin() +
                     static_cast<long>(rng_below(rng, st.edges.size())));
      break;
    }
  }
  return st;
}

struct SearchOutcome {
  int best = -1;
  std::optional<Spg> witness;
  uint64_t explored = 0;
};

inline SearchOutcome search_run(int d, int n, uint64_t budget, uint64_t seed) {
  std::mt19937_64 rng(seed);
  SearchOutcome out;
  auto starts = warm_starts(d, n);
  std::optional<Evaluated> current;

  auto consider = [&out](const Evaluated& e) {
    if (e.diameter > out.best) {
      out.best = e.diameter;
      out.witness = e.spg;
    }
  };

  std::size_t next_start = 0;
  auto take_start = [&]() -> LocalState {
    if (next_start < starts.size()) return starts[next_start++];
    ++next_start;
    return random_state(rng, d, n);
  };

  // Warm starts are evaluated first (each consumes budget), then hill
  // climbing with sideways moves and deterministic restarts on stagnation.
  const uint64_t restart_after = std::max<uint64_t>(500, budget / 20);
  uint64_t stagnant = 0;
  while (out.explored < budget) {
    if (!current || (next_start < starts.size() && out.explored < starts.size()) ||
        stagnant >= restart_after) {
      auto st = take_start();
      ++out.explored;
      stagnant = 0;
      if (auto eval = evaluate_state(d, n, std::move(st))) {
        consider(*eval);
        if (!current || eval->diameter >= current->diameter) current = std::move(eval);
      }
      continue;
    }
    auto candidate = propose_move(rng, state_from_spg(current->spg), d, n);
    ++out.explored;
    auto eval = evaluate_state(d, n, std::move(candidate));
    if (eval) {
      const int before = out.best;
      consider(*eval);
      if (eval->diameter >= current->diameter) current = std::move(*eval);
      if (out.best > before) {
        stagnant = 0;
        continue;
      }
    }
    ++stagnant;
  }
  return out;
}

}  // namespace detail

// Seeded randomized search. Only states passing validation and dimension
// reduction are scored, so the result never exceeds sigma_exact. With w
// workers, runs w independent climbs on seeds seed..seed+w-1 and keeps the
// best value (ties: lowest seed), each with the full budget.
inline SigmaResult sigma_search(int d, int n, uint64_t budget, uint64_t seed,
                                const SearchOptions& options = {}) {
  if (d < 1 || n < d) throw InvalidArgument("sigma_search requires 1 <= d <= n");
  if (budget < 1) throw InvalidArgument("budget must be positive");
  if (options.workers < 1) throw InvalidArgument("workers must be positive");

  std::vector<detail::SearchOutcome> outcomes(
      static_cast<std::size_t>(options.workers));
  if (options.workers == 1) {
    outcomes[0] = detail::search_run(d, n, budget, seed);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(options.workers));
    for (int w = 0; w < options.workers; ++w)
      threads.emplace_back([&outcomes, d, n, budget, seed, w] {
        outcomes[static_cast<std::size_t>(w)] =
            detail::search_run(d, n, budget, seed + static_cast<uint64_t>(w));
      });
    for (auto& t : threads) t.join();
  }

  int pick = 0;
  for (int w = 1; w < options.workers; ++w)
    if (outcomes[static_cast<std::size_t>(w)].best >
        outcomes[static_cast<std::size_t>(pick)].best)
      pick = w;

  SigmaResult result;
  result.d = d;
  result.n = n;
  result.exhaustive = false;
  for (const auto& o : outcomes) result.explored += o.explored;
  const auto& chosen = outcomes[static_cast<std::size_t>(pick)];
  assert(chosen.witness);
  result.value = chosen.best;
  result.witness = *chosen.witness;
  result.witness_n_eff = static_cast<int>(result.witness.support().size());
  return result;
}

}  // namespace spg
