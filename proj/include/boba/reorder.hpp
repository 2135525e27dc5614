#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boba/graph.hpp"
#include "boba/parallel.hpp"
#include "boba/types.hpp"

namespace boba {

namespace detail {

// Places `ranked` in the given order, then every vertex not in it ascending.
inline Permutation append_isolated(vertex_t n, std::vector<vertex_t> ranked,
                                   const std::vector<bool>& placed) {
  ranked.reserve(n);
  for (vertex_t v = 0; v < n; ++v)
    if (!placed[v]) ranked.push_back(v);
  return Permutation::from_order(std::move(ranked));
}

}  // namespace detail

/// Order by first appearance in I++J: one pass over I, then one over J.
/// Vertices on no edge follow in ascending ID order.
inline Permutation boba_sequential(const CooGraph& g) {
  const vertex_t n = g.n();
  std::vector<bool> seen(n, false);
  std::vector<vertex_t> order;
  order.reserve(n);
  auto visit = [&](std::span<const vertex_t> ids) {
    for (const vertex_t v : ids) {
      if (order.size() == n) return;
      if (!seen[v]) {
        seen[v] = true;
        order.push_back(v);
      }
    }
  };
  visit(g.src());
  visit(g.dst());
  for (vertex_t v = 0; order.size() < n; ++v)
    if (!seen[v]) order.push_back(v);
  return Permutation::from_order(std::move(order));
}

enum class BobaMode {
  // Per-vertex atomic minimum: reproduces boba_sequential exactly.
  deterministic,
  // Guarded plain stores; a racing writer may win with a larger index.
  relaxed,
};

inline std::string_view to_string(BobaMode mode) {
  return mode == BobaMode::deterministic ? "deterministic" : "relaxed";
}

/// For each vertex, a position in I++J (length 2m) where it occurs, or
/// kUnsetRank for vertices on no edge.
struct RankArray {
  std::vector<edge_t> r;
};

namespace detail {

// Ranks are stored in R, which is 32 bits whenever 2m fits. Unset is R's max.
template <class R>
std::vector<R> compute_ranks(const CooGraph& g, BobaMode mode, unsigned threads) {
  constexpr R unset = std::numeric_limits<R>::max();
  std::vector<R> r(g.n(), unset);
  const edge_t m = g.m();
  const auto src = g.src();
  const auto dst = g.dst();

  // With one thread there is nobody to race with, so plain stores suffice.
  const bool concurrent = resolve_threads(threads) > 1;
  auto offer = [&](vertex_t v, R i) {
    if (!concurrent) {
      if (i < r[v]) r[v] = i;
      return;
    }
    std::atomic_ref<R> slot(r[v]);
    R cur = slot.load(std::memory_order_relaxed);
    if (mode == BobaMode::deterministic) {
      while (i < cur && !slot.compare_exchange_weak(cur, i, std::memory_order_relaxed)) {
      }
    } else if (i < cur) {
      slot.store(i, std::memory_order_relaxed);
    }
  };

  parallel_for_chunks(0, m, threads, [&](std::size_t lo, std::size_t hi, unsigned) {
    for (std::size_t i = lo; i < hi; ++i) offer(src[i], static_cast<R>(i));
  });
  // Every position in J is >= m, so it can only win at a vertex that got no
  // rank from I. When all vertices are already ranked the J half is a no-op.
  std::atomic<bool> unranked{false};
  parallel_for_chunks(0, g.n(), threads, [&](std::size_t lo, std::size_t hi, unsigned) {
    for (std::size_t v = lo; v < hi; ++v)
      if (r[v] == unset) {
        unranked.store(true, std::memory_order_relaxed);
        return;
      }
  });
  if (!unranked.load()) return r;
  parallel_for_chunks(0, m, threads, [&](std::size_t lo, std::size_t hi, unsigned) {
    for (std::size_t i = lo; i < hi; ++i) offer(dst[i], static_cast<R>(m + i));
  });
  return r;
}

// Runs count(lo, hi) on every chunk of [0, len), then apply(lo, hi, offset)
// with offset = sum of counts of the preceding chunks. Both passes use the same
// chunking. Returns the grand total.
template <class T, class Count, class Apply>
T chunked_scan(std::size_t len, unsigned threads, Count&& count, Apply&& apply) {
  std::vector<T> sums(resolve_threads(threads) + 1, T{});
  parallel_for_chunks(0, len, threads, [&](std::size_t lo, std::size_t hi, unsigned c) {
    sums[c + 1] = count(lo, hi);
  });
  std::partial_sum(sums.begin(), sums.end(), sums.begin());
  parallel_for_chunks(0, len, threads, [&](std::size_t lo, std::size_t hi, unsigned c) {
    apply(lo, hi, sums[c]);
  });
  return sums.back();
}

template <class R>
Permutation map_ranks(std::span<const R> r, edge_t flat_size, unsigned threads) {
  constexpr R unset = std::numeric_limits<R>::max();
  const auto n = static_cast<vertex_t>(r.size());
  const std::size_t words = static_cast<std::size_t>((flat_size + 63) / 64);
  std::vector<std::uint64_t> present(words, 0);
  std::atomic<bool> out_of_range{false};
  const bool concurrent = resolve_threads(threads) > 1;

  parallel_for_chunks(0, n, threads, [&](std::size_t lo, std::size_t hi, unsigned) {
    for (std::size_t v = lo; v < hi; ++v) {
      const R k = r[v];
      if (k == unset) continue;
      if (k >= flat_size) {
        out_of_range.store(true, std::memory_order_relaxed);
        continue;
      }
      const std::uint64_t bit = std::uint64_t{1} << (k % 64);
      if (concurrent)
        std::atomic_ref<std::uint64_t>(present[k / 64]).fetch_or(bit, std::memory_order_relaxed);
      else
        present[k / 64] |= bit;
    }
  });
  if (out_of_range.load()) throw precondition_error("rank outside the flattened edge list");

  // base[w] = number of set bits in words before w.
  std::vector<R> base(words);
  const R ranked_total = chunked_scan<R>(
      words, threads,
      [&](std::size_t lo, std::size_t hi) {
        R acc = 0;
        for (std::size_t w = lo; w < hi; ++w) acc += static_cast<R>(std::popcount(present[w]));
        return acc;
      },
      [&](std::size_t lo, std::size_t hi, R acc) {
        for (std::size_t w = lo; w < hi; ++w) {
          base[w] = acc;
          acc += static_cast<R>(std::popcount(present[w]));
        }
      });

  std::vector<vertex_t> label(n);
  chunked_scan<vertex_t>(
      n, threads,
      [&](std::size_t lo, std::size_t hi) {
        return static_cast<vertex_t>(std::count(r.begin() + lo, r.begin() + hi, unset));
      },
      [&](std::size_t lo, std::size_t hi, vertex_t unranked_before) {
        for (std::size_t v = lo; v < hi; ++v) {
          const R k = r[v];
          if (k == unset) {
            label[v] = static_cast<vertex_t>(ranked_total + unranked_before++);
          } else {
            const std::uint64_t below = present[k / 64] & ((std::uint64_t{1} << (k % 64)) - 1);
            label[v] = static_cast<vertex_t>(base[k / 64] + std::popcount(below));
          }
        }
      });
  // Rejects duplicate ranks: two vertices sharing a bit collide on one label.
  return Permutation::from_label(std::move(label));
}

}  // namespace detail

/// First phase of parallel BOBA: every i in [0, 2m) offers itself as the rank
/// of the vertex at flat position i, keeping it when i < r[v].
inline RankArray boba_ranks(const CooGraph& g, BobaMode mode, unsigned threads) {
  return {detail::compute_ranks<edge_t>(g, mode, threads)};
}

/// Second phase: compacts the distinct ranks to positions 0..k-1 in ascending
/// rank order, k being the number of ranked vertices, then appends unranked
/// vertices ascending. A presence bitmap over [0, flat_size) is scanned by word
/// popcount, so the work is O(n + flat_size / 64).
inline Permutation map_ranks_to_permutation(const RankArray& ranks, edge_t flat_size,
                                            unsigned threads) {
  return detail::map_ranks<edge_t>(ranks.r, flat_size, threads);
}

/// Parallel BOBA. In deterministic mode the result equals boba_sequential(g).
inline Permutation boba_parallel(const CooGraph& g, BobaMode mode = BobaMode::deterministic,
                                 unsigned threads = 0) {
  const edge_t flat = 2 * g.m();
  if (flat < std::numeric_limits<std::uint32_t>::max()) {
    const auto r = detail::compute_ranks<std::uint32_t>(g, mode, threads);
    return detail::map_ranks<std::uint32_t>(r, flat, threads);
  }
  return map_ranks_to_permutation(boba_ranks(g, mode, threads), flat, threads);
}

// Vertices by total degree (in + out) descending, ties by ascending ID.
inline Permutation degree_order(const CooGraph& g) {
  const auto deg = total_degrees(g);
  std::vector<vertex_t> order(g.n());
  std::iota(order.begin(), order.end(), vertex_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](vertex_t a, vertex_t b) { return deg[a] > deg[b]; });
  return Permutation::from_order(std::move(order));
}

/// Hub sort: vertices whose total degree strictly exceeds the mean total degree
/// (2m/n) come first, by degree descending; the rest keep their ID order.
inline Permutation hub_order(const CooGraph& g) {
  const auto deg = total_degrees(g);
  const edge_t twice_m = 2 * g.m();
  const auto is_hub = [&](vertex_t v) { return deg[v] * g.n() > twice_m; };
  std::vector<vertex_t> hubs;
  std::vector<vertex_t> rest;
  for (vertex_t v = 0; v < g.n(); ++v) (is_hub(v) ? hubs : rest).push_back(v);
  std::stable_sort(hubs.begin(), hubs.end(),
                   [&](vertex_t a, vertex_t b) { return deg[a] > deg[b]; });
  hubs.insert(hubs.end(), rest.begin(), rest.end());
  return Permutation::from_order(std::move(hubs));
}

/// Reverse Cuthill-McKee on a symmetric CSR.
///
/// Components are seeded in ascending (degree, ID) order. Each seed is moved to
/// a pseudo-peripheral vertex by repeated BFS: jump to the lowest-degree vertex
/// of the last level while the eccentricity keeps growing. The component is
/// then BFS-ordered with unvisited neighbors enqueued by ascending degree. The
/// concatenated order is reversed; vertices with empty rows are appended
/// ascending afterwards.
inline Permutation rcm_order(const CsrGraph& sym) {
  const vertex_t n = sym.n();
  std::vector<vertex_t> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), vertex_t{0});
  std::stable_sort(by_degree.begin(), by_degree.end(), [&](vertex_t a, vertex_t b) {
    return sym.degree(a) < sym.degree(b);
  });

  constexpr vertex_t kUnvisited = std::numeric_limits<vertex_t>::max();
  std::vector<vertex_t> level(n, kUnvisited);
  std::vector<bool> done(n, false);
  std::vector<vertex_t> order;
  order.reserve(n);
  std::vector<vertex_t> touched;
  std::vector<vertex_t> children;

  // BFS from root within its component; returns (eccentricity, last level).
  auto bfs_levels = [&](vertex_t root) {
    for (const vertex_t v : touched) level[v] = kUnvisited;
    touched.clear();
    std::vector<vertex_t> frontier{root}, next, last;
    level[root] = 0;
    touched.push_back(root);
    vertex_t depth = 0;
    while (!frontier.empty()) {
      last = frontier;
      next.clear();
      for (const vertex_t u : frontier)
        for (const vertex_t w : sym.neighbors(u))
          if (level[w] == kUnvisited) {
            level[w] = depth + 1;
            touched.push_back(w);
            next.push_back(w);
          }
      if (!next.empty()) ++depth;
      frontier.swap(next);
    }
    return std::pair{depth, last};
  };

  for (const vertex_t seed : by_degree) {
    if (done[seed] || sym.degree(seed) == 0) continue;
    vertex_t start = seed;
    auto [ecc, last] = bfs_levels(start);
    for (;;) {
      const vertex_t candidate = *std::min_element(
          last.begin(), last.end(), [&](vertex_t a, vertex_t b) {
            return sym.degree(a) != sym.degree(b) ? sym.degree(a) < sym.degree(b) : a < b;
          });
      auto [cand_ecc, cand_last] = bfs_levels(candidate);
      if (cand_ecc <= ecc) break;
      start = candidate;
      ecc = cand_ecc;
      last = std::move(cand_last);
    }

    std::deque<vertex_t> queue{start};
    done[start] = true;
    while (!queue.empty()) {
      const vertex_t u = queue.front();
      queue.pop_front();
      order.push_back(u);
      children.clear();
      for (const vertex_t w : sym.neighbors(u))
        if (!done[w]) {
          done[w] = true;
          children.push_back(w);
        }
      std::sort(children.begin(), children.end(), [&](vertex_t a, vertex_t b) {
        return sym.degree(a) != sym.degree(b) ? sym.degree(a) < sym.degree(b) : a < b;
      });
      queue.insert(queue.end(), children.begin(), children.end());
    }
  }
  std::reverse(order.begin(), order.end());
  std::vector<bool> placed(n, false);
  for (const vertex_t v : order) placed[v] = true;
  return detail::append_isolated(n, std::move(order), placed);
}

// RCM on the symmetrized, deduplicated version of g.
inline Permutation rcm_order(const CooGraph& g) {
  return rcm_order(coo_to_csr(symmetrize(g, /*drop_self_loops=*/true)));
}

/// Uniform random bijection on [0, n), deterministic per seed.
inline Permutation random_order(vertex_t n, std::uint64_t seed) {
  std::vector<vertex_t> order(n);
  std::iota(order.begin(), order.end(), vertex_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return Permutation::from_order(std::move(order));
}

}  // namespace boba
