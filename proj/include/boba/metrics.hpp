#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "boba/graph.hpp"
#include "boba/types.hpp"

namespace boba {

/// Locality scores of one (graph, ordering) pair.
struct LocalityReport {
  std::uint64_t nscore = 0;
  std::uint64_t gscore = 0;
  std::uint32_t gscore_window = 1;
  double nbr = 0.0;
  std::uint64_t bandwidth = 0;
  std::uint32_t line_size = 32;
  // Edge count; upper bound on the optimal nscore.
  edge_t m = 0;
};

namespace detail {

inline std::uint64_t sorted_intersection_size(std::span<const vertex_t> a,
                                              std::span<const vertex_t> b) {
  std::uint64_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

inline bool sorted_contains(std::span<const vertex_t> a, vertex_t x) {
  return std::binary_search(a.begin(), a.end(), x);
}

inline void require_same_size(const CooGraph& g, const Permutation& p) {
  if (p.n() != g.n()) throw argument_error("permutation size does not match vertex count");
}

}  // namespace detail

// Sum over consecutive positions of |N(p_i) ∩ N(p_{i+1})|, N = out-neighbor set.
inline std::uint64_t nscore(const CsrGraph& sets, const Permutation& p) {
  std::uint64_t total = 0;
  const auto order = p.order();
  for (std::size_t k = 1; k < order.size(); ++k)
    total += detail::sorted_intersection_size(sets.neighbors(order[k - 1]),
                                              sets.neighbors(order[k]));
  return total;
}

inline std::uint64_t nscore(const CooGraph& g, const Permutation& p) {
  detail::require_same_size(g, p);
  return nscore(out_neighbor_sets(g), p);
}

/// Windowed pair score: for each position i, sums s(p_i, p_j) over the up to w
/// preceding positions j, where s(u, v) = |N(u) ∩ N(v)| plus one for each of
/// the edges u->v and v->u present in the graph.
inline std::uint64_t gscore(const CsrGraph& sets, const Permutation& p, std::uint32_t w) {
  if (w < 1) throw argument_error("gscore window must be >= 1");
  std::uint64_t total = 0;
  const auto order = p.order();
  for (std::size_t i = 1; i < order.size(); ++i) {
    const vertex_t u = order[i];
    const auto nu = sets.neighbors(u);
    const std::size_t first = i > w ? i - w : 0;
    for (std::size_t j = first; j < i; ++j) {
      const vertex_t v = order[j];
      const auto nv = sets.neighbors(v);
      total += detail::sorted_intersection_size(nu, nv);
      total += detail::sorted_contains(nu, v) ? 1 : 0;
      total += detail::sorted_contains(nv, u) ? 1 : 0;
    }
  }
  return total;
}

inline std::uint64_t gscore(const CooGraph& g, const Permutation& p, std::uint32_t w) {
  detail::require_same_size(g, p);
  if (w < 1) throw argument_error("gscore window must be >= 1");
  return gscore(out_neighbor_sets(g), p, w);
}

/// Mean over rows with at least one neighbor of
/// (distinct cache lines touched by the row) / (row length), where vertex u
/// lives on line u / line_size. Rows count neighbors with multiplicity.
inline double nbr(const CsrGraph& csr, std::uint32_t line_size) {
  if (line_size < 1) throw argument_error("line size must be >= 1");
  if (csr.m() == 0) throw undefined_metric_error("NBR is undefined for a graph with no edges");
  double sum = 0.0;
  std::uint64_t rows = 0;
  std::vector<vertex_t> lines;
  for (vertex_t v = 0; v < csr.n(); ++v) {
    const auto nb = csr.neighbors(v);
    if (nb.empty()) continue;
    lines.resize(nb.size());
    std::transform(nb.begin(), nb.end(), lines.begin(),
                   [line_size](vertex_t u) { return u / line_size; });
    std::sort(lines.begin(), lines.end());
    const auto distinct = std::unique(lines.begin(), lines.end()) - lines.begin();
    sum += static_cast<double>(distinct) / static_cast<double>(nb.size());
    ++rows;
  }
  return sum / static_cast<double>(rows);
}

// Largest |label(u) - label(v)| over all edges.
inline std::uint64_t bandwidth(const CooGraph& g, const Permutation& p) {
  detail::require_same_size(g, p);
  if (g.m() == 0) throw undefined_metric_error("bandwidth is undefined for an empty edge list");
  std::uint64_t best = 0;
  for (edge_t i = 0; i < g.m(); ++i) {
    const auto a = p.label(g.src()[i]);
    const auto b = p.label(g.dst()[i]);
    best = std::max<std::uint64_t>(best, a > b ? a - b : b - a);
  }
  return best;
}

struct OptimalOrdering {
  Permutation ordering;
  std::uint64_t nscore = 0;
};

/// Exhaustive maximum of nscore over all n! orderings; among optimal orderings
/// the lexicographically smallest order array wins.
inline OptimalOrdering brute_force_optimal_nscore(const CooGraph& g, vertex_t limit_n = 10) {
  if (limit_n > 10) throw argument_error("brute-force limit may not exceed 10 vertices");
  if (g.n() > limit_n)
    throw argument_error("brute force refused: n=" + std::to_string(g.n()) + " exceeds limit " +
                         std::to_string(limit_n));
  const vertex_t n = g.n();
  const CsrGraph sets = out_neighbor_sets(g);
  std::vector<std::uint64_t> shared(static_cast<std::size_t>(n) * n);
  for (vertex_t a = 0; a < n; ++a)
    for (vertex_t b = 0; b < n; ++b)
      shared[a * n + b] = detail::sorted_intersection_size(sets.neighbors(a), sets.neighbors(b));

  std::vector<vertex_t> order(n);
  std::iota(order.begin(), order.end(), vertex_t{0});
  std::vector<vertex_t> best_order = order;
  std::uint64_t best = 0;
  bool first = true;
  do {
    std::uint64_t score = 0;
    for (vertex_t k = 1; k < n; ++k) score += shared[order[k - 1] * n + order[k]];
    if (first || score > best) {
      best = score;
      best_order = order;
      first = false;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {Permutation::from_order(std::move(best_order)), best};
}

/// All locality scores for g under p. NBR is taken over the CSR rows of the
/// relabeled graph (or of its reverse when `in_neighbors` is set).
inline LocalityReport locality_report(const CooGraph& g, const Permutation& p, std::uint32_t w,
                                      std::uint32_t line_size, bool in_neighbors = false) {
  detail::require_same_size(g, p);
  LocalityReport report;
  const CsrGraph sets = out_neighbor_sets(g);
  report.nscore = nscore(sets, p);
  report.gscore = gscore(sets, p, w);
  report.gscore_window = w;
  report.line_size = line_size;
  report.m = g.m();
  const CooGraph relabeled = apply_permutation(g, p);
  report.nbr = nbr(coo_to_csr(in_neighbors ? reverse_edges(relabeled) : relabeled), line_size);
  report.bandwidth = bandwidth(g, p);
  return report;
}

}  // namespace boba
