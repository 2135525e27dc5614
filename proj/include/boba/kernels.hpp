#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "boba/graph.hpp"
#include "boba/parallel.hpp"
#include "boba/types.hpp"

namespace boba {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// y(v) = sum over in-neighbors u of w(u->v) * x(u). `in_rows` is the CSR of
/// the reversed edge list. Each row is summed in stored order, so the result is
/// independent of the thread count.
inline std::vector<double> spmv_pull(const CsrGraph& in_rows, std::span<const double> x,
                                     unsigned threads = 1) {
  if (x.size() != in_rows.n())
    throw argument_error("spmv: vector length " + std::to_string(x.size()) +
                         " does not match n=" + std::to_string(in_rows.n()));
  std::vector<double> y(in_rows.n(), 0.0);
  const auto offsets = in_rows.offsets();
  const auto indices = in_rows.indices();
  parallel_for_chunks(0, in_rows.n(), threads, [&](std::size_t lo, std::size_t hi, unsigned) {
    for (std::size_t v = lo; v < hi; ++v) {
      double acc = 0.0;
      for (edge_t e = offsets[v]; e < offsets[v + 1]; ++e) acc += in_rows.weight(e) * x[indices[e]];
      y[v] = acc;
    }
  });
  return y;
}

// Scatter form over the forward CSR: every source adds w * x(u) into its targets.
inline std::vector<double> spmv_push(const CsrGraph& out_rows, std::span<const double> x) {
  if (x.size() != out_rows.n()) throw argument_error("spmv: vector length does not match n");
  std::vector<double> y(out_rows.n(), 0.0);
  for (vertex_t u = 0; u < out_rows.n(); ++u)
    for (edge_t e = out_rows.offsets()[u]; e < out_rows.offsets()[u + 1]; ++e)
      y[out_rows.indices()[e]] += out_rows.weight(e) * x[u];
  return y;
}

struct PageRankResult {
  std::vector<double> rank;
  std::uint32_t iterations = 0;
};

struct PageRankParams {
  double damping = 0.85;
  double tol = 1e-6;
  std::uint32_t max_iters = 100;
};

/// Power iteration on the out-degree-normalized transition (edge multiplicity
/// counts) with uniform teleport. Mass of vertices without out-edges is spread
/// uniformly. Stops once the L1 change drops below tol.
inline PageRankResult pagerank(const CsrGraph& out_rows, const PageRankParams& params = {}) {
  if (!(params.damping > 0.0 && params.damping < 1.0))
    throw argument_error("pagerank damping must lie in (0, 1)");
  const vertex_t n = out_rows.n();
  PageRankResult result;
  if (n == 0) return result;
  const double inv_n = 1.0 / n;
  std::vector<double> rank(n, inv_n);
  std::vector<double> next(n);
  std::vector<double> share(n);

  while (result.iterations < params.max_iters) {
    double dangling = 0.0;
    for (vertex_t u = 0; u < n; ++u) {
      const edge_t deg = out_rows.degree(u);
      if (deg == 0) {
        dangling += rank[u];
        share[u] = 0.0;
      } else {
        share[u] = rank[u] / static_cast<double>(deg);
      }
    }
    const double base = (1.0 - params.damping) * inv_n + params.damping * dangling * inv_n;
    std::fill(next.begin(), next.end(), 0.0);
    for (vertex_t u = 0; u < n; ++u)
      for (const vertex_t v : out_rows.neighbors(u)) next[v] += share[u];
    double delta = 0.0;
    for (vertex_t v = 0; v < n; ++v) {
      next[v] = base + params.damping * next[v];
      delta += std::abs(next[v] - rank[v]);
    }
    rank.swap(next);
    ++result.iterations;
    if (delta < params.tol) break;
  }
  result.rank = std::move(rank);
  return result;
}

/// Counts each triangle once: for every edge u < v, merges the parts of N(u)
/// and N(v) above v. Requires a symmetric graph whose rows are strictly
/// ascending (sorted, duplicate-free).
inline std::uint64_t triangle_count(const CsrGraph& sym) {
  const vertex_t n = sym.n();
  for (vertex_t v = 0; v < n; ++v) {
    const auto nb = sym.neighbors(v);
    for (std::size_t k = 1; k < nb.size(); ++k)
      if (nb[k - 1] >= nb[k])
        throw precondition_error("triangle_count: row " + std::to_string(v) +
                                 " is not strictly ascending");
  }
  std::uint64_t count = 0;
  for (vertex_t u = 0; u < n; ++u) {
    const auto nu = sym.neighbors(u);
    for (const vertex_t v : nu) {
      if (v <= u) continue;
      const auto nv = sym.neighbors(v);
      auto i = std::upper_bound(nu.begin(), nu.end(), v);
      auto j = std::upper_bound(nv.begin(), nv.end(), v);
      while (i != nu.end() && j != nv.end()) {
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
    }
  }
  return count;
}

struct SsspResult {
  std::vector<double> distance;
  std::uint32_t rounds = 0;
};

/// Frontier Bellman-Ford: each round relaxes the out-edges of the vertices
/// improved in the previous round, until no distance changes.
inline SsspResult sssp(const CsrGraph& out_rows, vertex_t source) {
  const vertex_t n = out_rows.n();
  if (source >= n) throw argument_error("sssp source " + std::to_string(source) + " >= n");
  for (const double w : out_rows.weights())
    if (w < 0.0 || std::isnan(w)) throw argument_error("sssp requires non-negative weights");

  SsspResult result;
  result.distance.assign(n, kUnreachable);
  auto& dist = result.distance;
  dist[source] = 0.0;
  std::vector<vertex_t> frontier{source};
  std::vector<vertex_t> next;
  std::vector<bool> queued(n, false);
  while (!frontier.empty()) {
    ++result.rounds;
    next.clear();
    for (const vertex_t u : frontier) {
      for (edge_t e = out_rows.offsets()[u]; e < out_rows.offsets()[u + 1]; ++e) {
        const vertex_t v = out_rows.indices()[e];
        const double cand = dist[u] + out_rows.weight(e);
        if (cand < dist[v]) {
          dist[v] = cand;
          if (!queued[v]) {
            queued[v] = true;
            next.push_back(v);
          }
        }
      }
    }
    for (const vertex_t v : next) queued[v] = false;
    frontier.swap(next);
  }
  return result;
}

}  // namespace boba
