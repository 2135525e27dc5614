#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "boba/graph.hpp"
#include "boba/types.hpp"

namespace boba {

struct LcdParams {
  vertex_t n = 1;
  // Independent attachment processes; each contributes one out-edge per vertex.
  std::uint32_t c = 1;
  std::uint64_t seed = 0;
};

/// Preferential attachment in the LCD formulation, run c times on a shared
/// vertex set. At step t (0-based vertex t) each run draws uniformly from the
/// 2t endpoints of its existing edges plus one half-edge owned by t itself, so
/// t attaches to s with probability deg(s)/(2t+1) and to itself with
/// probability 1/(2t+1). Edge t*c + r is vertex t's edge in run r, so sources
/// are ascending and IDs equal arrival order.
inline CooGraph generate_lcd(const LcdParams& params) {
  if (params.n < 1 || params.c < 1) throw argument_error("LCD needs n >= 1 and c >= 1");
  const vertex_t n = params.n;
  const std::uint32_t c = params.c;
  const edge_t m = static_cast<edge_t>(n) * c;
  std::vector<vertex_t> src(m);
  std::vector<vertex_t> dst(m);
  std::mt19937_64 rng(params.seed);

  for (vertex_t t = 0; t < n; ++t) {
    const edge_t endpoints = 2 * static_cast<edge_t>(t);
    for (std::uint32_t r = 0; r < c; ++r) {
      const edge_t e = static_cast<edge_t>(t) * c + r;
      src[e] = t;
      const edge_t k = std::uniform_int_distribution<edge_t>(0, endpoints)(rng);
      if (k == endpoints) {
        dst[e] = t;
      } else {
        // Endpoint k of run r: source of its edge k/2 when even, target when odd.
        const edge_t run_edge = k / 2;
        dst[e] = (k % 2 == 0) ? static_cast<vertex_t>(run_edge) : dst[run_edge * c + r];
      }
    }
  }
  return CooGraph(n, std::move(src), std::move(dst));
}

/// Random simple d-regular graph by the configuration model with rejection,
/// emitted as both directions of every edge sorted by (destination, source).
inline CooGraph generate_regular_sorted(vertex_t n, std::uint32_t d, std::uint64_t seed,
                                        std::uint32_t max_attempts = 1000) {
  if ((static_cast<std::uint64_t>(n) * d) % 2 != 0 || d >= n)
    throw argument_error("no simple " + std::to_string(d) + "-regular graph on " +
                         std::to_string(n) + " vertices");
  std::mt19937_64 rng(seed);
  std::vector<vertex_t> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * d);
  for (vertex_t v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);

  std::vector<std::pair<vertex_t, vertex_t>> directed;
  for (std::uint32_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<std::pair<vertex_t, vertex_t>> edges;
    bool simple = true;
    for (std::size_t k = 0; simple && k < stubs.size(); k += 2) {
      const auto [a, b] = std::minmax(stubs[k], stubs[k + 1]);
      simple = a != b && edges.emplace(a, b).second;
    }
    if (!simple) continue;
    directed.clear();
    for (const auto& [a, b] : edges) {
      directed.emplace_back(b, a);  // (dst, src) keys
      directed.emplace_back(a, b);
    }
    std::sort(directed.begin(), directed.end());
    std::vector<vertex_t> src(directed.size());
    std::vector<vertex_t> dst(directed.size());
    for (std::size_t k = 0; k < directed.size(); ++k) {
      dst[k] = directed[k].first;
      src[k] = directed[k].second;
    }
    return CooGraph(n, std::move(src), std::move(dst));
  }
  throw retry_exhausted_error("configuration model produced no simple graph in " +
                              std::to_string(max_attempts) + " attempts");
}

// 4-neighbor lattice with row-major IDs, both directions of each lattice edge.
inline CooGraph generate_grid(vertex_t rows, vertex_t cols) {
  if (rows < 1 || cols < 1) throw argument_error("grid needs rows, cols >= 1");
  std::vector<vertex_t> src;
  std::vector<vertex_t> dst;
  auto id = [cols](vertex_t r, vertex_t c) { return r * cols + c; };
  auto link = [&](vertex_t a, vertex_t b) {
    src.push_back(a);
    dst.push_back(b);
    src.push_back(b);
    dst.push_back(a);
  };
  for (vertex_t r = 0; r < rows; ++r)
    for (vertex_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) link(id(r, c), id(r, c + 1));
      if (r + 1 < rows) link(id(r, c), id(r + 1, c));
    }
  return CooGraph(rows * cols, std::move(src), std::move(dst));
}

}  // namespace boba
