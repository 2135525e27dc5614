// Shared fixtures and independent oracles for the test suites.
#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "boba/boba.hpp"

namespace boba::testing {

// Figure-2 road graph. City IDs are alphabetical so that the BOBA order is
// not the identity.
enum City : vertex_t {
  Boulder, Chicago, DC, Eureka, Guelph, LA, Midland, Nanaimo, Puebla, Rapids, Seattle, Toronto,
  Vancouver, kCityCount
};

inline const std::vector<std::string>& city_names() {
  static const std::vector<std::string> names = {
      "Boulder", "Chicago", "DC",     "Eureka",  "Guelph",  "LA",       "Midland",
      "Nanaimo", "Puebla",  "Rapids", "Seattle", "Toronto", "Vancouver"};
  return names;
}

// I row then J row, as printed in the figure.
inline CooGraph road_graph() {
  std::vector<vertex_t> I = {Toronto, Midland, Toronto, Rapids, Toronto, Guelph, Toronto, Chicago,
                             Chicago, Boulder, Vancouver, Boulder, Seattle, Nanaimo, Seattle,
                             Eureka, Seattle, LA, LA, Puebla, DC, Puebla, DC, Toronto};
  std::vector<vertex_t> J = {Midland, Toronto, Rapids, Toronto, Guelph, Toronto, Chicago, Toronto,
                             Boulder, Chicago, Boulder, Vancouver, Nanaimo, Seattle, Eureka,
                             Seattle, LA, Seattle, Puebla, LA, Puebla, DC, Toronto, DC};
  return CooGraph(kCityCount, std::move(I), std::move(J));
}

inline const std::vector<vertex_t>& road_boba_order() {
  static const std::vector<vertex_t> order = {Toronto, Midland, Rapids,  Guelph, Chicago,
                                              Boulder, Vancouver, Seattle, Nanaimo, Eureka,
                                              LA,      Puebla,    DC};
  return order;
}

// Figure-1 two-hub star: leaves 1..10 are IDs 0..9, a = 10, b = 11.
inline CooGraph two_hub_graph() {
  const vertex_t a = 10, b = 11;
  std::vector<vertex_t> I = {0, 1, 2, 3, b, 4, 5, 6, 7, 8, 9, a};
  std::vector<vertex_t> J = {a, a, a, a, a, a, b, b, b, b, b, b};
  return CooGraph(12, std::move(I), std::move(J));
}

struct RandomGraphSpec {
  vertex_t max_n = 50;
  edge_t max_m = 200;
  bool weighted = false;
  bool integer_weights = false;
};

// Random multigraph: self-loops, duplicates and isolated vertices all occur.
inline CooGraph random_graph(std::mt19937_64& rng, const RandomGraphSpec& spec = {}) {
  const auto n = std::uniform_int_distribution<vertex_t>(1, spec.max_n)(rng);
  const auto m = std::uniform_int_distribution<edge_t>(0, spec.max_m)(rng);
  std::uniform_int_distribution<vertex_t> pick(0, n - 1);
  std::vector<vertex_t> I(m), J(m);
  std::vector<double> w;
  for (edge_t i = 0; i < m; ++i) {
    I[i] = pick(rng);
    J[i] = pick(rng);
  }
  if (spec.weighted) {
    std::uniform_int_distribution<int> iw(1, 9);
    std::uniform_real_distribution<double> rw(0.1, 5.0);
    for (edge_t i = 0; i < m; ++i)
      w.push_back(spec.integer_weights ? static_cast<double>(iw(rng)) : rw(rng));
  }
  return CooGraph(n, std::move(I), std::move(J), std::move(w));
}

// Erdős–Rényi G(n, p), undirected simple, returned symmetrized.
inline CooGraph erdos_renyi(vertex_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<vertex_t> I, J;
  for (vertex_t u = 0; u < n; ++u)
    for (vertex_t v = u + 1; v < n; ++v)
      if (coin(rng)) {
        I.push_back(u);
        J.push_back(v);
      }
  return symmetrize(CooGraph(n, std::move(I), std::move(J)), true);
}

inline std::multiset<std::pair<vertex_t, vertex_t>> edge_multiset(const CooGraph& g) {
  std::multiset<std::pair<vertex_t, vertex_t>> out;
  for (edge_t i = 0; i < g.m(); ++i) out.emplace(g.src()[i], g.dst()[i]);
  return out;
}

inline bool is_bijection(std::span<const vertex_t> order, vertex_t n) {
  if (order.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (const vertex_t v : order) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Oracles. Written against the definitions directly, sharing no code with the
// library implementations they check.

inline std::vector<std::set<vertex_t>> out_sets(const CooGraph& g) {
  std::vector<std::set<vertex_t>> sets(g.n());
  for (edge_t i = 0; i < g.m(); ++i) sets[g.src()[i]].insert(g.dst()[i]);
  return sets;
}

inline std::uint64_t shared(const std::set<vertex_t>& a, const std::set<vertex_t>& b) {
  std::uint64_t k = 0;
  for (const vertex_t x : a) k += b.count(x);
  return k;
}

inline std::uint64_t nscore_oracle(const CooGraph& g, std::span<const vertex_t> order) {
  const auto sets = out_sets(g);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) total += shared(sets[order[i]], sets[order[i + 1]]);
  return total;
}

// Maximum nscore by recursive enumeration of all orderings.
inline std::uint64_t optimal_nscore_oracle(const CooGraph& g) {
  const auto sets = out_sets(g);
  const vertex_t n = g.n();
  std::vector<bool> used(n, false);
  std::uint64_t best = 0;
  auto rec = [&](auto&& self, vertex_t depth, vertex_t prev, std::uint64_t score) -> void {
    if (depth == n) {
      best = std::max(best, score);
      return;
    }
    for (vertex_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      self(self, depth + 1, v, score + (depth > 0 ? shared(sets[prev], sets[v]) : 0));
      used[v] = false;
    }
  };
  rec(rec, 0, 0, 0);
  return best;
}

// Minimum bandwidth over all n! labelings, for tiny graphs.
inline std::uint64_t min_bandwidth_oracle(const CooGraph& g) {
  std::vector<vertex_t> label(g.n());
  std::iota(label.begin(), label.end(), vertex_t{0});
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  do {
    std::uint64_t bw = 0;
    for (edge_t i = 0; i < g.m(); ++i) {
      const auto a = label[g.src()[i]];
      const auto b = label[g.dst()[i]];
      bw = std::max<std::uint64_t>(bw, a > b ? a - b : b - a);
    }
    best = std::min(best, bw);
  } while (std::next_permutation(label.begin(), label.end()));
  return best;
}

inline std::vector<std::vector<double>> dense_matrix(const CooGraph& g) {
  std::vector<std::vector<double>> a(g.n(), std::vector<double>(g.n(), 0.0));
  for (edge_t i = 0; i < g.m(); ++i) a[g.dst()[i]][g.src()[i]] += g.weight(i);
  return a;
}

// y = A x with A[v][u] = sum of weights of edges u -> v.
inline std::vector<double> dense_spmv(const CooGraph& g, const std::vector<double>& x) {
  const auto a = dense_matrix(g);
  std::vector<double> y(g.n(), 0.0);
  for (vertex_t v = 0; v < g.n(); ++v)
    for (vertex_t u = 0; u < g.n(); ++u) y[v] += a[v][u] * x[u];
  return y;
}

inline std::vector<double> dense_pagerank(const CooGraph& g, double damping, double tol,
                                          std::uint32_t max_iters) {
  const vertex_t n = g.n();
  std::vector<double> outdeg(n, 0.0);
  for (edge_t i = 0; i < g.m(); ++i) outdeg[g.src()[i]] += 1.0;
  // P[v][u] = (#edges u->v) / outdeg(u), dangling columns uniform.
  std::vector<std::vector<double>> P(n, std::vector<double>(n, 0.0));
  for (edge_t i = 0; i < g.m(); ++i) P[g.dst()[i]][g.src()[i]] += 1.0 / outdeg[g.src()[i]];
  for (vertex_t u = 0; u < n; ++u)
    if (outdeg[u] == 0)
      for (vertex_t v = 0; v < n; ++v) P[v][u] = 1.0 / n;
  std::vector<double> r(n, 1.0 / n), next(n);
  for (std::uint32_t it = 0; it < max_iters; ++it) {
    double delta = 0;
    for (vertex_t v = 0; v < n; ++v) {
      double acc = 0;
      for (vertex_t u = 0; u < n; ++u) acc += P[v][u] * r[u];
      next[v] = (1 - damping) / n + damping * acc;
      delta += std::abs(next[v] - r[v]);
    }
    r = next;
    if (delta < tol) break;
  }
  return r;
}

inline std::uint64_t cubic_triangles(const CooGraph& g) {
  const vertex_t n = g.n();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (edge_t i = 0; i < g.m(); ++i)
    if (g.src()[i] != g.dst()[i]) adj[g.src()[i]][g.dst()[i]] = adj[g.dst()[i]][g.src()[i]] = true;
  std::uint64_t t = 0;
  for (vertex_t a = 0; a < n; ++a)
    for (vertex_t b = a + 1; b < n; ++b)
      if (adj[a][b])
        for (vertex_t c = b + 1; c < n; ++c) t += adj[a][c] && adj[b][c];
  return t;
}

inline std::vector<double> dijkstra(const CooGraph& g, vertex_t source) {
  std::vector<std::vector<std::pair<vertex_t, double>>> adj(g.n());
  for (edge_t i = 0; i < g.m(); ++i) adj[g.src()[i]].emplace_back(g.dst()[i], g.weight(i));
  std::vector<double> d(g.n(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, vertex_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  d[source] = 0;
  pq.emplace(0.0, source);
  while (!pq.empty()) {
    const auto [du, u] = pq.top();
    pq.pop();
    if (du > d[u]) continue;
    for (const auto& [v, w] : adj[u])
      if (du + w < d[v]) {
        d[v] = du + w;
        pq.emplace(d[v], v);
      }
  }
  return d;
}

// Permutes a per-vertex vector into new labels: out[label[v]] = x[v].
inline std::vector<double> permute(const std::vector<double>& x, const Permutation& p) {
  std::vector<double> out(x.size());
  for (vertex_t v = 0; v < p.n(); ++v) out[p.label(v)] = x[v];
  return out;
}

// Per-test scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("boba_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace boba::testing
