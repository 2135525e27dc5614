#pragma once

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "boba/parallel.hpp"
#include "boba/types.hpp"

namespace boba {

/// Edge list (I, J) over vertices [0, n). Duplicate edges and self-loops are
/// allowed. Weights are optional; an unweighted graph reports 1.0 for every edge.
class CooGraph {
 public:
  CooGraph() = default;

  CooGraph(vertex_t n, std::vector<vertex_t> src, std::vector<vertex_t> dst,
           std::vector<double> weights = {})
      : n_(n), src_(std::move(src)), dst_(std::move(dst)), weights_(std::move(weights)) {
    if (src_.size() != dst_.size())
      throw malformed_input_error("COO source and destination arrays differ in length");
    if (!weights_.empty() && weights_.size() != src_.size())
      throw malformed_input_error("COO weight array length differs from edge count");
    for (std::size_t i = 0; i < src_.size(); ++i) {
      if (src_[i] >= n_ || dst_[i] >= n_)
        throw malformed_input_error("edge " + std::to_string(i) + " references vertex >= n (" +
                                    std::to_string(n_) + ")");
    }
  }

  vertex_t n() const noexcept { return n_; }
  edge_t m() const noexcept { return src_.size(); }
  std::span<const vertex_t> src() const noexcept { return src_; }
  std::span<const vertex_t> dst() const noexcept { return dst_; }
  bool has_weights() const noexcept { return !weights_.empty(); }
  std::span<const double> weights() const noexcept { return weights_; }
  double weight(edge_t i) const noexcept { return weights_.empty() ? 1.0 : weights_[i]; }

  // Vertex at position i of the flattened list I++J, i in [0, 2m).
  vertex_t flat(edge_t i) const noexcept {
    return i < src_.size() ? src_[i] : dst_[i - src_.size()];
  }

  friend bool operator==(const CooGraph&, const CooGraph&) = default;

 private:
  vertex_t n_ = 0;
  std::vector<vertex_t> src_;
  std::vector<vertex_t> dst_;
  std::vector<double> weights_;
};

/// Compressed sparse rows: row v's neighbors are indices[offsets[v], offsets[v+1]).
class CsrGraph {
 public:
  CsrGraph() : offsets_(1, 0) {}

  CsrGraph(std::vector<edge_t> offsets, std::vector<vertex_t> indices,
           std::vector<double> weights = {})
      : offsets_(std::move(offsets)), indices_(std::move(indices)), weights_(std::move(weights)) {
    if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != indices_.size())
      throw malformed_input_error("CSR offsets must start at 0 and end at m");
    if (!std::is_sorted(offsets_.begin(), offsets_.end()))
      throw malformed_input_error("CSR offsets must be non-decreasing");
    if (!weights_.empty() && weights_.size() != indices_.size())
      throw malformed_input_error("CSR weight array length differs from edge count");
    const auto nv = n();
    for (const vertex_t u : indices_)
      if (u >= nv) throw malformed_input_error("CSR index references vertex >= n");
  }

  vertex_t n() const noexcept { return static_cast<vertex_t>(offsets_.size() - 1); }
  edge_t m() const noexcept { return indices_.size(); }
  std::span<const edge_t> offsets() const noexcept { return offsets_; }
  std::span<const vertex_t> indices() const noexcept { return indices_; }
  bool has_weights() const noexcept { return !weights_.empty(); }
  std::span<const double> weights() const noexcept { return weights_; }

  edge_t degree(vertex_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::span<const vertex_t> neighbors(vertex_t v) const noexcept {
    return std::span<const vertex_t>(indices_).subspan(offsets_[v], degree(v));
  }
  double weight(edge_t e) const noexcept { return weights_.empty() ? 1.0 : weights_[e]; }

  friend bool operator==(const CsrGraph&, const CsrGraph&) = default;

 private:
  std::vector<edge_t> offsets_;
  std::vector<vertex_t> indices_;
  std::vector<double> weights_;
};

/// Bijection on [0, n). order[k] is the old ID placed at new position k;
/// label[old] is that vertex's new position.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(vertex_t n) {
    std::vector<vertex_t> order(n);
    std::iota(order.begin(), order.end(), vertex_t{0});
    return from_order(std::move(order));
  }

  static Permutation from_order(std::vector<vertex_t> order) {
    Permutation p;
    p.label_ = invert(order);
    p.order_ = std::move(order);
    return p;
  }

  static Permutation from_label(std::vector<vertex_t> label) {
    Permutation p;
    p.order_ = invert(label);
    p.label_ = std::move(label);
    return p;
  }

  vertex_t n() const noexcept { return static_cast<vertex_t>(order_.size()); }
  std::span<const vertex_t> order() const noexcept { return order_; }
  std::span<const vertex_t> label() const noexcept { return label_; }
  vertex_t order(vertex_t k) const noexcept { return order_[k]; }
  vertex_t label(vertex_t v) const noexcept { return label_[v]; }

  Permutation inverse() const {
    Permutation p;
    p.order_ = label_;
    p.label_ = order_;
    return p;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  static std::vector<vertex_t> invert(std::span<const vertex_t> forward) {
    const std::size_t n = forward.size();
    constexpr vertex_t kNone = std::numeric_limits<vertex_t>::max();
    std::vector<vertex_t> inv(n, kNone);
    for (std::size_t k = 0; k < n; ++k) {
      const vertex_t v = forward[k];
      if (v >= n || inv[v] != kNone)
        throw malformed_input_error("not a permutation: value " + std::to_string(v) +
                                    " at position " + std::to_string(k));
      inv[v] = static_cast<vertex_t>(k);
    }
    return inv;
  }

  std::vector<vertex_t> order_;
  std::vector<vertex_t> label_;
};

// Out-degree (occurrences in I) per vertex.
inline std::vector<edge_t> degrees(const CooGraph& g) {
  std::vector<edge_t> deg(g.n(), 0);
  for (const vertex_t u : g.src()) ++deg[u];
  return deg;
}

// Parallel out-degree count with relaxed atomic increments. This is the cost
// yardstick the reordering is compared against.
inline std::vector<edge_t> degrees(const CooGraph& g, unsigned threads) {
  threads = resolve_threads(threads);
  if (threads <= 1) return degrees(g);
  std::vector<edge_t> deg(g.n(), 0);
  const auto src = g.src();
  parallel_for_chunks(0, src.size(), threads, [&](std::size_t lo, std::size_t hi, unsigned) {
    for (std::size_t i = lo; i < hi; ++i)
      std::atomic_ref<edge_t>(deg[src[i]]).fetch_add(1, std::memory_order_relaxed);
  });
  return deg;
}

// In-degree + out-degree per vertex.
inline std::vector<edge_t> total_degrees(const CooGraph& g) {
  std::vector<edge_t> deg(g.n(), 0);
  for (const vertex_t u : g.src()) ++deg[u];
  for (const vertex_t v : g.dst()) ++deg[v];
  return deg;
}

namespace detail {

inline CsrGraph build_csr(vertex_t n, std::span<const vertex_t> row, std::span<const vertex_t> col,
                          std::span<const double> w) {
  std::vector<edge_t> offsets(static_cast<std::size_t>(n) + 1, 0);
  for (const vertex_t u : row) ++offsets[u + 1];
  for (vertex_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];

  std::vector<edge_t> cursor(offsets.begin(), offsets.end() - 1);
  std::vector<vertex_t> indices(row.size());
  std::vector<double> weights(w.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    const edge_t slot = cursor[row[i]]++;
    indices[slot] = col[i];
    if (!w.empty()) weights[slot] = w[i];
  }
  return CsrGraph(std::move(offsets), std::move(indices), std::move(weights));
}

}  // namespace detail

/// Stable counting-sort conversion: within a row, neighbors keep edge-list order.
inline CsrGraph coo_to_csr(const CooGraph& g) {
  return detail::build_csr(g.n(), g.src(), g.dst(), g.weights());
}

// CSR of the reversed edge list (rows are in-neighborhoods), built without
// materializing the reversed COO.
inline CsrGraph coo_to_csr_reversed(const CooGraph& g) {
  return detail::build_csr(g.n(), g.dst(), g.src(), g.weights());
}

// Expands rows back to an edge list in row-major order.
inline CooGraph csr_to_coo(const CsrGraph& csr) {
  std::vector<vertex_t> src(csr.m());
  for (vertex_t v = 0; v < csr.n(); ++v)
    std::fill(src.begin() + static_cast<std::ptrdiff_t>(csr.offsets()[v]),
              src.begin() + static_cast<std::ptrdiff_t>(csr.offsets()[v + 1]), v);
  const auto idx = csr.indices();
  const auto w = csr.weights();
  return CooGraph(csr.n(), std::move(src), std::vector<vertex_t>(idx.begin(), idx.end()),
                  std::vector<double>(w.begin(), w.end()));
}

// Swaps I and J, so CSR rows of the result are in-neighborhoods.
inline CooGraph reverse_edges(const CooGraph& g) {
  const auto s = g.src();
  const auto d = g.dst();
  const auto w = g.weights();
  return CooGraph(g.n(), std::vector<vertex_t>(d.begin(), d.end()),
                  std::vector<vertex_t>(s.begin(), s.end()),
                  std::vector<double>(w.begin(), w.end()));
}

/// Relabels every endpoint through p.label; edge order and weights unchanged.
inline CooGraph apply_permutation(const CooGraph& g, const Permutation& p, unsigned threads = 1) {
  if (p.n() != g.n())
    throw argument_error("permutation size " + std::to_string(p.n()) +
                         " does not match vertex count " + std::to_string(g.n()));
  const auto label = p.label();
  const auto s = g.src();
  const auto d = g.dst();
  std::vector<vertex_t> src(g.m());
  std::vector<vertex_t> dst(g.m());
  parallel_for_chunks(0, g.m(), threads, [&](std::size_t lo, std::size_t hi, unsigned) {
    for (std::size_t i = lo; i < hi; ++i) {
      src[i] = label[s[i]];
      dst[i] = label[d[i]];
    }
  });
  const auto w = g.weights();
  return CooGraph(g.n(), std::move(src), std::move(dst), std::vector<double>(w.begin(), w.end()));
}

namespace detail {

inline CooGraph gather_edges(const CooGraph& g, std::span<const edge_t> perm) {
  std::vector<vertex_t> src(perm.size());
  std::vector<vertex_t> dst(perm.size());
  std::vector<double> w(g.has_weights() ? perm.size() : 0);
  for (std::size_t k = 0; k < perm.size(); ++k) {
    src[k] = g.src()[perm[k]];
    dst[k] = g.dst()[perm[k]];
    if (g.has_weights()) w[k] = g.weights()[perm[k]];
  }
  return CooGraph(g.n(), std::move(src), std::move(dst), std::move(w));
}

}  // namespace detail

/// Edges sorted by destination ascending; ties keep their original order.
inline CooGraph sort_coo_by_destination(const CooGraph& g) {
  std::vector<edge_t> perm(g.m());
  std::iota(perm.begin(), perm.end(), edge_t{0});
  const auto dst = g.dst();
  std::stable_sort(perm.begin(), perm.end(),
                   [&](edge_t a, edge_t b) { return dst[a] < dst[b]; });
  return detail::gather_edges(g, perm);
}

// Edges sorted by (source, destination). Converting the result yields CSR rows
// with ascending adjacency lists.
inline CooGraph sort_coo_by_source(const CooGraph& g) {
  std::vector<edge_t> perm(g.m());
  std::iota(perm.begin(), perm.end(), edge_t{0});
  const auto src = g.src();
  const auto dst = g.dst();
  std::stable_sort(perm.begin(), perm.end(), [&](edge_t a, edge_t b) {
    return src[a] != src[b] ? src[a] < src[b] : dst[a] < dst[b];
  });
  return detail::gather_edges(g, perm);
}

/// Undirected simple version of g: both directions of every edge, duplicates
/// removed, sorted by (source, destination). Weights are dropped.
inline CooGraph symmetrize(const CooGraph& g, bool drop_self_loops) {
  std::vector<std::pair<vertex_t, vertex_t>> edges;
  edges.reserve(2 * g.m());
  for (edge_t i = 0; i < g.m(); ++i) {
    const vertex_t u = g.src()[i];
    const vertex_t v = g.dst()[i];
    if (u == v) {
      if (!drop_self_loops) edges.emplace_back(u, v);
      continue;
    }
    edges.emplace_back(u, v);
    edges.emplace_back(v, u);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<vertex_t> src(edges.size());
  std::vector<vertex_t> dst(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) std::tie(src[k], dst[k]) = edges[k];
  return CooGraph(g.n(), std::move(src), std::move(dst));
}

// True when every edge u->v has a matching v->u (as multisets of pairs).
inline bool is_symmetric(const CooGraph& g) {
  std::vector<std::pair<vertex_t, vertex_t>> fwd;
  std::vector<std::pair<vertex_t, vertex_t>> bwd;
  fwd.reserve(g.m());
  bwd.reserve(g.m());
  for (edge_t i = 0; i < g.m(); ++i) {
    fwd.emplace_back(g.src()[i], g.dst()[i]);
    bwd.emplace_back(g.dst()[i], g.src()[i]);
  }
  std::sort(fwd.begin(), fwd.end());
  std::sort(bwd.begin(), bwd.end());
  return fwd == bwd;
}

// CSR whose rows are sorted, duplicate-free out-neighbor sets. Weights dropped.
inline CsrGraph out_neighbor_sets(const CooGraph& g) {
  const CsrGraph csr = coo_to_csr(g);
  std::vector<edge_t> offsets(static_cast<std::size_t>(g.n()) + 1, 0);
  std::vector<vertex_t> indices;
  indices.reserve(csr.m());
  std::vector<vertex_t> row;
  for (vertex_t v = 0; v < g.n(); ++v) {
    const auto nb = csr.neighbors(v);
    row.assign(nb.begin(), nb.end());
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    indices.insert(indices.end(), row.begin(), row.end());
    offsets[v + 1] = indices.size();
  }
  return CsrGraph(std::move(offsets), std::move(indices));
}

}  // namespace boba
