#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "boba/graph.hpp"
#include "boba/reorder.hpp"
#include "boba/types.hpp"

namespace boba {

/// Bijection between original vertex tokens and dense IDs. Numeric files with
/// a known ID range keep the tables implicit (token = id + base).
class LabelMap {
 public:
  LabelMap() = default;

  static LabelMap numeric(vertex_t n, vertex_t base) {
    LabelMap map;
    map.numeric_ = true;
    map.n_ = n;
    map.base_ = base;
    return map;
  }

  // Returns the ID for `token`, assigning the next dense ID on first sight.
  vertex_t intern(std::string_view token) {
    if (numeric_) throw argument_error("cannot intern into a numeric label map");
    auto [it, inserted] = token_to_id_.try_emplace(std::string(token), n_);
    if (inserted) {
      id_to_token_.emplace_back(token);
      ++n_;
    }
    return it->second;
  }

  vertex_t size() const noexcept { return n_; }

  std::optional<vertex_t> id_of(std::string_view token) const {
    if (numeric_) {
      std::uint64_t v = 0;
      const auto* end = token.data() + token.size();
      const auto [ptr, ec] = std::from_chars(token.data(), end, v);
      if (ec != std::errc{} || ptr != end || v < base_ || v - base_ >= n_) return std::nullopt;
      return static_cast<vertex_t>(v - base_);
    }
    const auto it = token_to_id_.find(std::string(token));
    if (it == token_to_id_.end()) return std::nullopt;
    return it->second;
  }

  std::string token_of(vertex_t id) const {
    if (id >= n_) throw argument_error("label map has no id " + std::to_string(id));
    if (numeric_) return std::to_string(static_cast<std::uint64_t>(id) + base_);
    return id_to_token_[id];
  }

 private:
  bool numeric_ = false;
  vertex_t n_ = 0;
  vertex_t base_ = 0;
  std::unordered_map<std::string, vertex_t> token_to_id_;
  std::vector<std::string> id_to_token_;
};

/// How a file's labels came to be: a '|'-separated list of steps such as
/// "lcd(n=100,c=3,seed=1)|randomize(seed=7)|reorder(boba)".
struct Provenance {
  std::string chain;

  void append(const std::string& step) {
    if (!chain.empty()) chain += '|';
    chain += step;
  }

  // True when the last relabeling step was a uniform random relabel.
  bool randomized() const {
    const auto last_random = chain.rfind("randomize(");
    if (last_random == std::string::npos) return false;
    return chain.find("reorder(", last_random) == std::string::npos;
  }
};

struct IngestedGraph {
  CooGraph graph;
  LabelMap labels;
  Provenance provenance;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

template <class T>
std::optional<T> parse_number(std::string_view tok) {
  T v{};
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  return in;
}

inline constexpr std::string_view kEdgeListMagic = "# boba-edgelist";

}  // namespace detail

/// Reads a coordinate-format Matrix Market file. Indices become 0-based; a
/// symmetric file emits (i,j) and (j,i) for off-diagonal entries and one (i,i)
/// for diagonal ones. Non-square matrices use max(rows, cols) vertices.
inline IngestedGraph read_matrix_market(const std::string& path) {
  auto in = detail::open_input(path);
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) throw parse_error(1, "empty file");
  ++lineno;
  const auto header = detail::split_ws(line);
  if (header.size() != 5 || detail::lower(header[0]) != "%%matrixmarket" ||
      detail::lower(header[1]) != "matrix")
    throw parse_error(lineno, "expected '%%MatrixMarket matrix ...' header");
  if (detail::lower(header[2]) != "coordinate")
    throw parse_error(lineno, "unsupported format '" + std::string(header[2]) + "'");
  const std::string field = detail::lower(header[3]);
  if (field != "pattern" && field != "real" && field != "integer")
    throw parse_error(lineno, "unsupported field '" + std::string(header[3]) + "'");
  const std::string symmetry = detail::lower(header[4]);
  if (symmetry != "general" && symmetry != "symmetric")
    throw parse_error(lineno, "unsupported symmetry '" + std::string(header[4]) + "'");
  const bool pattern = field == "pattern";
  const bool symmetric = symmetry == "symmetric";

  std::uint64_t rows = 0, cols = 0, nnz = 0;
  bool have_size = false;
  std::vector<vertex_t> src, dst;
  std::vector<double> weights;
  std::uint64_t entries = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    if (detail::is_blank(line)) continue;
    const auto tok = detail::split_ws(line);
    if (!have_size) {
      if (tok.size() != 3) throw parse_error(lineno, "expected 'rows cols nnz'");
      const auto r = detail::parse_number<std::uint64_t>(tok[0]);
      const auto c = detail::parse_number<std::uint64_t>(tok[1]);
      const auto z = detail::parse_number<std::uint64_t>(tok[2]);
      if (!r || !c || !z) throw parse_error(lineno, "non-integer size line");
      rows = *r;
      cols = *c;
      nnz = *z;
      if (std::max(rows, cols) >= std::numeric_limits<vertex_t>::max())
        throw parse_error(lineno, "dimension exceeds the 32-bit vertex range");
      have_size = true;
      src.reserve(symmetric ? 2 * nnz : nnz);
      dst.reserve(symmetric ? 2 * nnz : nnz);
      continue;
    }
    const std::size_t want = pattern ? 2 : 3;
    if (tok.size() != want)
      throw parse_error(lineno, "expected " + std::to_string(want) + " fields, got " +
                                    std::to_string(tok.size()));
    const auto i = detail::parse_number<std::uint64_t>(tok[0]);
    const auto j = detail::parse_number<std::uint64_t>(tok[1]);
    if (!i || !j) throw parse_error(lineno, "non-integer coordinate");
    if (*i < 1 || *i > rows || *j < 1 || *j > cols)
      throw parse_error(lineno, "coordinate out of declared bounds");
    if (++entries > nnz) throw parse_error(lineno, "more entries than declared");
    double w = 1.0;
    if (!pattern) {
      const auto parsed = detail::parse_number<double>(tok[2]);
      if (!parsed) throw parse_error(lineno, "non-numeric value");
      w = *parsed;
    }
    const auto u = static_cast<vertex_t>(*i - 1);
    const auto v = static_cast<vertex_t>(*j - 1);
    src.push_back(u);
    dst.push_back(v);
    if (!pattern) weights.push_back(w);
    if (symmetric && u != v) {
      src.push_back(v);
      dst.push_back(u);
      if (!pattern) weights.push_back(w);
    }
  }
  if (!have_size) throw parse_error(lineno, "missing size line");
  if (entries != nnz)
    throw parse_error(lineno, "declared " + std::to_string(nnz) + " entries, found " +
                                  std::to_string(entries));

  const auto n = static_cast<vertex_t>(std::max(rows, cols));
  IngestedGraph out{CooGraph(n, std::move(src), std::move(dst), std::move(weights)),
                    LabelMap::numeric(n, 1), {}};
  out.provenance.append("mtx");
  return out;
}

/// Reads a whitespace edge list ("u v" or "u v w" per line, '#' comments).
///
/// Tokens get dense IDs in order of first appearance, source before
/// destination on each line. Files written by write_edge_list start with a
/// "# boba-edgelist" header; those are read back with their numeric IDs and
/// vertex count intact.
inline IngestedGraph read_edge_list(const std::string& path) {
  auto in = detail::open_input(path);
  std::string line;
  std::size_t lineno = 0;

  std::optional<vertex_t> declared_n;
  Provenance provenance;
  LabelMap labels;
  std::vector<vertex_t> src, dst;
  std::vector<double> weights;
  bool weighted = false;
  bool seen_data = false;

  auto resolve = [&](std::string_view tok) -> vertex_t {
    if (declared_n) {
      const auto v = detail::parse_number<std::uint64_t>(tok);
      if (!v || *v >= *declared_n)
        throw parse_error(lineno, "vertex '" + std::string(tok) + "' outside [0, " +
                                      std::to_string(*declared_n) + ")");
      return static_cast<vertex_t>(*v);
    }
    return labels.intern(tok);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && (line[0] == '#' || line[0] == '%')) {
      if (!seen_data && std::string_view(line).starts_with(detail::kEdgeListMagic)) {
        for (const auto field : detail::split_ws(std::string_view(line).substr(
                 detail::kEdgeListMagic.size()))) {
          if (field.starts_with("n=")) {
            const auto v = detail::parse_number<std::uint64_t>(field.substr(2));
            if (!v || *v >= std::numeric_limits<vertex_t>::max())
              throw parse_error(lineno, "bad vertex count in header");
            declared_n = static_cast<vertex_t>(*v);
          } else if (field.starts_with("chain=")) {
            provenance.chain = std::string(field.substr(6));
          }
        }
        if (!declared_n) throw parse_error(lineno, "edge-list header lacks n=");
      }
      continue;
    }
    if (detail::is_blank(line)) continue;
    seen_data = true;
    const auto tok = detail::split_ws(line);
    if (tok.size() != 2 && tok.size() != 3)
      throw parse_error(lineno, "expected 2 or 3 fields, got " + std::to_string(tok.size()));
    const vertex_t u = resolve(tok[0]);
    const vertex_t v = resolve(tok[1]);
    double w = 1.0;
    if (tok.size() == 3) {
      const auto parsed = detail::parse_number<double>(tok[2]);
      if (!parsed) throw parse_error(lineno, "non-numeric weight '" + std::string(tok[2]) + "'");
      w = *parsed;
      if (!weighted) {
        weights.assign(src.size(), 1.0);
        weighted = true;
      }
    }
    src.push_back(u);
    dst.push_back(v);
    if (weighted) weights.push_back(w);
  }

  const vertex_t n = declared_n ? *declared_n : labels.size();
  if (declared_n) {
    labels = LabelMap::numeric(n, 0);
  } else {
    provenance.append("edgelist");
  }
  return {CooGraph(n, std::move(src), std::move(dst), std::move(weights)), std::move(labels),
          std::move(provenance)};
}

/// Writes numeric IDs, one edge per line, behind a header recording n and the
/// provenance chain. The graph with no vertices produces an empty file.
inline void write_edge_list(const CooGraph& g, const std::string& path,
                            const Provenance& provenance = {}) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw error("cannot open " + path + " for writing");
  std::vector<char> buffer(1 << 20);
  std::setvbuf(f, buffer.data(), _IOFBF, buffer.size());
  bool ok = true;
  if (g.n() > 0) {
    std::string header(detail::kEdgeListMagic);
    header += " n=" + std::to_string(g.n()) + " m=" + std::to_string(g.m());
    if (!provenance.chain.empty()) header += " chain=" + provenance.chain;
    header += '\n';
    ok = std::fputs(header.c_str(), f) >= 0;
  }
  char line[96];
  for (edge_t i = 0; ok && i < g.m(); ++i) {
    int len;
    if (g.has_weights())
      len = std::snprintf(line, sizeof line, "%u %u %.17g\n", g.src()[i], g.dst()[i],
                          g.weights()[i]);
    else
      len = std::snprintf(line, sizeof line, "%u %u\n", g.src()[i], g.dst()[i]);
    ok = std::fwrite(line, 1, static_cast<std::size_t>(len), f) == static_cast<std::size_t>(len);
  }
  if (std::fclose(f) != 0 || !ok) throw error("write failed: " + path);
}

// Dispatches on extension: ".mtx" is Matrix Market, anything else an edge list.
inline IngestedGraph read_graph(const std::string& path) {
  if (path.size() >= 4 && detail::lower(path.substr(path.size() - 4)) == ".mtx")
    return read_matrix_market(path);
  return read_edge_list(path);
}

struct RandomizedGraph {
  CooGraph graph;
  Permutation applied;
};

// Relabels g through a seeded uniformly random permutation.
inline RandomizedGraph randomize_labels(const CooGraph& g, std::uint64_t seed,
                                        unsigned threads = 1) {
  Permutation q = random_order(g.n(), seed);
  CooGraph out = apply_permutation(g, q, threads);
  return {std::move(out), std::move(q)};
}

// One old ID per line, line k holding the vertex placed at position k.
inline void write_permutation(const Permutation& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw error("cannot open " + path + " for writing");
  out << "# boba-permutation n=" << p.n() << '\n';
  for (const vertex_t v : p.order()) out << v << '\n';
  if (!out) throw error("write failed: " + path);
}

inline Permutation read_permutation(const std::string& path) {
  auto in = detail::open_input(path);
  std::string line;
  std::size_t lineno = 0;
  std::vector<vertex_t> order;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || detail::is_blank(line)) continue;
    const auto tok = detail::split_ws(line);
    const auto v = tok.size() == 1 ? detail::parse_number<vertex_t>(tok[0]) : std::nullopt;
    if (!v) throw parse_error(lineno, "expected one vertex id");
    order.push_back(*v);
  }
  return Permutation::from_order(std::move(order));
}

}  // namespace boba
