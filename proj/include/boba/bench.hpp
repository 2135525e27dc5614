#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boba/graph.hpp"
#include "boba/ingest.hpp"
#include "boba/kernels.hpp"
#include "boba/metrics.hpp"
#include "boba/reorder.hpp"

namespace boba {

enum class Ordering { random, boba, boba_relaxed, degree, hub, rcm, identity };
enum class Kernel { spmv, pr, tc, sssp };

inline std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::random: return "random";
    case Ordering::boba: return "boba";
    case Ordering::boba_relaxed: return "boba-relaxed";
    case Ordering::degree: return "degree";
    case Ordering::hub: return "hub";
    case Ordering::rcm: return "rcm";
    case Ordering::identity: return "identity";
  }
  return "?";
}

inline std::string_view to_string(Kernel k) {
  switch (k) {
    case Kernel::spmv: return "spmv";
    case Kernel::pr: return "pr";
    case Kernel::tc: return "tc";
    case Kernel::sssp: return "sssp";
  }
  return "?";
}

inline std::optional<Ordering> parse_ordering(std::string_view s) {
  for (const auto o : {Ordering::random, Ordering::boba, Ordering::boba_relaxed, Ordering::degree,
                       Ordering::hub, Ordering::rcm, Ordering::identity})
    if (to_string(o) == s) return o;
  return std::nullopt;
}

inline std::optional<Kernel> parse_kernel(std::string_view s) {
  for (const auto k : {Kernel::spmv, Kernel::pr, Kernel::tc, Kernel::sssp})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

/// Computes the permutation for `ordering`. `mode` only affects Ordering::boba
/// (Ordering::boba_relaxed always runs relaxed).
inline Permutation make_ordering(const CooGraph& g, Ordering ordering, std::uint64_t seed,
                                 BobaMode mode, unsigned threads) {
  switch (ordering) {
    case Ordering::random: return random_order(g.n(), seed);
    case Ordering::boba: return boba_parallel(g, mode, threads);
    case Ordering::boba_relaxed: return boba_parallel(g, BobaMode::relaxed, threads);
    case Ordering::degree: return degree_order(g);
    case Ordering::hub: return hub_order(g);
    case Ordering::rcm: return rcm_order(g);
    case Ordering::identity: return Permutation::identity(g.n());
  }
  throw argument_error("unknown ordering");
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    const auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

template <class F>
double time_ms(F&& f) {
  Stopwatch sw;
  f();
  return sw.elapsed_ms();
}

/// One end-to-end run: reorder, optional sort (TC only), convert, kernel.
struct BenchRecord {
  std::string dataset;
  std::string ordering;
  std::string kernel;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string mode = "deterministic";
  // Repeat index, or "median" for the summary row.
  std::string repeat;
  double reorder_ms = 0.0;
  std::optional<double> sort_ms;
  double convert_ms = 0.0;
  double kernel_ms = 0.0;
  std::uint32_t iterations = 0;
  std::string checksum;
  bool deterministic = true;
  vertex_t n = 0;
  edge_t m = 0;
  std::optional<LocalityReport> locality;
  std::optional<double> hub_threshold;
  PageRankParams pr;

  double end_to_end_ms() const { return reorder_ms + sort_ms.value_or(0.0) + convert_ms + kernel_ms; }
};

struct BenchConfig {
  std::string dataset = "input";
  Ordering ordering = Ordering::boba;
  Kernel kernel = Kernel::spmv;
  BobaMode mode = BobaMode::deterministic;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  unsigned repeats = 1;
  std::uint32_t window = 1;
  std::uint32_t line_size = 32;
  bool locality = true;
  PageRankParams pr;
};

namespace detail {

inline std::string format_double(double v, const char* fmt = "%.17g") {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

inline std::string sanitize_field(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

inline double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

// Kernel input vector in original labels, moved to the new labels.
inline std::vector<double> spmv_input(const Permutation& p) {
  std::vector<double> x(p.n());
  for (vertex_t v = 0; v < p.n(); ++v) x[p.label(v)] = static_cast<double>(v % 7 + 1);
  return x;
}

struct KernelRun {
  double sort_ms = -1.0;
  double convert_ms = 0.0;
  double kernel_ms = 0.0;
  std::uint32_t iterations = 1;
  std::string checksum;
};

// Sorts, converts and runs the kernel on an already relabeled graph. The
// checksum is computed in original labels so it must match across orderings.
inline KernelRun run_kernel(const CooGraph& relabeled, const Permutation& p,
                            const BenchConfig& cfg) {
  KernelRun run;
  switch (cfg.kernel) {
    case Kernel::spmv: {
      const auto x = spmv_input(p);
      // y = A x for the matrix whose rows are the I column, i.e. the CSR the
      // edge list converts to directly; each row gathers over its columns.
      CsrGraph rows;
      run.convert_ms = time_ms([&] { rows = coo_to_csr(relabeled); });
      std::vector<double> y;
      run.kernel_ms = time_ms([&] { y = spmv_pull(rows, x, cfg.threads); });
      double sum = 0.0;
      for (vertex_t v = 0; v < p.n(); ++v) sum += y[p.label(v)];
      run.checksum = format_double(sum);
      break;
    }
    case Kernel::pr: {
      CsrGraph rows;
      run.convert_ms = time_ms([&] { rows = coo_to_csr(relabeled); });
      PageRankResult pr;
      run.kernel_ms = time_ms([&] { pr = pagerank(rows, cfg.pr); });
      run.iterations = pr.iterations;
      double sum = 0.0;
      for (vertex_t v = 0; v < p.n(); ++v) sum += pr.rank[p.label(v)] * (v % 13 + 1);
      run.checksum = format_double(sum, "%.6e");
      break;
    }
    case Kernel::tc: {
      CooGraph sorted;
      run.sort_ms = time_ms([&] { sorted = symmetrize(relabeled, /*drop_self_loops=*/true); });
      CsrGraph rows;
      run.convert_ms = time_ms([&] { rows = coo_to_csr(sorted); });
      std::uint64_t triangles = 0;
      run.kernel_ms = time_ms([&] { triangles = triangle_count(rows); });
      run.checksum = std::to_string(triangles);
      break;
    }
    case Kernel::sssp: {
      CsrGraph rows;
      run.convert_ms = time_ms([&] { rows = coo_to_csr(relabeled); });
      SsspResult res;
      const vertex_t source = p.n() > 0 ? p.label(0) : 0;
      run.kernel_ms = time_ms([&] { res = sssp(rows, source); });
      run.iterations = res.rounds;
      double sum = 0.0;
      std::uint64_t reached = 0;
      for (vertex_t v = 0; v < p.n(); ++v)
        if (const double d = res.distance[p.label(v)]; d != kUnreachable) {
          sum += d;
          ++reached;
        }
      run.checksum = std::to_string(reached) + ":" + format_double(sum);
      break;
    }
  }
  return run;
}

}  // namespace detail

/// Runs the timed pipeline `repeats` times and appends a median row. The input
/// is expected to carry random labels; that is checked by the caller.
inline std::vector<BenchRecord> run_bench(const CooGraph& input, const BenchConfig& cfg) {
  if (cfg.repeats < 1) throw argument_error("repeats must be >= 1");
  if (cfg.kernel == Kernel::tc && !is_symmetric(input))
    throw argument_error("tc requires an undirected (symmetric) input; ingest with --symmetrize");
  if (cfg.kernel == Kernel::sssp && input.n() == 0)
    throw argument_error("sssp needs at least one vertex");

  BenchRecord proto;
  proto.dataset = detail::sanitize_field(cfg.dataset);
  proto.ordering = std::string(to_string(cfg.ordering));
  proto.kernel = std::string(to_string(cfg.kernel));
  proto.seed = cfg.seed;
  proto.threads = resolve_threads(cfg.threads);
  proto.mode = std::string(to_string(cfg.ordering == Ordering::boba_relaxed ? BobaMode::relaxed
                                                                            : cfg.mode));
  proto.deterministic = !(cfg.ordering == Ordering::boba_relaxed ||
                          (cfg.ordering == Ordering::boba && cfg.mode == BobaMode::relaxed));
  proto.n = input.n();
  proto.m = input.m();
  proto.pr = cfg.pr;
  if (cfg.ordering == Ordering::hub && input.n() > 0)
    proto.hub_threshold = 2.0 * static_cast<double>(input.m()) / input.n();

  std::vector<BenchRecord> rows;
  for (unsigned rep = 0; rep < cfg.repeats; ++rep) {
    BenchRecord rec = proto;
    rec.repeat = std::to_string(rep);
    Permutation p;
    CooGraph relabeled;
    {
      Stopwatch sw;
      p = make_ordering(input, cfg.ordering, cfg.seed, cfg.mode, proto.threads);
      if (cfg.ordering != Ordering::identity) relabeled = apply_permutation(input, p, proto.threads);
      rec.reorder_ms = sw.elapsed_ms();
    }
    const CooGraph& graph = cfg.ordering == Ordering::identity ? input : relabeled;
    const auto run = detail::run_kernel(graph, p, cfg);
    if (run.sort_ms >= 0) rec.sort_ms = run.sort_ms;
    rec.convert_ms = run.convert_ms;
    rec.kernel_ms = run.kernel_ms;
    rec.iterations = run.iterations;
    rec.checksum = run.checksum;
    if (cfg.locality && rep == 0 && input.m() > 0)
      rec.locality = locality_report(input, p, cfg.window, cfg.line_size);
    else if (cfg.locality && !rows.empty())
      rec.locality = rows.front().locality;
    rows.push_back(std::move(rec));
  }

  BenchRecord med = rows.front();
  med.repeat = "median";
  auto collect = [&](auto field) {
    std::vector<double> xs;
    for (const auto& r : rows) xs.push_back(field(r));
    return detail::median(std::move(xs));
  };
  med.reorder_ms = collect([](const BenchRecord& r) { return r.reorder_ms; });
  if (med.sort_ms) med.sort_ms = collect([](const BenchRecord& r) { return *r.sort_ms; });
  med.convert_ms = collect([](const BenchRecord& r) { return r.convert_ms; });
  med.kernel_ms = collect([](const BenchRecord& r) { return r.kernel_ms; });
  rows.push_back(std::move(med));
  return rows;
}

// ---------------------------------------------------------------------------
// CSV

inline const std::vector<std::string>& bench_csv_columns() {
  static const std::vector<std::string> cols = {
      "dataset",   "ordering",   "kernel",      "seed",        "threads",      "mode",
      "repeat",    "reorder_ms", "sort_ms",     "convert_ms",  "kernel_ms",    "end_to_end_ms",
      "iterations", "checksum",  "deterministic", "n",         "m",            "nscore",
      "gscore",    "gscore_w",   "nbr",         "bandwidth",   "line_size",    "hub_threshold",
      "pr_damping", "pr_tol",    "pr_max_iters"};
  return cols;
}

inline std::string join_csv(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out;
}

inline std::string bench_csv_header() { return join_csv(bench_csv_columns()); }

inline std::string to_csv_row(const BenchRecord& r) {
  auto ms = [](double v) { return detail::format_double(v, "%.3f"); };
  const auto& loc = r.locality;
  return join_csv({
      r.dataset,
      r.ordering,
      r.kernel,
      std::to_string(r.seed),
      std::to_string(r.threads),
      r.mode,
      r.repeat,
      ms(r.reorder_ms),
      r.sort_ms ? ms(*r.sort_ms) : "",
      ms(r.convert_ms),
      ms(r.kernel_ms),
      ms(r.end_to_end_ms()),
      std::to_string(r.iterations),
      r.checksum,
      r.deterministic ? "1" : "0",
      std::to_string(r.n),
      std::to_string(r.m),
      loc ? std::to_string(loc->nscore) : "",
      loc ? std::to_string(loc->gscore) : "",
      loc ? std::to_string(loc->gscore_window) : "",
      loc ? detail::format_double(loc->nbr, "%.6f") : "",
      loc ? std::to_string(loc->bandwidth) : "",
      loc ? std::to_string(loc->line_size) : "",
      r.hub_threshold ? detail::format_double(*r.hub_threshold, "%.6f") : "",
      detail::format_double(r.pr.damping, "%g"),
      detail::format_double(r.pr.tol, "%g"),
      std::to_string(r.pr.max_iters),
  });
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().pop_back();
  return out;
}

/// Parses a bench CSV back into records. Only the columns needed for
/// comparison are required; locality columns are read when present.
inline std::vector<BenchRecord> parse_bench_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  std::vector<BenchRecord> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (header.empty()) {
      header = std::move(fields);
      for (const char* required : {"dataset", "ordering", "kernel", "reorder_ms", "convert_ms",
                                   "kernel_ms"})
        if (std::find(header.begin(), header.end(), required) == header.end())
          throw parse_error(lineno, std::string("missing column '") + required + "'");
      continue;
    }
    if (fields == header) continue;  // header repeated by concatenated files
    if (fields.size() != header.size())
      throw parse_error(lineno, "expected " + std::to_string(header.size()) + " fields");
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = fields[i];
    auto num = [&](const std::string& key) -> std::optional<double> {
      const auto it = row.find(key);
      if (it == row.end() || it->second.empty()) return std::nullopt;
      try {
        return std::stod(it->second);
      } catch (...) {
        throw parse_error(lineno, "non-numeric " + key + " '" + it->second + "'");
      }
    };
    BenchRecord r;
    r.dataset = row["dataset"];
    r.ordering = row["ordering"];
    r.kernel = row["kernel"];
    r.repeat = row["repeat"];
    r.checksum = row["checksum"];
    r.mode = row.count("mode") ? row["mode"] : "";
    r.reorder_ms = num("reorder_ms").value_or(0.0);
    r.sort_ms = num("sort_ms");
    r.convert_ms = num("convert_ms").value_or(0.0);
    r.kernel_ms = num("kernel_ms").value_or(0.0);
    r.seed = static_cast<std::uint64_t>(num("seed").value_or(0));
    r.threads = static_cast<unsigned>(num("threads").value_or(1));
    r.iterations = static_cast<std::uint32_t>(num("iterations").value_or(0));
    r.n = static_cast<vertex_t>(num("n").value_or(0));
    r.m = static_cast<edge_t>(num("m").value_or(0));
    if (num("nscore")) {
      LocalityReport loc;
      loc.nscore = static_cast<std::uint64_t>(*num("nscore"));
      loc.gscore = static_cast<std::uint64_t>(num("gscore").value_or(0));
      loc.gscore_window = static_cast<std::uint32_t>(num("gscore_w").value_or(1));
      loc.nbr = num("nbr").value_or(0);
      loc.bandwidth = static_cast<std::uint64_t>(num("bandwidth").value_or(0));
      loc.line_size = static_cast<std::uint32_t>(num("line_size").value_or(32));
      loc.m = r.m;
      r.locality = loc;
    }
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comparison against the random baseline

struct SpeedupRow {
  std::string dataset;
  std::string kernel;
  std::string ordering;
  double reorder_ms = 0.0;
  double convert_ms = 0.0;
  double kernel_ms = 0.0;
  double end_to_end_ms = 0.0;
  // Baseline time divided by this ordering's time; > 1 is faster than random.
  double convert_speedup = 1.0;
  double kernel_speedup = 1.0;
  double end_to_end_speedup = 1.0;
  bool checksum_match = true;
};

namespace detail {

inline double ratio(double baseline, double value) {
  if (value == 0.0) return baseline == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return baseline / value;
}

struct Summary {
  double reorder = 0, convert = 0, kernel = 0, e2e = 0;
  std::string checksum;
};

// Median rows win; otherwise the mean of all rows for the ordering.
inline Summary summarize(const std::vector<const BenchRecord*>& recs) {
  std::vector<const BenchRecord*> use;
  for (const auto* r : recs)
    if (r->repeat == "median") use.push_back(r);
  if (use.empty()) use = recs;
  Summary s;
  for (const auto* r : use) {
    s.reorder += r->reorder_ms;
    s.convert += r->convert_ms;
    s.kernel += r->kernel_ms;
    s.e2e += r->end_to_end_ms();
  }
  const double k = static_cast<double>(use.size());
  s.reorder /= k;
  s.convert /= k;
  s.kernel /= k;
  s.e2e /= k;
  s.checksum = use.front()->checksum;
  return s;
}

}  // namespace detail

/// Joins records on (dataset, kernel) and reports each ordering relative to
/// the "random" ordering of the same group. A group without a random row is
/// an error.
inline std::vector<SpeedupRow> compare_records(const std::vector<BenchRecord>& records) {
  using Key = std::pair<std::string, std::string>;
  std::map<Key, std::map<std::string, std::vector<const BenchRecord*>>> groups;
  std::vector<Key> key_order;
  for (const auto& r : records) {
    const Key key{r.dataset, r.kernel};
    if (!groups.count(key)) key_order.push_back(key);
    groups[key][r.ordering].push_back(&r);
  }
  std::vector<SpeedupRow> out;
  for (const auto& key : key_order) {
    auto& by_ordering = groups[key];
    const auto base_it = by_ordering.find(std::string(to_string(Ordering::random)));
    if (base_it == by_ordering.end())
      throw argument_error("no random baseline for dataset '" + key.first + "', kernel '" +
                           key.second + "'");
    const auto base = detail::summarize(base_it->second);
    std::vector<std::string> names;
    for (const auto& r : records)
      if (r.dataset == key.first && r.kernel == key.second &&
          std::find(names.begin(), names.end(), r.ordering) == names.end())
        names.push_back(r.ordering);
    for (const auto& name : names) {
      const auto s = detail::summarize(by_ordering[name]);
      SpeedupRow row;
      row.dataset = key.first;
      row.kernel = key.second;
      row.ordering = name;
      row.reorder_ms = s.reorder;
      row.convert_ms = s.convert;
      row.kernel_ms = s.kernel;
      row.end_to_end_ms = s.e2e;
      row.convert_speedup = detail::ratio(base.convert, s.convert);
      row.kernel_speedup = detail::ratio(base.kernel, s.kernel);
      row.end_to_end_speedup = detail::ratio(base.e2e, s.e2e);
      row.checksum_match = s.checksum == base.checksum;
      out.push_back(std::move(row));
    }
  }
  return out;
}

inline std::string speedup_csv_header() {
  return "dataset,kernel,ordering,reorder_ms,convert_ms,kernel_ms,end_to_end_ms,"
         "convert_speedup,kernel_speedup,end_to_end_speedup,checksum_match";
}

inline std::string to_csv_row(const SpeedupRow& r) {
  auto ms = [](double v) { return detail::format_double(v, "%.3f"); };
  auto x = [](double v) { return detail::format_double(v, "%.4f"); };
  return join_csv({r.dataset, r.kernel, r.ordering, ms(r.reorder_ms), ms(r.convert_ms),
                   ms(r.kernel_ms), ms(r.end_to_end_ms), x(r.convert_speedup),
                   x(r.kernel_speedup), x(r.end_to_end_speedup), r.checksum_match ? "1" : "0"});
}

// Right-aligned text table of the same rows.
inline void print_speedup_table(std::ostream& os, const std::vector<SpeedupRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back(split_csv_line(speedup_csv_header()));
  for (const auto& r : rows) cells.push_back(split_csv_line(to_csv_row(r)));
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << "  ";
      os << std::string(width[i] - row[i].size(), ' ') << row[i];
    }
    os << '\n';
  }
}

}  // namespace boba
